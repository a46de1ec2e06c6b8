#include "ssgh/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "parallel.hpp"
#include "ssgh/surgery.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

// Inserts half-edge `a` right after `x` in the rotation.
void insert_after(std::vector<int>& s0, int x, int a) {
  s0[idx(a)] = s0[idx(x)];
  s0[idx(x)] = a;
}

}  // namespace

std::vector<std::vector<RibbonGraph>> connected_maps(int max_edges, int max_genus) {
  std::vector<std::vector<RibbonGraph>> out(idx(std::max(max_edges, 0) + 1));
  if (max_edges < 1) return out;
  std::map<std::string, RibbonGraph> level;
  auto keep = [&](RibbonGraph g) {
    if (component_genus(g, 0) > max_genus) return;
    CanonicalForm c = canonicalize(g);
    level.emplace(std::move(c.bytes), std::move(c.graph));
  };
  keep(RibbonGraph::from_permutations({1, 0}, {0, 1}));
  keep(RibbonGraph::from_permutations({1, 0}, {1, 0}));
  for (int e = 1;; ++e) {
    for (auto& [key, g] : level) out[idx(e)].push_back(g);
    if (e == max_edges) break;
    std::map<std::string, RibbonGraph> next;
    level.swap(next);
    for (const auto& [key, g] : next) {
      const int n = g.half_edge_count();
      const int a = n, b = n + 1;
      std::vector<int> s1 = g.sigma1_perm();
      s1.push_back(b);
      s1.push_back(a);
      for (int x = 0; x < n; ++x) {
        std::vector<int> s0 = g.sigma0_perm();
        s0.push_back(a);
        s0.push_back(b);
        insert_after(s0, x, a);
        keep(RibbonGraph::from_permutations(s1, s0));  // pendant edge
        for (int y = 0; y <= n; ++y) {
          std::vector<int> c0 = s0;
          insert_after(c0, y, b);
          keep(RibbonGraph::from_permutations(s1, c0));
        }
      }
    }
  }
  return out;
}

int max_edge_count(int genus, int labels) { return 6 * genus - 6 + 3 * labels; }

std::vector<RibbonGraph> labeled_graphs(int genus, int labels, int threads) {
  if (labels < 1 || 2 * genus - 2 + labels <= 0) {
    throw GraphError("no graphs of type (" + std::to_string(genus) + "," + std::to_string(labels) + ")");
  }
  auto maps = connected_maps(max_edge_count(genus, labels), genus);
  std::vector<RibbonGraph> shapes;
  for (const auto& level : maps) {
    for (const auto& g : level) {
      if (component_genus(g, 0) == genus) shapes.push_back(g);
    }
  }
  std::vector<std::map<std::string, RibbonGraph>> found(shapes.size());
  detail::parallel_for(shapes.size(), threads, [&](std::size_t s) {
    const RibbonGraph& g = shapes[s];
    DerivedStructure d = derive(g);
    const int faces = d.cusp_count();
    const int marked = labels - faces;
    if (marked < 0) return;
    std::vector<Point> forced, optional_vertices;
    for (const auto& c : d.boundary_cycles) forced.push_back({PointKind::kCusp, c.front()});
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
      Point p{PointKind::kVertex, d.vertices[v].front()};
      if (d.vertices[v].size() <= 2) forced.push_back(p);
      else optional_vertices.push_back(p);
    }
    const int extra = labels - static_cast<int>(forced.size());
    if (extra < 0 || extra > static_cast<int>(optional_vertices.size())) return;
    std::vector<char> choose(optional_vertices.size(), 0);
    std::fill(choose.end() - extra, choose.end(), 1);
    do {
      std::vector<Point> points = forced;
      for (std::size_t i = 0; i < choose.size(); ++i) {
        if (choose[i]) points.push_back(optional_vertices[i]);
      }
      std::vector<int> perm(points.size());
      std::iota(perm.begin(), perm.end(), 1);
      do {
        LabelMap lm;
        for (std::size_t i = 0; i < points.size(); ++i) lm[perm[i]] = points[i];
        RibbonGraph lg = g;
        lg.set_labels(std::move(lm));
        CanonicalForm c = canonicalize(lg);
        found[s].emplace(std::move(c.bytes), std::move(c.graph));
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::next_permutation(choose.begin(), choose.end()));
  });
  std::map<std::string, RibbonGraph> all;
  for (auto& m : found) all.merge(m);
  std::vector<RibbonGraph> out;
  for (auto& [key, g] : all) out.push_back(std::move(g));
  return out;
}

std::vector<EdgeSet> semistable_subsets(const RibbonGraph& g) {
  std::vector<int> edges = g.edges();
  const int e = static_cast<int>(edges.size());
  if (e > 24) throw GraphError("semistable_subsets: too many edges");
  std::vector<EdgeSet> out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << e); ++mask) {
    std::vector<int> ids;
    for (int i = 0; i < e; ++i) {
      if (mask & (1u << i)) ids.push_back(edges[idx(i)]);
    }
    EdgeSet z(std::move(ids));
    if (classify_subset(g, z).semistable()) out.push_back(std::move(z));
  }
  return out;
}

std::vector<Chain> semistable_chains(const RibbonGraph& g) {
  std::vector<EdgeSet> subsets = semistable_subsets(g);
  std::vector<Chain> out;
  Chain current;
  std::function<void(const EdgeSet&)> extend = [&](const EdgeSet& top) {
    out.push_back(current);
    for (const auto& z : subsets) {
      if (z.size() < top.size() && z.subset_of(top)) {
        current.push_back(z);
        extend(z);
        current.pop_back();
      }
    }
  };
  extend(EdgeSet::all(g));
  return out;
}

}  // namespace ssgh
