#include "ssgh/ribbon_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ssgh/permutation.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(idx(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[idx(x)] != x) {
      parent[idx(x)] = parent[idx(parent[idx(x)])];
      x = parent[idx(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[idx(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

RibbonGraph::RibbonGraph(int half_edge_count, std::vector<int> sigma1,
                         std::vector<std::vector<int>> sigma0_cycles,
                         std::vector<int> circle_half_edges, LabelMap labels)
    : n_(half_edge_count),
      sigma1_(std::move(sigma1)),
      sigma0_(idx(std::max(half_edge_count, 0)), -1),
      cycles_(std::move(sigma0_cycles)),
      circle_(std::move(circle_half_edges)),
      labels_(std::move(labels)) {
  for (const auto& cycle : cycles_) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int h = cycle[i];
      if (h < 0 || h >= n_) continue;
      int next = cycle[(i + 1) % cycle.size()];
      sigma0_[idx(h)] = (next >= 0 && next < n_) ? next : -1;
    }
  }
}

RibbonGraph RibbonGraph::from_permutations(std::vector<int> sigma1, std::vector<int> sigma0,
                                           LabelMap labels) {
  const int n = static_cast<int>(sigma1.size());
  if (sigma0.size() != sigma1.size()) throw GraphError("from_permutations: size mismatch");
  std::vector<int> circle;
  for (int h = 0; h < n; ++h) {
    if (sigma0[idx(h)] < 0) circle.push_back(h);
  }
  auto cycles = cycles_of(sigma0);
  return RibbonGraph(n, std::move(sigma1), std::move(cycles), std::move(circle), std::move(labels));
}

std::vector<int> RibbonGraph::edges() const {
  std::vector<int> out;
  out.reserve(idx(n_ / 2));
  for (int h = 0; h < n_; ++h) {
    if (h < sigma1(h)) out.push_back(h);
  }
  return out;
}

std::vector<int> RibbonGraph::sigma_inf() const {
  std::vector<int> inv0 = inverse_permutation(sigma0_);
  std::vector<int> out(idx(n_));
  for (int h = 0; h < n_; ++h) {
    out[idx(h)] = on_circle(h) ? h : inv0[idx(sigma1(h))];
  }
  return out;
}

bool RibbonGraph::operator==(const RibbonGraph& other) const {
  return n_ == other.n_ && sigma1_ == other.sigma1_ && sigma0_ == other.sigma0_ &&
         labels_ == other.labels_;
}

bool DerivedStructure::component_is_circle(const RibbonGraph& g, int component) const {
  const auto& hs = components[idx(component)];
  return !hs.empty() && g.on_circle(hs.front());
}

ValidityReport validate(const RibbonGraph& g, bool standalone) {
  ValidityReport report;
  auto add = [&](std::string name, std::string detail) {
    report.push_back({std::move(name), std::move(detail)});
  };
  const int n = g.half_edge_count();
  if (n < 0 || static_cast<int>(g.sigma1_perm().size()) != n) {
    add("half-edge-count", "sigma1 has " + std::to_string(g.sigma1_perm().size()) +
                               " entries for " + std::to_string(n) + " half-edges");
    return report;
  }
  bool structural = true;
  for (int h = 0; h < n; ++h) {
    int t = g.sigma1_perm()[idx(h)];
    if (t < 0 || t >= n) {
      add("sigma1-out-of-range", "sigma1(" + std::to_string(h) + ") = " + std::to_string(t));
      structural = false;
    } else if (t == h) {
      add("sigma1-fixed-point", "sigma1 fixes " + std::to_string(h));
      structural = false;
    } else if (g.sigma1_perm()[idx(t)] != h) {
      add("sigma1-not-involution", "sigma1(sigma1(" + std::to_string(h) + ")) != " + std::to_string(h));
      structural = false;
    }
  }
  std::vector<char> is_circle(idx(n), 0);
  for (int h : g.circle_half_edges()) {
    if (h < 0 || h >= n) {
      add("circle-out-of-range", std::to_string(h));
      structural = false;
      continue;
    }
    if (is_circle[idx(h)]) add("circle-duplicate", std::to_string(h));
    is_circle[idx(h)] = 1;
  }
  if (structural) {
    for (int h = 0; h < n; ++h) {
      if (is_circle[idx(h)] && !is_circle[idx(g.sigma1(h))]) {
        add("circle-not-sigma1-invariant", "half-edge " + std::to_string(h));
        structural = false;
      }
    }
  }
  std::vector<int> hits(idx(n), 0);
  for (const auto& cycle : g.sigma0_cycles()) {
    if (cycle.empty()) {
      add("sigma0-empty-cycle", "");
      structural = false;
    }
    for (int h : cycle) {
      if (h < 0 || h >= n) {
        add("sigma0-out-of-range", std::to_string(h));
        structural = false;
        continue;
      }
      if (is_circle[idx(h)]) {
        add("sigma0-on-circle", "half-edge " + std::to_string(h));
        structural = false;
      }
      if (++hits[idx(h)] == 2) {
        add("sigma0-repeated-half-edge", "half-edge " + std::to_string(h));
        structural = false;
      }
    }
  }
  for (int h = 0; h < n; ++h) {
    if (!is_circle[idx(h)] && hits[idx(h)] == 0) {
      add("sigma0-uncovered-half-edge", "half-edge " + std::to_string(h));
      structural = false;
    }
  }
  if (!structural) return report;

  DerivedStructure d = derive(g);
  std::map<std::pair<int, int>, int> used;  // (kind class, index) -> label
  for (const auto& [name, point] : g.labels()) {
    if (standalone && name < 1) add("label-name-invalid", std::to_string(name));
    auto where = locate(g, d, point);
    if (!where) {
      add("label-point-invalid", "label " + std::to_string(name));
      continue;
    }
    int cls = point.kind == PointKind::kVertex ? 0 : 1;
    auto [it, fresh] = used.emplace(std::make_pair(cls, *where), name);
    if (!fresh) {
      add("label-not-injective",
          "labels " + std::to_string(it->second) + " and " + std::to_string(name));
    }
  }
  if (standalone) {
    for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
      if (!used.count({1, static_cast<int>(c)})) {
        add("uncovered-distinguished-point",
            "cusp through half-edge " + std::to_string(d.boundary_cycles[c].front()));
      }
    }
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
      if (d.vertices[v].size() <= 2 && !used.count({0, static_cast<int>(v)})) {
        add("uncovered-distinguished-point",
            "vertex of valence " + std::to_string(d.vertices[v].size()) + " at half-edge " +
                std::to_string(d.vertices[v].front()));
      }
    }
  }
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (labeled_euler_characteristic(g, d, static_cast<int>(c)) > 0) {
      add("positive-euler-characteristic", "component " + std::to_string(c));
    }
  }
  return report;
}

bool is_valid(const RibbonGraph& g, bool standalone) { return validate(g, standalone).empty(); }

DerivedStructure derive(const RibbonGraph& g) {
  const int n = g.half_edge_count();
  if (static_cast<int>(g.sigma1_perm().size()) != n) throw GraphError("derive: malformed graph");
  DerivedStructure d;
  d.vertices = cycles_of(g.sigma0_perm());
  d.vertex_of.assign(idx(n), -1);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    for (int h : d.vertices[v]) d.vertex_of[idx(h)] = static_cast<int>(v);
  }
  d.edges = g.edges();
  d.sigma_inf = g.sigma_inf();
  d.boundary_cycles = cycles_of(d.sigma_inf);  // circle half-edges are fixed points
  d.cycle_of.assign(idx(n), -1);
  for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
    for (int h : d.boundary_cycles[c]) d.cycle_of[idx(h)] = static_cast<int>(c);
  }
  UnionFind uf(n);
  for (int h = 0; h < n; ++h) {
    uf.unite(h, g.sigma1(h));
    if (!g.on_circle(h)) uf.unite(h, g.sigma0(h));
  }
  std::map<int, int> root_to_component;
  d.component_of.assign(idx(n), -1);
  for (int h = 0; h < n; ++h) {
    int r = uf.find(h);
    auto [it, fresh] = root_to_component.emplace(r, static_cast<int>(d.components.size()));
    if (fresh) d.components.emplace_back();
    d.component_of[idx(h)] = it->second;
    d.components[idx(it->second)].push_back(h);
  }
  return d;
}

int component_genus(const RibbonGraph& g, const DerivedStructure& d, int component) {
  if (d.component_is_circle(g, component)) return 0;
  const auto& hs = d.components[idx(component)];
  std::set<int> vs, cs;
  for (int h : hs) {
    vs.insert(d.vertex_of[idx(h)]);
    cs.insert(d.cycle_of[idx(h)]);
  }
  int v = static_cast<int>(vs.size());
  int e = static_cast<int>(hs.size()) / 2;
  int c = static_cast<int>(cs.size());
  int twice = 2 - v + e - c;
  if (twice < 0 || twice % 2 != 0) throw GraphError("component_genus: inconsistent counts");
  return twice / 2;
}

int component_genus(const RibbonGraph& g, int component) {
  return component_genus(g, derive(g), component);
}

int labeled_euler_characteristic(const RibbonGraph& g, const DerivedStructure& d, int component) {
  if (d.component_is_circle(g, component)) return 0;
  const auto& hs = d.components[idx(component)];
  std::set<int> vs;
  for (int h : hs) vs.insert(d.vertex_of[idx(h)]);
  int low = 0;
  for (int v : vs) {
    if (d.valence(v) <= 2) ++low;
  }
  return static_cast<int>(vs.size()) - static_cast<int>(hs.size()) / 2 - low;
}

int labeled_euler_characteristic(const RibbonGraph& g, int component) {
  return labeled_euler_characteristic(g, derive(g), component);
}

TopologicalType topological_type(const RibbonGraph& g) {
  DerivedStructure d = derive(g);
  if (d.components.size() != 1) throw GraphError("topological_type: graph is not connected");
  return {component_genus(g, d, 0), static_cast<int>(g.labels().size())};
}

std::optional<int> locate(const RibbonGraph& g, const DerivedStructure& d, const Point& p) {
  if (p.rep < 0 || p.rep >= g.half_edge_count()) return std::nullopt;
  switch (p.kind) {
    case PointKind::kVertex:
      if (g.on_circle(p.rep)) return std::nullopt;
      return d.vertex_of[idx(p.rep)];
    case PointKind::kCusp:
      if (g.on_circle(p.rep)) return std::nullopt;
      return d.cycle_of[idx(p.rep)];
    case PointKind::kCircleCusp:
      if (!g.on_circle(p.rep)) return std::nullopt;
      return d.cycle_of[idx(p.rep)];
  }
  return std::nullopt;
}

Point normalize_point(const RibbonGraph& g, const DerivedStructure& d, const Point& p) {
  auto where = locate(g, d, p);
  if (!where) throw GraphError("normalize_point: point does not exist");
  if (p.kind == PointKind::kVertex) return {p.kind, d.vertices[idx(*where)].front()};
  return {p.kind, d.boundary_cycles[idx(*where)].front()};
}

std::vector<std::optional<int>> vertex_labels(const RibbonGraph& g, const DerivedStructure& d) {
  std::vector<std::optional<int>> out(d.vertices.size());
  for (const auto& [name, p] : g.labels()) {
    if (p.kind != PointKind::kVertex) continue;
    if (auto v = locate(g, d, p)) out[idx(*v)] = name;
  }
  return out;
}

std::vector<std::optional<int>> cycle_labels(const RibbonGraph& g, const DerivedStructure& d) {
  std::vector<std::optional<int>> out(d.boundary_cycles.size());
  for (const auto& [name, p] : g.labels()) {
    if (p.kind == PointKind::kVertex) continue;
    if (auto c = locate(g, d, p)) out[idx(*c)] = name;
  }
  return out;
}

RibbonGraph disjoint_union(const RibbonGraph& a, const RibbonGraph& b) {
  const int na = a.half_edge_count();
  const int n = na + b.half_edge_count();
  std::vector<int> s1(idx(n)), s0(idx(n));
  for (int h = 0; h < na; ++h) {
    s1[idx(h)] = a.sigma1(h);
    s0[idx(h)] = a.sigma0(h);
  }
  for (int h = 0; h < b.half_edge_count(); ++h) {
    s1[idx(na + h)] = na + b.sigma1(h);
    s0[idx(na + h)] = b.on_circle(h) ? -1 : na + b.sigma0(h);
  }
  LabelMap labels = a.labels();
  for (const auto& [name, p] : b.labels()) {
    if (!labels.emplace(name, Point{p.kind, p.rep + na}).second) {
      throw GraphError("disjoint_union: label " + std::to_string(name) + " on both sides");
    }
  }
  return RibbonGraph::from_permutations(std::move(s1), std::move(s0), std::move(labels));
}

RibbonGraph relabel(const RibbonGraph& g, const std::vector<int>& to_new) {
  const int n = g.half_edge_count();
  std::vector<int> s1(idx(n)), s0(idx(n));
  for (int h = 0; h < n; ++h) {
    s1[idx(to_new[idx(h)])] = to_new[idx(g.sigma1(h))];
    s0[idx(to_new[idx(h)])] = g.on_circle(h) ? -1 : to_new[idx(g.sigma0(h))];
  }
  LabelMap labels;
  for (const auto& [name, p] : g.labels()) labels[name] = {p.kind, to_new[idx(p.rep)]};
  return RibbonGraph::from_permutations(std::move(s1), std::move(s0), std::move(labels));
}

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::kVertex: return "vertex";
    case PointKind::kCusp: return "cusp";
    case PointKind::kCircleCusp: return "circle_cusp";
  }
  return "?";
}

PointKind point_kind_from_string(const std::string& s) {
  if (s == "vertex") return PointKind::kVertex;
  if (s == "cusp") return PointKind::kCusp;
  if (s == "circle_cusp") return PointKind::kCircleCusp;
  throw GraphError("unknown point kind '" + s + "'");
}

nlohmann::json to_json(const RibbonGraph& g) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [name, p] : g.labels()) {
    labels[std::to_string(name)] = {{"kind", to_string(p.kind)}, {"rep", p.rep}};
  }
  return {{"half_edges", g.half_edge_count()},
          {"sigma1", g.sigma1_perm()},
          {"sigma0_cycles", g.sigma0_cycles()},
          {"circle_half_edges", g.circle_half_edges()},
          {"labels", labels}};
}

RibbonGraph graph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw GraphError("graph document must be an object");
    int n = j.at("half_edges").get<int>();
    auto sigma1 = j.at("sigma1").get<std::vector<int>>();
    auto cycles = j.at("sigma0_cycles").get<std::vector<std::vector<int>>>();
    std::vector<int> circle;
    if (j.contains("circle_half_edges")) circle = j.at("circle_half_edges").get<std::vector<int>>();
    LabelMap labels;
    if (j.contains("labels")) {
      for (const auto& [key, value] : j.at("labels").items()) {
        std::size_t used = 0;
        int name = std::stoi(key, &used);
        if (used != key.size()) throw GraphError("label name '" + key + "' is not an integer");
        labels[name] = {point_kind_from_string(value.at("kind").get<std::string>()),
                        value.at("rep").get<int>()};
      }
    }
    return RibbonGraph(n, std::move(sigma1), std::move(cycles), std::move(circle), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw GraphError("malformed graph document: bad label name");
  } catch (const std::out_of_range&) {
    throw GraphError("malformed graph document: label name out of range");
  }
}

}  // namespace ssgh
