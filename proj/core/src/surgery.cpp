#include "ssgh/surgery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ssgh/permutation.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

// Renumbers the alive half-edges in increasing order. Label reps are given in
// input numbering and must be alive.
SurgeryResult compact(const std::vector<int>& s1, const std::vector<int>& s0,
                      const std::vector<char>& alive, const LabelMap& labels) {
  SurgeryResult r;
  r.to_new.assign(s1.size(), -1);
  for (std::size_t h = 0; h < s1.size(); ++h) {
    if (!alive[h]) continue;
    r.to_new[h] = static_cast<int>(r.origin.size());
    r.origin.push_back(static_cast<int>(h));
  }
  std::vector<int> n1(r.origin.size()), n0(r.origin.size());
  for (std::size_t i = 0; i < r.origin.size(); ++i) {
    int h = r.origin[i];
    n1[i] = r.to_new[idx(s1[idx(h)])];
    n0[i] = s0[idx(h)] < 0 ? -1 : r.to_new[idx(s0[idx(h)])];
    if (n1[i] < 0 || (s0[idx(h)] >= 0 && n0[i] < 0)) throw GraphError("compact: dangling half-edge");
  }
  LabelMap out;
  for (const auto& [name, p] : labels) {
    int rep = r.to_new[idx(p.rep)];
    if (rep < 0) throw GraphError("compact: label " + std::to_string(name) + " lost its point");
    out[name] = {p.kind, rep};
  }
  r.graph = RibbonGraph::from_permutations(std::move(n1), std::move(n0), std::move(out));
  return r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[idx(std::max(a, b))] = std::min(a, b);
  }
};

// Components of Γ_Z together with the per-vertex data needed by the
// classification and the pruning.
struct SubgraphShape {
  std::vector<int> component_of;            // per half-edge, -1 outside H_Z
  std::vector<std::vector<int>> components;  // half-edges per component
  std::vector<int> z_valence;               // per vertex of Γ
  std::vector<char> marked;                  // per vertex of Γ
};

std::vector<char> marked_vertices(const RibbonGraph& g, const DerivedStructure& d, const NodeContext* nodes) {
  std::vector<char> marked(d.vertices.size(), 0);
  for (const auto& [name, p] : g.labels()) {
    if (p.kind != PointKind::kVertex) continue;
    if (auto v = locate(g, d, p)) marked[idx(*v)] = 1;
  }
  if (nodes) {
    for (int rep : nodes->vertex_node_reps) {
      if (d.vertex_of[idx(rep)] >= 0) marked[idx(d.vertex_of[idx(rep)])] = 1;
    }
  }
  return marked;
}

SubgraphShape shape_of(const RibbonGraph& g, const DerivedStructure& d, const std::vector<char>& mask,
                       const NodeContext* nodes) {
  SubgraphShape s;
  const int n = g.half_edge_count();
  UnionFind uf(idx(n));
  s.z_valence.assign(d.vertices.size(), 0);
  for (int h = 0; h < n; ++h) {
    if (mask[idx(h)]) uf.unite(h, g.sigma1(h));
  }
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    int first = -1;
    for (int h : d.vertices[v]) {
      if (!mask[idx(h)]) continue;
      ++s.z_valence[v];
      if (first < 0) first = h;
      else uf.unite(first, h);
    }
  }
  s.component_of.assign(idx(n), -1);
  std::map<int, int> ids;
  for (int h = 0; h < n; ++h) {
    if (!mask[idx(h)]) continue;
    auto [it, fresh] = ids.emplace(uf.find(h), static_cast<int>(s.components.size()));
    if (fresh) s.components.emplace_back();
    s.component_of[idx(h)] = it->second;
    s.components[idx(it->second)].push_back(h);
  }
  s.marked = marked_vertices(g, d, nodes);
  return s;
}

std::vector<ComponentWitness> witnesses(const RibbonGraph& g, const DerivedStructure& d,
                                        const SubgraphShape& s, const std::vector<char>& mask,
                                        const NodeContext* nodes) {
  std::set<int> cusp_nodes;
  if (nodes) {
    for (int rep : nodes->cusp_node_reps) cusp_nodes.insert(d.cycle_of[idx(rep)]);
  }
  std::vector<ComponentWitness> out(s.components.size());
  std::vector<char> has_face(s.components.size(), 0), bounds_node(s.components.size(), 0);
  for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
    const auto& cyc = d.boundary_cycles[c];
    if (!std::all_of(cyc.begin(), cyc.end(), [&](int h) { return mask[idx(h)] != 0; })) continue;
    int comp = s.component_of[idx(cyc.front())];
    has_face[idx(comp)] = 1;
    if (cusp_nodes.count(static_cast<int>(c))) bounds_node[idx(comp)] = 1;
  }
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    const auto& hs = s.components[c];
    ComponentWitness& w = out[c];
    std::vector<int> ids;
    std::set<int> vs;
    bool circle = false;
    for (int h : hs) {
      if (h < g.sigma1(h)) ids.push_back(h);
      if (g.on_circle(h)) circle = true;
      else vs.insert(d.vertex_of[idx(h)]);
    }
    w.edges = EdgeSet(std::move(ids));
    int e = static_cast<int>(hs.size()) / 2;
    int v = static_cast<int>(vs.size());
    bool all_bivalent = true;
    for (int vert : vs) {
      if (s.marked[idx(vert)]) ++w.labeled_vertices;
      if (s.z_valence[idx(vert)] != 2) all_bivalent = false;
      if (s.z_valence[idx(vert)] == 1 && !s.marked[idx(vert)]) w.unlabeled_univalent = true;
    }
    int betti = circle ? 1 : e - v + 1;
    if (betti == 0) w.shape = ComponentShape::kTree;
    else if (betti == 1) w.shape = (circle || all_bivalent) ? ComponentShape::kTopologicalCircle
                                                           : ComponentShape::kHomotopyCircle;
    else w.shape = ComponentShape::kOther;
    w.contains_boundary = has_face[c] != 0;
    if (w.shape == ComponentShape::kTree) {
      w.negligible = w.labeled_vertices <= 1;
    } else if (betti == 1) {
      w.negligible = w.labeled_vertices == 0 && w.contains_boundary && !bounds_node[c];
    }
  }
  return out;
}

}  // namespace

SurgeryResult induce_subgraph(const RibbonGraph& g, const EdgeSet& z) {
  const int n = g.half_edge_count();
  auto mask = z.half_edge_mask(g);
  std::vector<int> s1 = g.sigma1_perm();
  std::vector<int> s0(idx(n), -1);
  for (int h = 0; h < n; ++h) {
    if (!mask[idx(h)] || g.on_circle(h)) continue;
    int t = g.sigma0(h);
    while (!mask[idx(t)]) t = g.sigma0(t);
    s0[idx(h)] = t;
  }
  DerivedStructure d = derive(g);
  LabelMap labels;
  for (const auto& [name, p] : g.labels()) {
    auto where = locate(g, d, p);
    if (!where) continue;
    const auto& hs = p.kind == PointKind::kVertex ? d.vertices[idx(*where)] : d.boundary_cycles[idx(*where)];
    if (p.kind == PointKind::kVertex) {
      auto it = std::find_if(hs.begin(), hs.end(), [&](int h) { return mask[idx(h)] != 0; });
      if (it != hs.end()) labels[name] = {p.kind, *it};
    } else if (std::all_of(hs.begin(), hs.end(), [&](int h) { return mask[idx(h)] != 0; })) {
      labels[name] = {p.kind, hs.front()};
    }
  }
  return compact(s1, s0, mask, labels);
}

SurgeryResult quotient_graph(const RibbonGraph& g, const EdgeSet& z) {
  const int n = g.half_edge_count();
  auto mask = z.half_edge_mask(g);
  std::vector<char> alive(idx(n));
  for (int h = 0; h < n; ++h) alive[idx(h)] = !mask[idx(h)];
  auto sinf = g.sigma_inf();
  std::vector<int> next(idx(n), -1), prev(idx(n), -1);
  for (int h = 0; h < n; ++h) {
    if (!alive[idx(h)] || g.on_circle(h)) continue;
    int t = sinf[idx(h)];
    while (!alive[idx(t)]) t = sinf[idx(t)];
    next[idx(h)] = t;
    prev[idx(t)] = h;
  }
  std::vector<int> s1 = g.sigma1_perm();
  std::vector<int> s0(idx(n), -1);
  for (int h = 0; h < n; ++h) {
    if (!alive[idx(h)] || g.on_circle(h)) continue;
    s0[idx(h)] = g.sigma1(prev[idx(h)]);
  }
  DerivedStructure d = derive(g);
  LabelMap labels;
  for (const auto& [name, p] : g.labels()) {
    auto where = locate(g, d, p);
    if (!where) continue;
    if (p.kind == PointKind::kVertex) {
      const auto& hs = d.vertices[idx(*where)];
      if (std::none_of(hs.begin(), hs.end(), [&](int h) { return mask[idx(h)] != 0; })) labels[name] = p;
    } else {
      const auto& hs = d.boundary_cycles[idx(*where)];
      auto it = std::find_if(hs.begin(), hs.end(), [&](int h) { return alive[idx(h)] != 0; });
      if (it != hs.end()) labels[name] = {p.kind, *it};
    }
  }
  return compact(s1, s0, alive, labels);
}

SubsetClass classify_subset(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes) {
  DerivedStructure d = derive(g);
  auto mask = z.half_edge_mask(g);
  SubgraphShape s = shape_of(g, d, mask, nodes);
  SubsetClass out;
  out.proper = z.size() < g.edge_count();
  out.components = witnesses(g, d, s, mask, nodes);
  bool all_negligible = true, any_negligible = false, any_univalent = false, circles_labeled = true;
  for (const auto& w : out.components) {
    all_negligible = all_negligible && w.negligible;
    any_negligible = any_negligible || w.negligible;
    any_univalent = any_univalent || w.unlabeled_univalent;
    if (w.shape == ComponentShape::kTopologicalCircle && w.labeled_vertices == 0) circles_labeled = false;
  }
  if (all_negligible) {
    out.kind = SubsetKind::kNegligible;
  } else if (out.proper && !any_negligible && !any_univalent) {
    out.kind = circles_labeled ? SubsetKind::kStable : SubsetKind::kSemistable;
  } else {
    out.kind = SubsetKind::kNone;
  }
  return out;
}

EdgeSet max_semistable(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes) {
  DerivedStructure d = derive(g);
  auto mask = z.half_edge_mask(g);
  auto marked = marked_vertices(g, d, nodes);
  // Phase 1: strip edges ending in unlabeled univalent vertices.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
      if (marked[v]) continue;
      int only = -1, count = 0;
      for (int h : d.vertices[v]) {
        if (mask[idx(h)]) {
          ++count;
          only = h;
        }
      }
      if (count != 1) continue;
      mask[idx(only)] = 0;
      mask[idx(g.sigma1(only))] = 0;
      changed = true;
    }
  }
  // Phase 2: drop unlabeled circles that contain a boundary subgraph.
  SubgraphShape s = shape_of(g, d, mask, nodes);
  auto ws = witnesses(g, d, s, mask, nodes);
  std::vector<int> keep;
  for (const auto& w : ws) {
    if (w.negligible) continue;
    keep.insert(keep.end(), w.edges.begin(), w.edges.end());
  }
  return EdgeSet(std::move(keep));
}

EdgeSet max_stable(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes) {
  EdgeSet sst = max_semistable(g, z, nodes);
  if (sst.empty()) return sst;
  SubsetClass cls = classify_subset(g, sst, nodes);
  std::vector<int> keep;
  for (const auto& w : cls.components) {
    if (w.shape == ComponentShape::kTopologicalCircle && w.labeled_vertices == 0) continue;
    keep.insert(keep.end(), w.edges.begin(), w.edges.end());
  }
  return EdgeSet(std::move(keep));
}

SurgeryResult reduce(const RibbonGraph& g) {
  const int n = g.half_edge_count();
  DerivedStructure d = derive(g);
  std::vector<int> s1 = g.sigma1_perm();
  std::vector<int> s0 = g.sigma0_perm();
  std::vector<char> alive(idx(n), 1);
  auto vl = vertex_labels(g, d);
  LabelMap labels;
  std::map<int, std::vector<int>> face_of_label;
  for (const auto& [name, p] : g.labels()) {
    if (p.kind == PointKind::kVertex) {
      labels[name] = p;
    } else {
      auto c = locate(g, d, p);
      if (!c) throw GraphError("reduce: label on a missing cusp");
      face_of_label[name] = d.boundary_cycles[idx(*c)];
    }
  }
  std::vector<char> becomes_circle(idx(n), 0);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (d.vertices[v].size() != 2 || vl[v]) continue;
    int x = d.vertices[v][0], y = d.vertices[v][1];
    if (s1[idx(x)] == y) {
      s0[idx(x)] = s0[idx(y)] = -1;
      becomes_circle[idx(x)] = becomes_circle[idx(y)] = 1;
      continue;
    }
    int a = s1[idx(x)], b = s1[idx(y)];
    s1[idx(a)] = b;
    s1[idx(b)] = a;
    alive[idx(x)] = alive[idx(y)] = 0;
  }
  for (const auto& [name, face] : face_of_label) {
    auto it = std::find_if(face.begin(), face.end(), [&](int h) { return alive[idx(h)] != 0; });
    if (it == face.end()) throw GraphError("reduce: cusp label lost its face");
    PointKind kind = s0[idx(*it)] < 0 ? PointKind::kCircleCusp : PointKind::kCusp;
    labels[name] = {kind, *it};
  }
  return compact(s1, s0, alive, labels);
}

SurgeryResult reduction(const RibbonGraph& g, const EdgeSet& z) {
  SurgeryResult induced = induce_subgraph(g, z);
  SurgeryResult reduced = reduce(induced.graph);
  SurgeryResult out;
  out.graph = std::move(reduced.graph);
  out.origin.resize(reduced.origin.size());
  for (std::size_t i = 0; i < reduced.origin.size(); ++i) out.origin[i] = induced.origin[idx(reduced.origin[i])];
  out.to_new.assign(idx(g.half_edge_count()), -1);
  for (std::size_t i = 0; i < out.origin.size(); ++i) out.to_new[idx(out.origin[i])] = static_cast<int>(i);
  return out;
}

CollapseResult edge_collapse(const RibbonGraph& g, const EdgeSet& z) {
  const int n = g.half_edge_count();
  if (z.size() >= g.edge_count()) throw GraphError("edge_collapse: Z must be proper");
  DerivedStructure d = derive(g);
  EdgeSet y = max_semistable(g, z);
  auto zmask = z.half_edge_mask(g);
  auto ymask = y.half_edge_mask(g);

  SurgeryResult q = quotient_graph(g, z);
  SurgeryResult zi = induce_subgraph(g, z);
  DerivedStructure dz = derive(zi.graph);
  SurgeryResult yi = induce_subgraph(g, y);

  // Z-components that meet Z^sst.
  std::vector<char> comp_has_y(dz.components.size(), 0);
  for (int h = 0; h < n; ++h) {
    if (ymask[idx(h)]) comp_has_y[idx(dz.component_of[idx(zi.to_new[idx(h)])])] = 1;
  }
  // Quotient vertex receiving a collapsed Z-component, by component index.
  auto collapsed_vertex = [&](int z_half_edge) -> int {
    int comp = dz.component_of[idx(zi.to_new[idx(z_half_edge)])];
    for (int hz : dz.components[idx(comp)]) {
      int h = zi.origin[idx(hz)];
      if (g.on_circle(h)) continue;
      for (int k : d.vertices[idx(d.vertex_of[idx(h)])]) {
        if (!zmask[idx(k)]) return q.to_new[idx(k)];
      }
    }
    return -1;
  };

  LabelMap qlabels = q.graph.labels();
  LabelMap ylabels;
  for (const auto& [name, p] : g.labels()) {
    auto where = locate(g, d, p);
    if (!where) throw GraphError("edge_collapse: label on a missing point");
    if (p.kind == PointKind::kVertex) {
      const auto& hs = d.vertices[idx(*where)];
      auto in_y = std::find_if(hs.begin(), hs.end(), [&](int h) { return ymask[idx(h)] != 0; });
      auto in_z = std::find_if(hs.begin(), hs.end(), [&](int h) { return zmask[idx(h)] != 0; });
      if (in_y != hs.end()) {
        ylabels[name] = {PointKind::kVertex, yi.to_new[idx(*in_y)]};
      } else if (in_z != hs.end()) {
        int v = collapsed_vertex(*in_z);
        if (v < 0) throw GraphError("edge_collapse: labeled component has no attachment");
        qlabels[name] = {PointKind::kVertex, v};
      }
      continue;
    }
    const auto& hs = d.boundary_cycles[idx(*where)];
    if (std::any_of(hs.begin(), hs.end(), [&](int h) { return zmask[idx(h)] == 0; })) continue;
    auto in_y = std::find_if(hs.begin(), hs.end(), [&](int h) { return ymask[idx(h)] != 0; });
    if (in_y != hs.end()) {
      int r = yi.to_new[idx(*in_y)];
      // Locate the Γ_Y face containing the surviving part of the cusp.
      ylabels[name] = {yi.graph.on_circle(r) ? PointKind::kCircleCusp : PointKind::kCusp, r};
    } else {
      int v = collapsed_vertex(hs.front());
      if (v < 0) throw GraphError("edge_collapse: collapsed cusp has no attachment");
      qlabels[name] = {PointKind::kVertex, v};
    }
  }
  RibbonGraph qg = q.graph;
  qg.set_labels(qlabels);
  RibbonGraph yg = yi.graph;
  yg.set_labels(ylabels);
  SurgeryResult yr = reduce(yg);

  CollapseResult out;
  out.graph = disjoint_union(qg, yr.graph);
  out.semistable_part = y;
  const int nq = qg.half_edge_count();
  out.origin = q.origin;
  out.in_new_piece.assign(idx(nq), 0);
  for (int h : yr.origin) {
    out.origin.push_back(yi.origin[idx(h)]);
    out.in_new_piece.push_back(1);
  }
  // Image of an input half-edge of Z^sst in the reduced part, or -1.
  auto reduced_image = [&](int h) -> int {
    int a = yi.to_new[idx(h)];
    if (a < 0) return -1;
    int b = yr.to_new[idx(a)];
    return b < 0 ? -1 : nq + b;
  };

  DerivedStructure dq = derive(qg);
  std::vector<int> inv0 = inverse_permutation(g.sigma0_perm());
  for (std::size_t v = 0; v < dq.vertices.size(); ++v) {
    std::optional<int> face;
    for (int hq : dq.vertices[v]) {
      int prev = inv0[idx(q.origin[idx(hq)])];
      if (prev < 0 || !zmask[idx(prev)]) continue;
      int f = dz.cycle_of[idx(zi.to_new[idx(prev)])];
      if (face && *face != f) throw GraphError("edge_collapse: inconsistent exceptional pairing");
      face = f;
    }
    if (!face) continue;
    int comp = dz.component_of[idx(dz.boundary_cycles[idx(*face)].front())];
    if (!comp_has_y[idx(comp)]) continue;
    int rep = -1;
    for (int hz : dz.boundary_cycles[idx(*face)]) {
      int h = zi.origin[idx(hz)];
      if (!ymask[idx(h)]) continue;
      rep = reduced_image(h);
      if (rep >= 0) break;
    }
    if (rep < 0) throw GraphError("edge_collapse: exceptional cycle vanished in reduction");
    PointKind kind = out.graph.on_circle(rep) ? PointKind::kCircleCusp : PointKind::kCusp;
    out.pairs.push_back({{PointKind::kVertex, dq.vertices[v].front()}, {kind, rep}});
  }
  return out;
}

BlowUpResult blow_up(const RibbonGraph& g, int vertex_rep) {
  if (vertex_rep < 0 || vertex_rep >= g.half_edge_count() || g.on_circle(vertex_rep)) {
    throw GraphError("blow_up: not a vertex");
  }
  DerivedStructure d = derive(g);
  int v = d.vertex_of[idx(vertex_rep)];
  for (const auto& [name, p] : g.labels()) {
    if (p.kind == PointKind::kVertex && locate(g, d, p) == v) {
      throw GraphError("blow_up: vertex carries label " + std::to_string(name));
    }
  }
  std::vector<int> cycle;
  for (int h = vertex_rep;;) {
    cycle.push_back(h);
    h = g.sigma0(h);
    if (h == vertex_rep) break;
  }
  const int n0 = g.half_edge_count();
  const int k = static_cast<int>(cycle.size());
  std::vector<int> s1 = g.sigma1_perm();
  std::vector<int> s0 = g.sigma0_perm();
  s1.resize(idx(n0 + 2 * k));
  s0.resize(idx(n0 + 2 * k));
  auto a = [&](int i) { return n0 + 2 * (((i % k) + k) % k); };
  auto b = [&](int i) { return a(i) + 1; };
  for (int i = 0; i < k; ++i) {
    s1[idx(a(i))] = b(i);
    s1[idx(b(i))] = a(i);
    int h = cycle[idx(i)];
    s0[idx(h)] = a(i);
    s0[idx(a(i))] = b(i - 1);
    s0[idx(b(i - 1))] = h;
  }
  BlowUpResult out;
  out.graph = RibbonGraph::from_permutations(std::move(s1), std::move(s0), g.labels());
  out.cycle_rep = a(0);
  return out;
}

bool is_injective_cycle(const RibbonGraph& g, const DerivedStructure& d, int cycle) {
  std::set<int> vertices, edges;
  for (int h : d.boundary_cycles[idx(cycle)]) {
    if (g.on_circle(h)) return true;
    if (!vertices.insert(d.vertex_of[idx(h)]).second) return false;
    if (!edges.insert(g.edge_of(h)).second) return false;
  }
  return true;
}

}  // namespace ssgh
