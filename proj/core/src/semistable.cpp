#include "ssgh/semistable.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ssgh/gluing.hpp"
#include "ssgh/permutation.hpp"
#include "ssgh/surgery.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

SurgeryResult identity_result(const RibbonGraph& g) {
  SurgeryResult r;
  r.graph = g;
  r.origin.resize(idx(g.half_edge_count()));
  std::iota(r.origin.begin(), r.origin.end(), 0);
  r.to_new = r.origin;
  return r;
}

int vertex_marker(int pair) { return -(2 * pair + 1); }
int cusp_marker(int pair) { return -(2 * pair + 2); }

LabelMap without_markers(const LabelMap& labels) {
  LabelMap out;
  for (const auto& [name, p] : labels) {
    if (name > 0) out[name] = p;
  }
  return out;
}

RibbonGraph with_labels(RibbonGraph g, LabelMap labels) {
  g.set_labels(std::move(labels));
  return g;
}

// Γ half-edges at a vertex of Γ whose level exceeds `above`.
std::vector<int> chain_half_edges(const DerivedStructure& dg, const std::vector<int>& level, int vertex, int above) {
  std::vector<int> out;
  for (int k : dg.vertices[idx(vertex)]) {
    if (level[idx(k)] > above) out.push_back(k);
  }
  return out;
}

// Reads off from Γ how the vertex through `v_rep` of the partial assembly
// `s` sits on the target cycle. `origin` maps half-edges of `s` to Γ.
GluingPlan read_plan(const RibbonGraph& g, const DerivedStructure& dg, const std::vector<int>& inv0,
                     const std::vector<int>& level, const RibbonGraph& s, const std::vector<int>& origin,
                     int v_rep, const Point& target) {
  DerivedStructure ds = derive(s);
  std::vector<int> present(idx(g.half_edge_count()), -1);
  for (int h = 0; h < s.half_edge_count(); ++h) present[idx(origin[idx(h)])] = h;
  const int vlevel = level[idx(origin[idx(v_rep)])];
  const auto& vhs = ds.vertices[idx(ds.vertex_of[idx(v_rep)])];
  std::set<int> vset(vhs.begin(), vhs.end());
  auto face = locate(s, ds, target);
  if (!face) throw GraphError("from_sequence: target cycle not found");
  const int bface = *face;
  const int bcomp = ds.component_of[idx(ds.boundary_cycles[idx(bface)].front())];
  auto is_unit = [&](int gamma) {
    int x = present[idx(gamma)];
    return x >= 0 && vset.count(x) > 0;
  };
  auto chain_at = [&](int vertex) {
    auto ch = chain_half_edges(dg, level, vertex, vlevel);
    if (ch.size() != 2) throw GraphError("from_sequence: attachment point is not on an edge");
    return ch;
  };

  GluingPlan plan;
  if (target.kind == PointKind::kCircleCusp) {
    struct CirclePoint {
      int f = -1, b = -1;
      std::vector<int> run;
    };
    std::map<int, CirclePoint> points;
    for (int u : vhs) {
      int w = dg.vertex_of[idx(origin[idx(u)])];
      if (points.count(w)) continue;
      auto ch = chain_at(w);
      // Units between ch[0] and ch[1] in the rotation at w, and the rest.
      std::vector<int> first, second;
      for (int x = g.sigma0(ch[0]); x != ch[1]; x = g.sigma0(x)) {
        if (is_unit(x)) first.push_back(present[idx(x)]);
      }
      for (int x = g.sigma0(ch[1]); x != ch[0]; x = g.sigma0(x)) {
        if (is_unit(x)) second.push_back(present[idx(x)]);
      }
      if (!first.empty() && !second.empty()) throw GraphError("from_sequence: units on both sides of a circle");
      CirclePoint cp;
      if (!first.empty()) {
        cp.b = ch[0];
        cp.f = ch[1];
        cp.run = std::move(first);
      } else {
        cp.b = ch[1];
        cp.f = ch[0];
        cp.run = std::move(second);
      }
      points[w] = std::move(cp);
    }
    const int start = points.begin()->first;
    int w = start;
    do {
      const CirclePoint& cp = points.at(w);
      plan.circle_points.push_back({cp.run, {}, cp.f, cp.b});
      int k = cp.f;
      while (true) {
        int k1 = g.sigma1(k);
        int w1 = dg.vertex_of[idx(k1)];
        if (points.count(w1)) {
          if (points.at(w1).b != k1) throw GraphError("from_sequence: inconsistent circle direction");
          w = w1;
          break;
        }
        auto ch = chain_at(w1);
        k = ch[0] == k1 ? ch[1] : ch[0];
      }
    } while (w != start);
    if (plan.circle_points.size() != points.size()) throw GraphError("from_sequence: circle walk missed points");
    plan.circle_half_edge = target.rep;
    return plan;
  }

  std::map<int, std::vector<std::pair<int, int>>> corner;  // half-edge -> (distance, unit)
  struct EdgePoint {
    int t = 0;
    SidePoint side;
  };
  std::map<int, std::map<int, EdgePoint>> along;  // edge id -> Γ vertex -> point
  for (int u : vhs) {
    const int gamma = origin[idx(u)];
    const int w = dg.vertex_of[idx(gamma)];
    int found = -1, steps = 1;
    for (int x = inv0[idx(gamma)]; x != gamma; x = inv0[idx(x)], ++steps) {
      int sx = present[idx(x)];
      if (sx >= 0 && !vset.count(sx) && ds.component_of[idx(sx)] == bcomp) {
        found = sx;
        break;
      }
    }
    if (found >= 0) {
      if (ds.cycle_of[idx(found)] != bface) throw GraphError("from_sequence: unit lands outside the target cycle");
      corner[found].push_back({steps, u});
      continue;
    }
    auto ch = chain_at(w);
    auto walk = [&](int k) -> std::pair<int, int> {
      for (int dist = 1;; ++dist) {
        int k1 = g.sigma1(k);
        if (present[idx(k1)] >= 0) return {present[idx(k1)], dist};
        auto next = chain_at(dg.vertex_of[idx(k1)]);
        k = next[0] == k1 ? next[1] : next[0];
      }
    };
    auto [ea, da] = walk(ch[0]);
    auto [eb, db] = walk(ch[1]);
    if (s.sigma1(ea) != eb) throw GraphError("from_sequence: attachment chain does not match an edge");
    const int edge = std::min(ea, eb);
    auto& pts = along[edge];
    if (pts.count(w)) continue;
    EdgePoint ep;
    int p = edge == ea ? ch[0] : ch[1];
    int q = edge == ea ? ch[1] : ch[0];
    ep.t = edge == ea ? da : db;
    ep.side.origin_p = p;
    ep.side.origin_q = q;
    for (int x = g.sigma0(p); x != q; x = g.sigma0(x)) {
      if (is_unit(x)) ep.side.run_w.push_back(present[idx(x)]);
    }
    for (int x = g.sigma0(q); x != p; x = g.sigma0(x)) {
      if (is_unit(x)) ep.side.run_u.push_back(present[idx(x)]);
    }
    pts[w] = std::move(ep);
  }
  for (auto& [h, run] : corner) {
    std::sort(run.begin(), run.end());
    for (const auto& [dist, u] : run) plan.corner_runs[h].push_back(u);
  }
  for (auto& [edge, pts] : along) {
    std::vector<EdgePoint> ordered;
    for (auto& [w, ep] : pts) ordered.push_back(ep);
    std::sort(ordered.begin(), ordered.end(), [](const EdgePoint& a, const EdgePoint& b) { return a.t < b.t; });
    for (auto& ep : ordered) plan.edge_points[edge].push_back(std::move(ep.side));
  }
  return plan;
}

struct RawPair {
  int vertex_piece = 0;
  int vertex_gamma = -1;       // a Γ half-edge at the exceptional vertex
  std::vector<int> cycle;      // Γ half-edges of the exceptional boundary cycle
};

}  // namespace

EdgeSet SequencedGraph::z(int i) const {
  if (i <= 0) return EdgeSet::all(graph);
  if (i > length()) return {};
  return chain[idx(i - 1)];
}

ValidityReport validate_sequence(const SequencedGraph& sq, bool semistable) {
  ValidityReport report = validate(sq.graph);
  if (!report.empty()) return report;
  if (derive(sq.graph).components.size() != 1) {
    report.push_back({"disconnected", "sequenced graphs are connected"});
    return report;
  }
  EdgeSet all = EdgeSet::all(sq.graph);
  for (int i = 1; i <= sq.length(); ++i) {
    const EdgeSet& zi = sq.chain[idx(i - 1)];
    std::string where = "Z_" + std::to_string(i);
    if (!zi.subset_of(all)) {
      report.push_back({"sequence-bad-edge", where + " names a non-edge"});
      continue;
    }
    if (zi.empty()) report.push_back({"sequence-empty-set", where});
    EdgeSet prev = sq.z(i - 1);
    if (!zi.subset_of(prev) || zi == prev) report.push_back({"sequence-not-decreasing", where});
    if (semistable) {
      if (!zi.empty() && !classify_subset(sq.graph, zi).semistable()) {
        report.push_back({"sequence-not-semistable", where});
      }
    } else if (i > 1 && !zi.subset_of(max_semistable(sq.graph, prev))) {
      report.push_back({"sequence-not-permissible", where});
    }
  }
  return report;
}

std::vector<int> half_edge_levels(const SequencedGraph& sq) {
  std::vector<int> level(idx(sq.graph.half_edge_count()), 0);
  for (int i = 1; i <= sq.length(); ++i) {
    auto mask = sq.chain[idx(i - 1)].half_edge_mask(sq.graph);
    for (std::size_t h = 0; h < mask.size(); ++h) {
      if (mask[h]) level[h] = i;
    }
  }
  return level;
}

SequencedGraph canonical_sequence(const SequencedGraph& sq) {
  CanonicalForm c = canonicalize(sq.graph, sq.chain);
  return {c.graph, c.chain};
}

SequencedGraph collapse_negligible(const SequencedGraph& sq, const std::vector<EdgeSet>& d,
                                   std::vector<int>* origin) {
  if (d.empty() || d.front().empty()) {
    for (const auto& di : d) {
      if (!di.empty()) throw GraphError("collapse_negligible: D_i must be contained in D_0");
    }
    if (origin) {
      origin->resize(idx(sq.graph.half_edge_count()));
      std::iota(origin->begin(), origin->end(), 0);
    }
    return sq;
  }
  const EdgeSet& d0 = d.front();
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (!d[i].subset_of(d[i - 1])) throw GraphError("collapse_negligible: D_i must be contained in D_{i-1}");
  }
  for (int i = 0; i <= sq.length(); ++i) {
    EdgeSet di = idx(i) < d.size() ? d[idx(i)] : EdgeSet{};
    if (!di.subset_of(sq.z(i))) throw GraphError("collapse_negligible: D_i must be contained in Z_i");
    if (!d0.intersect(sq.z(i)).subset_of(di)) throw GraphError("collapse_negligible: D_i must be D_0 restricted to Z_i");
    if (!di.empty() && !classify_subset(sq.graph, di).negligible()) {
      throw GraphError("collapse_negligible: D_" + std::to_string(i) + " is not negligible");
    }
  }
  CollapseResult c = edge_collapse(sq.graph, d0);
  std::vector<int> to_new(idx(sq.graph.half_edge_count()), -1);
  for (std::size_t h = 0; h < c.origin.size(); ++h) to_new[idx(c.origin[h])] = static_cast<int>(h);
  SequencedGraph out;
  out.graph = c.graph;
  EdgeSet prev = EdgeSet::all(out.graph);
  for (int i = 1; i <= sq.length(); ++i) {
    EdgeSet image = map_edges(sq.graph, out.graph, sq.z(i).minus(d0), to_new);
    if (image == prev) throw GraphError("collapse_negligible: a piece would vanish");
    out.chain.push_back(image);
    prev = image;
  }
  if (origin) *origin = c.origin;
  return out;
}

SequencedGraph insert_piece(const SequencedGraph& sq, const EdgeSet& s, int piece) {
  if (piece < 0 || piece > sq.length()) throw GraphError("insert_piece: piece index out of range");
  if (s.empty()) throw GraphError("insert_piece: empty subgraph");
  EdgeSet inside = sq.z(piece).minus(sq.z(piece + 1));
  if (!s.subset_of(inside)) throw GraphError("insert_piece: subgraph straddles pieces");
  EdgeSet y = s.unite(sq.z(piece + 1));
  if (y == sq.z(piece)) throw GraphError("insert_piece: subgraph exhausts the piece");
  if (!classify_subset(sq.graph, y).semistable()) throw GraphError("insert_piece: result is not semistable");
  SequencedGraph out = sq;
  out.chain.insert(out.chain.begin() + piece, y);
  return out;
}

SemistableGraph from_sequence(const SequencedGraph& sq) {
  ValidityReport report = validate_sequence(sq, true);
  if (!report.empty()) throw GraphError("from_sequence: " + report.front().name + " (" + report.front().detail + ")");
  const RibbonGraph& g = sq.graph;
  const int m = sq.length();
  const DerivedStructure dg = derive(g);
  const std::vector<int> level = half_edge_levels(sq);
  const std::vector<int> inv0 = inverse_permutation(g.sigma0_perm());

  // Unreduced pieces Γ_{Z_i}/Γ_{Z_{i+1}} and their exceptional vertices.
  std::vector<SurgeryResult> pieces;
  std::vector<RawPair> raw;
  for (int i = 0; i <= m; ++i) {
    SurgeryResult ind = i == 0 ? identity_result(g) : induce_subgraph(g, sq.z(i));
    SurgeryResult q = identity_result(ind.graph);
    if (i < m) {
      EdgeSet next = map_edges(g, ind.graph, sq.z(i + 1), ind.to_new);
      q = quotient_graph(ind.graph, next);
      auto next_mask = next.half_edge_mask(ind.graph);
      auto pred = inverse_permutation(ind.graph.sigma0_perm());
      SurgeryResult zi = induce_subgraph(g, sq.z(i + 1));
      DerivedStructure dz = derive(zi.graph);
      DerivedStructure dq = derive(q.graph);
      for (const auto& vertex : dq.vertices) {
        std::optional<int> face;
        for (int hq : vertex) {
          int p = pred[idx(q.origin[idx(hq)])];
          if (!next_mask[idx(p)]) continue;
          int f = dz.cycle_of[idx(zi.to_new[idx(ind.origin[idx(p)])])];
          if (face && *face != f) throw GraphError("from_sequence: inconsistent exceptional pairing");
          face = f;
        }
        if (!face) continue;
        RawPair rp;
        rp.vertex_piece = i;
        rp.vertex_gamma = ind.origin[idx(q.origin[idx(vertex.front())])];
        for (int hz : dz.boundary_cycles[idx(*face)]) rp.cycle.push_back(zi.origin[idx(hz)]);
        raw.push_back(std::move(rp));
      }
    }
    SurgeryResult piece;
    piece.graph = q.graph;
    piece.origin.resize(q.origin.size());
    for (std::size_t h = 0; h < q.origin.size(); ++h) piece.origin[h] = ind.origin[idx(q.origin[h])];
    piece.to_new.assign(idx(g.half_edge_count()), -1);
    for (std::size_t h = 0; h < piece.origin.size(); ++h) piece.to_new[idx(piece.origin[h])] = static_cast<int>(h);
    pieces.push_back(std::move(piece));
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawPair& a, const RawPair& b) { return a.vertex_piece > b.vertex_piece; });

  // Labels go to the highest piece of a vertex and the lowest piece of a face.
  std::vector<LabelMap> labels(idx(m + 1));
  for (const auto& [name, p] : g.labels()) {
    auto where = locate(g, dg, p);
    if (!where) throw GraphError("from_sequence: label on a missing point");
    const auto& hs = p.kind == PointKind::kVertex ? dg.vertices[idx(*where)] : dg.boundary_cycles[idx(*where)];
    auto pick = p.kind == PointKind::kVertex
                    ? std::max_element(hs.begin(), hs.end(), [&](int a, int b) { return level[idx(a)] < level[idx(b)]; })
                    : std::min_element(hs.begin(), hs.end(), [&](int a, int b) { return level[idx(a)] < level[idx(b)]; });
    int l = level[idx(*pick)];
    labels[idx(l)][name] = {p.kind, pieces[idx(l)].to_new[idx(*pick)]};
  }
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const RawPair& rp = raw[k];
    int pair = static_cast<int>(k);
    labels[idx(rp.vertex_piece)][vertex_marker(pair)] = {PointKind::kVertex,
                                                          pieces[idx(rp.vertex_piece)].to_new[idx(rp.vertex_gamma)]};
    int pick = *std::min_element(rp.cycle.begin(), rp.cycle.end(),
                                 [&](int a, int b) { return level[idx(a)] < level[idx(b)]; });
    int l = level[idx(pick)];
    if (l <= rp.vertex_piece) throw GraphError("from_sequence: cusp-node below its vertex-node");
    labels[idx(l)][cusp_marker(pair)] = {PointKind::kCusp, pieces[idx(l)].to_new[idx(pick)]};
  }

  // Reduce and assemble the disjoint union.
  RibbonGraph state;
  std::vector<int> origin, tags;
  for (int i = 0; i <= m; ++i) {
    SurgeryResult red = reduce(with_labels(pieces[idx(i)].graph, labels[idx(i)]));
    state = disjoint_union(state, red.graph);
    for (int h : red.origin) {
      origin.push_back(pieces[idx(i)].origin[idx(h)]);
      tags.push_back(i);
    }
  }

  SemistableGraph out;
  out.graph = with_labels(state, without_markers(state.labels()));
  DerivedStructure ds = derive(state);
  for (const auto& comp : ds.components) out.orders.push_back(tags[idx(comp.front())]);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    int pair = static_cast<int>(k);
    out.nodes.push_back({state.labels().at(vertex_marker(pair)), state.labels().at(cusp_marker(pair))});
  }

  // Tangent directions: replay the gluings in order and locate each actual
  // configuration in its family.
  for (std::size_t k = 0; k < raw.size(); ++k) {
    int pair = static_cast<int>(k);
    LabelMap lm = state.labels();
    Point v = lm.at(vertex_marker(pair));
    Point c = lm.at(cusp_marker(pair));
    lm.erase(vertex_marker(pair));
    lm.erase(cusp_marker(pair));
    RibbonGraph base = with_labels(state, lm);
    auto family = vertex_gluing_family(base, v.rep, c, tags);
    GluingPlan plan = read_plan(g, dg, inv0, level, base, origin, v.rep, c);
    GluingOutcome glued = apply_gluing(base, plan, origin, tags);
    std::string key = tagged_key(glued.graph, glued.tags);
    auto it = std::find_if(family.begin(), family.end(), [&](const GluedClass& gc) { return gc.key == key; });
    if (it == family.end()) throw GraphError("from_sequence: tangent direction not found in the gluing family");
    out.tangents.push_back(static_cast<int>(it - family.begin()));
    state = std::move(glued.graph);
    origin = std::move(glued.origin);
    tags = std::move(glued.tags);
  }
  if (tagged_key(state, tags) != tagged_key(g, level)) {
    throw GraphError("from_sequence: reassembly does not reproduce the graph");
  }
  return out;
}

SequencedGraph to_sequences(const SemistableGraph& sg) {
  ValidityReport report = validate_semistable(sg);
  if (!report.empty()) throw GraphError("to_sequences: " + report.front().name + " (" + report.front().detail + ")");
  if (sg.tangents.size() != sg.nodes.size()) throw GraphError("to_sequences: every node pair needs a tangent direction");
  DerivedStructure d = derive(sg.graph);
  std::vector<int> tags(idx(sg.graph.half_edge_count()), 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (int h : d.components[c]) tags[idx(h)] = sg.orders[c];
  }
  auto order_of = [&](const Point& p) { return tags[idx(p.rep)]; };
  for (std::size_t k = 1; k < sg.nodes.size(); ++k) {
    if (order_of(sg.nodes[k].vertex) > order_of(sg.nodes[k - 1].vertex)) {
      throw GraphError("to_sequences: node pairs must be listed by descending vertex order");
    }
  }
  LabelMap lm = sg.graph.labels();
  for (std::size_t k = 0; k < sg.nodes.size(); ++k) {
    int pair = static_cast<int>(k);
    lm[vertex_marker(pair)] = sg.nodes[k].vertex;
    lm[cusp_marker(pair)] = sg.nodes[k].cusp;
  }
  RibbonGraph state = with_labels(sg.graph, lm);
  for (std::size_t k = 0; k < sg.nodes.size(); ++k) {
    int pair = static_cast<int>(k);
    LabelMap cur = state.labels();
    Point v = cur.at(vertex_marker(pair));
    Point c = cur.at(cusp_marker(pair));
    cur.erase(vertex_marker(pair));
    cur.erase(cusp_marker(pair));
    auto family = vertex_gluing_family(with_labels(state, cur), v.rep, c, tags);
    int t = sg.tangents[k];
    if (t < 0 || idx(t) >= family.size()) {
      throw GraphError("to_sequences: tangent index " + std::to_string(t) + " exceeds the family size " +
                       std::to_string(family.size()));
    }
    state = family[idx(t)].graph;
    tags = family[idx(t)].tags;
  }
  int m = *std::max_element(sg.orders.begin(), sg.orders.end());
  SequencedGraph out;
  out.graph = state;
  for (int j = 1; j <= m; ++j) {
    std::vector<int> ids;
    for (int e : state.edges()) {
      if (tags[idx(e)] >= j) ids.push_back(e);
    }
    out.chain.emplace_back(std::move(ids));
  }
  return canonical_sequence(out);
}

ValidityReport validate_semistable(const SemistableGraph& sg) {
  ValidityReport report = validate(sg.graph, false);
  if (!report.empty()) return report;
  const RibbonGraph& g = sg.graph;
  DerivedStructure d = derive(g);
  const std::size_t comps = d.components.size();
  if (sg.orders.size() != comps) {
    report.push_back({"orders-size", "one order per component is required"});
    return report;
  }
  if (!sg.tangents.empty() && sg.tangents.size() != sg.nodes.size()) {
    report.push_back({"tangents-size", "one tangent direction per node pair"});
  }
  for (const auto& [name, p] : g.labels()) {
    if (name <= 0) report.push_back({"label-name", "label names are positive"});
  }
  // Vertex and cycle indices of every node.
  std::vector<char> vertex_node(d.vertices.size(), 0), cycle_node(d.boundary_cycles.size(), 0);
  std::vector<std::pair<int, int>> links;  // component pairs
  for (std::size_t k = 0; k < sg.nodes.size(); ++k) {
    const NodePair& np = sg.nodes[k];
    std::string where = "pair " + std::to_string(k);
    bool kinds_ok = np.vertex.kind == PointKind::kVertex && np.cusp.kind != PointKind::kVertex;
    if (!kinds_ok) {
      report.push_back({"node-pair-kinds", where + ": a cusp-node pairs with a vertex-node"});
      continue;
    }
    auto v = locate(g, d, np.vertex);
    auto c = locate(g, d, np.cusp);
    if (!v || !c) {
      report.push_back({"node-missing-point", where});
      continue;
    }
    if (vertex_node[idx(*v)] || cycle_node[idx(*c)]) report.push_back({"node-reused", where});
    vertex_node[idx(*v)] = 1;
    cycle_node[idx(*c)] = 1;
    int cv = d.component_of[idx(np.vertex.rep)];
    int cc = d.component_of[idx(np.cusp.rep)];
    if (cv == cc) report.push_back({"self-association", where});
    if (d.component_is_circle(g, cv) && d.component_is_circle(g, cc)) {
      report.push_back({"associated-circles", where});
    }
    if (sg.orders[idx(cc)] <= sg.orders[idx(cv)]) report.push_back({"order-not-increasing", where});
    links.emplace_back(cv, cc);
  }
  auto vl = vertex_labels(g, d);
  auto cl = cycle_labels(g, d);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (vl[v] && vertex_node[v]) report.push_back({"label-on-node", "vertex " + std::to_string(d.vertices[v].front())});
    if (d.vertices[v].size() <= 2 && !vl[v] && !vertex_node[v]) {
      report.push_back({"uncovered-distinguished-point", "vertex " + std::to_string(d.vertices[v].front())});
    }
  }
  for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
    int rep = d.boundary_cycles[c].front();
    if (cl[c] && cycle_node[c]) report.push_back({"label-on-node", "cusp " + std::to_string(rep)});
    if (!cl[c] && !cycle_node[c]) {
      if (g.on_circle(rep)) {
        report.push_back({"circle-cusp-not-node", "circle half-edge " + std::to_string(rep)});
      } else {
        report.push_back({"uncovered-distinguished-point", "cusp " + std::to_string(rep)});
      }
    } else if (g.on_circle(rep) && !cycle_node[c]) {
      report.push_back({"circle-cusp-not-node", "circle half-edge " + std::to_string(rep)});
    }
  }
  // Association graph connectivity.
  std::vector<int> parent(comps);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
    return x;
  };
  for (auto [a, b] : links) parent[idx(find(a))] = find(b);
  for (std::size_t c = 1; c < comps; ++c) {
    if (find(static_cast<int>(c)) != find(0)) {
      report.push_back({"disconnected", "the glued surface is not connected"});
      break;
    }
  }
  int m = comps ? *std::max_element(sg.orders.begin(), sg.orders.end()) : 0;
  std::vector<char> used(idx(m + 1), 0);
  for (int o : sg.orders) {
    if (o < 0) report.push_back({"order-negative", std::to_string(o)});
    else used[idx(o)] = 1;
  }
  for (int o = 0; o <= m; ++o) {
    if (!used[idx(o)]) report.push_back({"order-gap", "no component of order " + std::to_string(o)});
  }
  for (const auto& np : sg.nodes) {
    if (np.cusp.kind != PointKind::kVertex && np.cusp.rep >= 0 && np.cusp.rep < g.half_edge_count() &&
        sg.orders[idx(d.component_of[idx(np.cusp.rep)])] == 0) {
      report.push_back({"order-zero-cusp-node", "cusp " + std::to_string(np.cusp.rep)});
    }
  }
  // Labeled Euler characteristic, counting nodes as marked vertices.
  for (std::size_t c = 0; c < comps; ++c) {
    if (d.component_is_circle(g, static_cast<int>(c))) continue;
    std::set<int> verts;
    for (int h : d.components[c]) verts.insert(d.vertex_of[idx(h)]);
    int marked = 0;
    for (int v : verts) marked += (vl[idx(v)] || vertex_node[idx(v)]) ? 1 : 0;
    int chi = static_cast<int>(verts.size()) - static_cast<int>(d.components[c].size()) / 2 - marked;
    if (chi > 0) report.push_back({"positive-euler-characteristic", "component " + std::to_string(c)});
  }
  return report;
}

namespace {

nlohmann::json point_json(const Point& p) { return {{"kind", to_string(p.kind)}, {"rep", p.rep}}; }

Point point_from(const nlohmann::json& j) {
  return {point_kind_from_string(j.at("kind").get<std::string>()), j.at("rep").get<int>()};
}

}  // namespace

nlohmann::json to_json(const SequencedGraph& sq) {
  nlohmann::json j = to_json(sq.graph);
  j["sequence"] = chain_to_json(sq.chain);
  return j;
}

SequencedGraph sequence_from_json(const nlohmann::json& j) {
  SequencedGraph sq;
  sq.graph = graph_from_json(j);
  if (j.contains("sequence")) sq.chain = chain_from_json(j.at("sequence"));
  return sq;
}

nlohmann::json to_json(const SemistableGraph& sg) {
  DerivedStructure d = derive(sg.graph);
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& np : sg.nodes) nodes.push_back({point_json(np.vertex), point_json(np.cusp)});
  return {{"graph", to_json(sg.graph)},
          {"components", d.components},
          {"orders", sg.orders},
          {"nodes", nodes},
          {"tangents", sg.tangents}};
}

SemistableGraph semistable_from_json(const nlohmann::json& j) {
  try {
    SemistableGraph sg;
    sg.graph = graph_from_json(j.at("graph"));
    sg.orders = j.at("orders").get<std::vector<int>>();
    for (const auto& pair : j.at("nodes")) sg.nodes.push_back({point_from(pair.at(0)), point_from(pair.at(1))});
    if (j.contains("tangents")) sg.tangents = j.at("tangents").get<std::vector<int>>();
    return sg;
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed semistable document: ") + e.what());
  }
}

}  // namespace ssgh
