#include "ssgh/gluing.hpp"

#include <algorithm>
#include <set>

#include "ssgh/canonical.hpp"
#include "ssgh/surgery.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

struct Slot {
  bool corner = false;
  int half_edge = -1;  // corner: the half-edge the run follows; side: the cycle half-edge
};

// A distribution of unit counts over the slots: corners hold one count,
// sides a list of positive counts (one per new point).
struct Distribution {
  std::vector<std::vector<int>> parts;
};

void distribute(const std::vector<Slot>& slots, std::size_t pos, int remaining, bool coincident,
                Distribution& cur, std::vector<Distribution>& out) {
  if (pos == slots.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  if (slots[pos].corner) {
    int max = coincident ? remaining : std::min(1, remaining);
    for (int c = 0; c <= max; ++c) {
      cur.parts[pos] = c == 0 ? std::vector<int>{} : std::vector<int>{c};
      distribute(slots, pos + 1, remaining - c, coincident, cur, out);
    }
    cur.parts[pos].clear();
    return;
  }
  // Side slot: every composition of some t <= remaining.
  std::vector<int>& parts = cur.parts[pos];
  parts.clear();
  distribute(slots, pos + 1, remaining, coincident, cur, out);
  // Iterative extension via an explicit recursion on the part list.
  struct Rec {
    static void go(const std::vector<Slot>& slots, std::size_t pos, int remaining, bool coincident,
                   Distribution& cur, std::vector<Distribution>& out) {
      int max = coincident ? remaining : std::min(1, remaining);
      for (int c = 1; c <= max; ++c) {
        cur.parts[pos].push_back(c);
        distribute(slots, pos + 1, remaining - c, coincident, cur, out);
        go(slots, pos, remaining - c, coincident, cur, out);
        cur.parts[pos].pop_back();
      }
    }
  };
  Rec::go(slots, pos, remaining, coincident, cur, out);
}

// All interleavings of two point sequences along one edge, allowing a point
// of each side to share a location.
void merge_sides(const std::vector<SidePoint>& a, const std::vector<SidePoint>& b, std::size_t i,
                 std::size_t j, std::vector<SidePoint>& cur, std::vector<std::vector<SidePoint>>& out) {
  if (i == a.size() && j == b.size()) {
    out.push_back(cur);
    return;
  }
  if (i < a.size()) {
    cur.push_back(a[i]);
    merge_sides(a, b, i + 1, j, cur, out);
    cur.pop_back();
  }
  if (j < b.size()) {
    cur.push_back(b[j]);
    merge_sides(a, b, i, j + 1, cur, out);
    cur.pop_back();
  }
  if (i < a.size() && j < b.size()) {
    SidePoint both;
    both.run_u = a[i].run_u;
    both.run_w = b[j].run_w;
    cur.push_back(both);
    merge_sides(a, b, i + 1, j + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<int> concat_units(const std::vector<std::vector<int>>& units, int first, int count) {
  std::vector<int> run;
  const int k = static_cast<int>(units.size());
  for (int t = 0; t < count; ++t) {
    const auto& u = units[idx((first + t) % k)];
    run.insert(run.end(), u.begin(), u.end());
  }
  return run;
}

std::vector<int> cycle_through(const DerivedStructure& d, const RibbonGraph& g, const Point& p) {
  auto c = locate(g, d, p);
  if (!c || p.kind == PointKind::kVertex) throw GraphError("gluing: point is not a boundary cycle");
  // Start the traversal at the given representative.
  std::vector<int> cyc;
  int h = p.rep;
  do {
    cyc.push_back(h);
    h = d.sigma_inf[idx(h)];
  } while (h != p.rep);
  return cyc;
}

}  // namespace

std::vector<GluingPlan> enumerate_gluing_plans(const RibbonGraph& g,
                                               const std::vector<std::vector<int>>& units,
                                               const Point& target, bool coincident) {
  DerivedStructure d = derive(g);
  std::vector<int> cyc = cycle_through(d, g, target);
  const int k = static_cast<int>(units.size());
  if (k == 0) throw GraphError("gluing: nothing to attach");
  const bool circle = g.on_circle(cyc.front());
  std::vector<Slot> slots;
  if (circle) {
    slots.push_back({false, cyc.front()});
  } else {
    const int len = static_cast<int>(cyc.size());
    for (int step = 0; step < len; ++step) {
      int i = (len - step) % len;
      slots.push_back({true, cyc[idx(i)]});
      slots.push_back({false, cyc[idx((i - 1 + len) % len)]});
    }
  }
  std::vector<Distribution> dists;
  Distribution cur;
  cur.parts.resize(slots.size());
  distribute(slots, 0, k, coincident, cur, dists);

  std::vector<GluingPlan> plans;
  for (const auto& dist : dists) {
    for (int s = 0; s < k; ++s) {
      GluingPlan base;
      base.units = units;
      int next = s;
      // Points per side, in the forward order of the glued circle.
      std::map<int, std::vector<SidePoint>> side_points;
      for (std::size_t t = 0; t < slots.size(); ++t) {
        for (int count : dist.parts[t]) {
          std::vector<int> run = concat_units(units, next, count);
          next += count;
          if (slots[t].corner) {
            base.corner_runs[slots[t].half_edge] = std::move(run);
          } else {
            SidePoint p;
            p.run_u = std::move(run);
            side_points[slots[t].half_edge].push_back(std::move(p));
          }
        }
      }
      if (circle) {
        base.circle_half_edge = cyc.front();
        base.circle_points = side_points[cyc.front()];
        plans.push_back(std::move(base));
        continue;
      }
      // Per edge, bring both sides into P-to-Q order and interleave.
      std::map<int, std::pair<std::vector<SidePoint>, std::vector<SidePoint>>> per_edge;
      for (auto& [half, pts] : side_points) {
        int e = g.edge_of(half);
        if (half == e) {
          std::reverse(pts.begin(), pts.end());
          per_edge[e].first = pts;
        } else {
          for (auto& p : pts) std::swap(p.run_u, p.run_w);
          per_edge[e].second = pts;
        }
      }
      std::vector<GluingPlan> partial = {base};
      for (const auto& [e, sides] : per_edge) {
        std::vector<std::vector<SidePoint>> merges;
        std::vector<SidePoint> scratch;
        merge_sides(sides.first, sides.second, 0, 0, scratch, merges);
        std::vector<GluingPlan> grown;
        for (const auto& plan : partial) {
          for (const auto& m : merges) {
            GluingPlan p = plan;
            p.edge_points[e] = m;
            grown.push_back(std::move(p));
          }
        }
        partial = std::move(grown);
      }
      for (auto& p : partial) plans.push_back(std::move(p));
    }
  }
  return plans;
}

GluingOutcome apply_gluing(const RibbonGraph& g, const GluingPlan& plan, const std::vector<int>& origin,
                           const std::vector<int>& tags) {
  const int n = g.half_edge_count();
  std::vector<int> s1 = g.sigma1_perm();
  std::vector<int> s0 = g.sigma0_perm();
  std::vector<int> org(idx(n)), tag(idx(n), 0);
  for (int h = 0; h < n; ++h) {
    org[idx(h)] = origin.empty() ? h : origin[idx(h)];
    if (!tags.empty()) tag[idx(h)] = tags[idx(h)];
  }
  auto fresh = [&](int origin_value, int tag_value) {
    s1.push_back(-1);
    s0.push_back(-1);
    org.push_back(origin_value);
    tag.push_back(tag_value);
    return static_cast<int>(s1.size()) - 1;
  };
  auto link_cycle = [&](const std::vector<int>& cyc) {
    for (std::size_t i = 0; i < cyc.size(); ++i) s0[idx(cyc[i])] = cyc[(i + 1) % cyc.size()];
  };

  for (const auto& [after, run] : plan.corner_runs) {
    if (run.empty()) continue;
    int old = s0[idx(after)];
    s0[idx(after)] = run.front();
    for (std::size_t i = 0; i + 1 < run.size(); ++i) s0[idx(run[i])] = run[i + 1];
    s0[idx(run.back())] = old;
  }
  for (const auto& [e, pts] : plan.edge_points) {
    if (pts.empty()) continue;
    const int u = e;
    const int w = g.sigma1(u);
    int prev = u;
    for (const auto& pt : pts) {
      int p = fresh(pt.origin_p, tag[idx(u)]);
      int q = fresh(pt.origin_q, tag[idx(u)]);
      s1[idx(prev)] = p;
      s1[idx(p)] = prev;
      std::vector<int> cyc = {p};
      cyc.insert(cyc.end(), pt.run_w.begin(), pt.run_w.end());
      cyc.push_back(q);
      cyc.insert(cyc.end(), pt.run_u.begin(), pt.run_u.end());
      link_cycle(cyc);
      prev = q;
    }
    s1[idx(prev)] = w;
    s1[idx(w)] = prev;
  }
  if (plan.circle_half_edge >= 0) {
    const auto& pts = plan.circle_points;
    const int k = static_cast<int>(pts.size());
    if (k == 0) throw GraphError("gluing: circle without points");
    const int c = plan.circle_half_edge;
    const int c1 = g.sigma1(c);
    // c stays on the side receiving the runs.
    std::vector<int> f(idx(k)), b(idx(k));
    for (int j = 0; j < k; ++j) {
      f[idx(j)] = j == k - 1 ? c1 : fresh(pts[idx(j)].origin_p, tag[idx(c)]);
      b[idx(j)] = j == 0 ? c : fresh(pts[idx(j)].origin_q, tag[idx(c)]);
    }
    if (pts.back().origin_p >= 0) org[idx(c1)] = pts.back().origin_p;
    if (pts.front().origin_q >= 0) org[idx(c)] = pts.front().origin_q;
    for (int j = 0; j < k; ++j) {
      int fj = f[idx(j)];
      int bn = b[idx((j + 1) % k)];
      s1[idx(fj)] = bn;
      s1[idx(bn)] = fj;
      std::vector<int> cyc = {fj, b[idx(j)]};
      cyc.insert(cyc.end(), pts[idx(j)].run_u.begin(), pts[idx(j)].run_u.end());
      link_cycle(cyc);
    }
  }

  const int total = static_cast<int>(s1.size());
  std::vector<char> alive(idx(total), 1);
  for (int h : plan.removed_half_edges) alive[idx(h)] = 0;
  std::vector<int> to_new(idx(total), -1);
  GluingOutcome out;
  std::vector<int> n1, n0;
  for (int h = 0; h < total; ++h) {
    if (!alive[idx(h)]) continue;
    to_new[idx(h)] = static_cast<int>(out.origin.size());
    out.origin.push_back(org[idx(h)]);
    out.tags.push_back(tag[idx(h)]);
  }
  for (int h = 0; h < total; ++h) {
    if (!alive[idx(h)]) continue;
    int t1 = to_new[idx(s1[idx(h)])];
    int t0 = s0[idx(h)] < 0 ? -1 : to_new[idx(s0[idx(h)])];
    if (t1 < 0 || (s0[idx(h)] >= 0 && t0 < 0)) throw GraphError("gluing: dangling half-edge");
    n1.push_back(t1);
    n0.push_back(t0);
  }
  LabelMap labels;
  for (const auto& [name, p] : g.labels()) {
    if (plan.unit_labels.count(name)) continue;
    int rep = to_new[idx(p.rep)];
    if (rep < 0) throw GraphError("gluing: label " + std::to_string(name) + " lost its point");
    PointKind kind = p.kind;
    if (kind == PointKind::kCircleCusp && n0[idx(rep)] >= 0) kind = PointKind::kCusp;
    labels[name] = {kind, rep};
  }
  for (const auto& [name, unit] : plan.unit_labels) {
    const auto& u = plan.units[idx(unit)];
    if (u.empty()) throw GraphError("gluing: labeled vertex without half-edges to carry the label");
    labels[name] = {PointKind::kVertex, to_new[idx(u.front())]};
  }
  out.graph = RibbonGraph::from_permutations(std::move(n1), std::move(n0), std::move(labels));
  return out;
}

std::string tagged_key(const RibbonGraph& g, const std::vector<int>& tags) {
  if (tags.empty()) return canonical_bytes(g);
  int top = 0;
  for (int t : tags) top = std::max(top, t);
  Chain chain;
  for (int j = 1; j <= top; ++j) {
    std::vector<int> ids;
    for (int e : g.edges()) {
      if (tags[idx(e)] >= j) ids.push_back(e);
    }
    chain.emplace_back(std::move(ids));
  }
  return canonical_bytes(g, chain);
}

namespace {

std::vector<GluedClass> dedupe(const RibbonGraph& g, const std::vector<GluingPlan>& plans,
                               const std::vector<int>& tags) {
  std::map<std::string, GluedClass> classes;
  for (const auto& plan : plans) {
    GluingOutcome o = apply_gluing(g, plan, {}, tags);
    std::string key = tagged_key(o.graph, tags.empty() ? std::vector<int>{} : o.tags);
    if (classes.count(key)) continue;
    classes.emplace(key, GluedClass{key, std::move(o.graph), std::move(o.tags)});
  }
  std::vector<GluedClass> out;
  out.reserve(classes.size());
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

}  // namespace

std::vector<GluedClass> gluing_family(const RibbonGraph& g, const Point& cycle1, const Point& cycle2,
                                      bool coincident) {
  DerivedStructure d = derive(g);
  if (cycle1.kind != PointKind::kCusp) throw GraphError("gluing: first cycle must be a vertex boundary cycle");
  auto c1 = locate(g, d, cycle1);
  auto c2 = locate(g, d, cycle2);
  if (!c1 || !c2 || cycle2.kind == PointKind::kVertex) throw GraphError("gluing: bad boundary cycle");
  if (*c1 == *c2) throw GraphError("gluing: cycles share a half-edge");
  if (!is_injective_cycle(g, d, *c1)) throw GraphError("gluing: first cycle is not injective");
  const auto& first = d.boundary_cycles[idx(*c1)];
  const auto& second = d.boundary_cycles[idx(*c2)];
  std::set<int> v1, e1;
  for (int h : first) {
    v1.insert(d.vertex_of[idx(h)]);
    e1.insert(g.edge_of(h));
  }
  for (int h : second) {
    if (e1.count(g.edge_of(h)) || (!g.on_circle(h) && v1.count(d.vertex_of[idx(h)]))) {
      throw GraphError("gluing: cycles are not disjoint");
    }
  }
  std::vector<int> cyc = cycle_through(d, g, cycle1);
  const int k = static_cast<int>(cyc.size());
  std::vector<std::vector<int>> units;
  GluingPlan proto;
  std::map<int, int> unit_of_vertex;
  for (int j = 0; j < k; ++j) {
    int cj = cyc[idx(j)];
    int incoming = g.sigma1(cyc[idx((j - 1 + k) % k)]);
    std::vector<int> run;
    for (int h = g.sigma0(incoming); h != cj; h = g.sigma0(h)) run.push_back(h);
    units.push_back(std::move(run));
    unit_of_vertex[d.vertex_of[idx(cj)]] = j;
    proto.removed_half_edges.push_back(cj);
    proto.removed_half_edges.push_back(g.sigma1(cj));
  }
  // Labels: drop the two consumed cusps, move vertex labels of the first
  // cycle with their runs, and re-seat cusp labels whose rep disappears.
  RibbonGraph base = g;
  LabelMap labels;
  std::set<int> removed(proto.removed_half_edges.begin(), proto.removed_half_edges.end());
  for (const auto& [name, p] : g.labels()) {
    auto where = locate(g, d, p);
    if (!where) continue;
    if (p.kind == PointKind::kVertex) {
      auto it = unit_of_vertex.find(*where);
      if (it != unit_of_vertex.end()) proto.unit_labels[name] = it->second;
      labels[name] = p;
      continue;
    }
    if (*where == *c1 || *where == *c2) continue;
    const auto& face = d.boundary_cycles[idx(*where)];
    auto alive = std::find_if(face.begin(), face.end(), [&](int h) { return !removed.count(h); });
    if (alive == face.end()) throw GraphError("gluing: a labeled cusp consists of glued edges only");
    labels[name] = {p.kind, *alive};
  }
  base.set_labels(labels);
  auto plans = enumerate_gluing_plans(base, units, cycle2, coincident);
  for (auto& plan : plans) {
    plan.removed_half_edges = proto.removed_half_edges;
    plan.unit_labels = proto.unit_labels;
  }
  return dedupe(base, plans, {});
}

std::vector<GluingPlan> vertex_gluing_plans(const RibbonGraph& g, int vertex_rep, const Point& cycle) {
  DerivedStructure d = derive(g);
  if (vertex_rep < 0 || vertex_rep >= g.half_edge_count() || g.on_circle(vertex_rep)) {
    throw GraphError("gluing: not a vertex");
  }
  auto c = locate(g, d, cycle);
  if (!c || cycle.kind == PointKind::kVertex) throw GraphError("gluing: bad boundary cycle");
  int v = d.vertex_of[idx(vertex_rep)];
  for (int h : d.boundary_cycles[idx(*c)]) {
    if (!g.on_circle(h) && d.vertex_of[idx(h)] == v) throw GraphError("gluing: vertex lies on the cycle");
  }
  std::vector<std::vector<int>> units;
  for (int h = vertex_rep;;) {
    units.push_back({h});
    h = g.sigma0(h);
    if (h == vertex_rep) break;
  }
  return enumerate_gluing_plans(g, units, cycle, true);
}

std::vector<GluedClass> vertex_gluing_family(const RibbonGraph& g, int vertex_rep, const Point& cycle,
                                             const std::vector<int>& tags) {
  return dedupe(g, vertex_gluing_plans(g, vertex_rep, cycle), tags);
}

}  // namespace ssgh
