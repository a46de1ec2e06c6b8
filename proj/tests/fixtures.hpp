#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ssgh/edge_set.hpp"
#include "ssgh/ribbon_graph.hpp"

namespace fixtures {

using ssgh::LabelMap;
using ssgh::Point;
using ssgh::PointKind;
using ssgh::RibbonGraph;

inline RibbonGraph from_cycles(int n, std::vector<int> s1, std::vector<std::vector<int>> cycles,
                               LabelMap labels = {}) {
  std::vector<int> s0(static_cast<std::size_t>(n), -1);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) s0[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
  }
  return RibbonGraph::from_permutations(std::move(s1), std::move(s0), std::move(labels));
}

inline Point cusp(int rep) { return {PointKind::kCusp, rep}; }
inline Point vertex(int rep) { return {PointKind::kVertex, rep}; }
inline Point circle_cusp(int rep) { return {PointKind::kCircleCusp, rep}; }

// Planar theta: faces (0 3), (2 5), (1 4).
inline RibbonGraph theta(bool labeled = true) {
  LabelMap l;
  if (labeled) l = {{1, cusp(0)}, {2, cusp(2)}, {3, cusp(1)}};
  return from_cycles(6, {1, 0, 3, 2, 5, 4}, {{0, 2, 4}, {1, 5, 3}}, l);
}

// Two vertices, three edges, one boundary cycle.
inline RibbonGraph torus(bool labeled = true) {
  LabelMap l;
  if (labeled) l = {{1, cusp(0)}};
  return from_cycles(6, {1, 0, 3, 2, 5, 4}, {{0, 2, 4}, {1, 3, 5}}, l);
}

// Planar figure-eight: loops (0 1), (2 3) at one vertex; faces (0), (2), (1 3).
inline RibbonGraph figure_eight(LabelMap l = {}) {
  return from_cycles(4, {1, 0, 3, 2}, {{0, 1, 2, 3}}, std::move(l));
}

// Single loop at a bivalent vertex: two boundary cycles.
inline RibbonGraph loop(LabelMap l = {}) { return from_cycles(2, {1, 0}, {{0, 1}}, std::move(l)); }

// Segment between two univalent vertices: one boundary cycle.
inline RibbonGraph segment(LabelMap l = {}) { return from_cycles(2, {1, 0}, {{0}, {1}}, std::move(l)); }

inline RibbonGraph circle(LabelMap l = {}) { return from_cycles(2, {1, 0}, {}, std::move(l)); }

// Two vertices with a loop each, joined by an edge (id 4).
inline RibbonGraph dumbbell(LabelMap l = {}) {
  return from_cycles(6, {1, 0, 3, 2, 5, 4}, {{0, 1, 4}, {2, 3, 5}}, std::move(l));
}

// One vertex with three loops; the loop e = (2 3) encircles the loop (0 1).
inline RibbonGraph three_petals(LabelMap l = {}) {
  return from_cycles(6, {1, 0, 3, 2, 5, 4}, {{0, 2, 4, 5, 3, 1}}, std::move(l));
}

// Unlabeled triangle with a pendant edge at each corner; the triangle edges
// are 0, 2, 4 and the pendant edges 6, 8, 10.
inline RibbonGraph triangle_with_pendants() {
  std::vector<int> s1 = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
  return from_cycles(12, s1, {{0, 6, 5}, {2, 8, 1}, {4, 10, 3}, {7}, {9}, {11}});
}

// A theta (edges 2, 4, 6, 8, 10) inside a graph whose remaining edge 0
// joins the two bivalent theta vertices A and B from outside.
inline RibbonGraph theta_with_handle(LabelMap l = {}) {
  std::vector<int> s1 = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
  return from_cycles(12, s1, {{2, 0, 9}, {1, 5, 6}, {4, 3, 10}, {7, 11, 8}}, std::move(l));
}

// The handle graph with the theta chord moved so that both of its ends lie
// on the lower arc between A and B; `upper` mirrors it onto the upper arc.
inline RibbonGraph handle_with_short_chord(bool upper = false) {
  std::vector<int> s1 = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
  if (upper) return from_cycles(12, s1, {{2, 0, 4}, {1, 9, 5}, {6, 3, 10}, {7, 11, 8}});
  return from_cycles(12, s1, {{2, 0, 4}, {1, 3, 9}, {10, 5, 6}, {8, 11, 7}});
}

// Planar loop with a pendant edge (id 2) at its vertex.
inline RibbonGraph lollipop(LabelMap l = {}) { return from_cycles(4, {1, 0, 3, 2}, {{0, 1, 2}, {3}}, std::move(l)); }

// Every boundary cycle gets a cusp label, in order of derive().
inline RibbonGraph with_cusp_labels(RibbonGraph g) {
  ssgh::DerivedStructure d = ssgh::derive(g);
  LabelMap l;
  int name = 1;
  for (const auto& c : d.boundary_cycles) l[name++] = cusp(c.front());
  g.set_labels(std::move(l));
  return g;
}

// Two thetas joined by the bridge c = 8; A = {0, 2, 4, 6} and B = {10, 12, 14, 16}.
// a1 = 0, a2 = 2 (chord), a3 = 4, a4 = 6; b3 = 10, b4 = 12, b2 = 14 (chord), b1 = 16.
// All five faces are labeled.
inline RibbonGraph two_thetas() {
  std::vector<int> s1(18);
  for (int h = 0; h < 18; ++h) s1[static_cast<std::size_t>(h)] = h ^ 1;
  return with_cusp_labels(from_cycles(18, s1, {{4, 0, 2}, {7, 3, 1}, {8, 5, 6}, {10, 9, 12}, {16, 11, 14}, {17, 15, 13}}));
}

// Conjugates a graph by a random half-edge permutation.
inline RibbonGraph shuffle(const RibbonGraph& g, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.half_edge_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return ssgh::relabel(g, perm);
}

// Random connected ribbon graph with `edges` edges: pendant edges, chords
// and loops added one at a time. Never produces circles.
inline RibbonGraph random_graph(int edges, std::mt19937& rng) {
  std::vector<int> s1 = {1, 0};
  std::vector<int> s0 = {0, 1};
  if (rng() % 2) s0 = {1, 0};  // a loop instead of a segment
  auto insert_after = [&](int after, int h) {
    s0[static_cast<std::size_t>(h)] = s0[static_cast<std::size_t>(after)];
    s0[static_cast<std::size_t>(after)] = h;
  };
  for (int e = 1; e < edges; ++e) {
    int n = static_cast<int>(s1.size());
    int a = n, b = n + 1;
    s1.push_back(b);
    s1.push_back(a);
    s0.push_back(a);
    s0.push_back(b);
    int x = static_cast<int>(rng() % static_cast<unsigned>(n));
    insert_after(x, a);
    if (rng() % 3 != 0) {
      int y = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      if (y == n) y = a;
      insert_after(y, b);
    }
  }
  return RibbonGraph::from_permutations(std::move(s1), std::move(s0));
}

// Labels every univalent vertex and a random subset of the others with
// names 1, 2, ...
inline RibbonGraph with_random_vertex_labels(const RibbonGraph& g, std::mt19937& rng, int percent = 40) {
  ssgh::DerivedStructure d = ssgh::derive(g);
  LabelMap l;
  int name = 1;
  for (const auto& v : d.vertices) {
    if (v.size() == 1 || static_cast<int>(rng() % 100) < percent) l[name++] = vertex(v.front());
  }
  RibbonGraph out = g;
  out.set_labels(std::move(l));
  return out;
}

// Random subset of the edges of g.
inline ssgh::EdgeSet random_subset(const RibbonGraph& g, std::mt19937& rng) {
  std::vector<int> ids;
  for (int e : g.edges()) {
    if (rng() % 2) ids.push_back(e);
  }
  return ssgh::EdgeSet(std::move(ids));
}

}  // namespace fixtures
