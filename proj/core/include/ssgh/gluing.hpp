#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// One new vertex placed in the interior of an edge of the target cycle.
// For an edge with id u (so u sits at the start vertex P and sigma1(u) at the
// end vertex Q), `run_u` lands on the side of u and `run_w` on the side of
// sigma1(u). The new vertex has cyclic order (p, run_w..., q, run_u...) with p
// pointing towards P and q towards Q.
//
// For a semistable circle the points are listed in the forward direction of
// the glued circle and only `run_u` is used; p points to the next point and q
// to the previous one.
struct SidePoint {
  std::vector<int> run_u;
  std::vector<int> run_w;
  int origin_p = -1;  // bookkeeping value reported for the new half-edge p
  int origin_q = -1;
  auto operator<=>(const SidePoint&) const = default;
};

// A concrete way of re-attaching half-edges along a boundary cycle.
struct GluingPlan {
  std::map<int, std::vector<int>> corner_runs;        // run inserted right after this half-edge
  std::map<int, std::vector<SidePoint>> edge_points;  // edge id -> points ordered from P to Q
  int circle_half_edge = -1;
  std::vector<SidePoint> circle_points;
  std::vector<int> removed_half_edges;
  // Vertex labels of dissolved first-cycle vertices: label -> unit index.
  std::map<int, int> unit_labels;
  std::vector<std::vector<int>> units;
};

struct GluingOutcome {
  RibbonGraph graph;
  std::vector<int> origin;  // per half-edge bookkeeping value (input origin, or SidePoint data)
  std::vector<int> tags;    // per half-edge tag; new half-edges copy the tag of their edge
};

// Applies a plan. `origin` and `tags` are per half-edge side data of `g`
// (either may be empty). Removed half-edges are compacted away.
GluingOutcome apply_gluing(const RibbonGraph& g, const GluingPlan& plan,
                           const std::vector<int>& origin = {}, const std::vector<int>& tags = {});

// All plans attaching `units` (runs listed in the forward order of the glued
// circle) along the boundary cycle through `target`. With `coincident` several
// consecutive units may share one point.
std::vector<GluingPlan> enumerate_gluing_plans(const RibbonGraph& g,
                                               const std::vector<std::vector<int>>& units,
                                               const Point& target, bool coincident);

struct GluedClass {
  std::string key;  // canonical bytes (labels and tag levels included)
  RibbonGraph graph;
  std::vector<int> tags;
};

// Gluing the injective boundary cycle through `cycle1` onto the boundary cycle
// through `cycle2` (both given as cusp points). Returns isomorphism classes
// sorted by canonical bytes.
std::vector<GluedClass> gluing_family(const RibbonGraph& g, const Point& cycle1, const Point& cycle2,
                                      bool coincident = false);

// Vertex version: the blow-up of the vertex through `vertex_rep` glued onto
// the cycle. Consecutive half-edges of the vertex may land on a common point.
// `tags` is optional per half-edge side data carried into the result.
std::vector<GluedClass> vertex_gluing_family(const RibbonGraph& g, int vertex_rep, const Point& cycle,
                                             const std::vector<int>& tags = {});

// Plans for vertex_gluing_family, before canonical deduplication.
std::vector<GluingPlan> vertex_gluing_plans(const RibbonGraph& g, int vertex_rep, const Point& cycle);

// Chain view of per-half-edge tag levels: Z_j = edges with tag >= j.
std::string tagged_key(const RibbonGraph& g, const std::vector<int>& tags);

}  // namespace ssgh
