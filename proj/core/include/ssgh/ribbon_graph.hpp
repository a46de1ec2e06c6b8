#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ssgh {

enum class PointKind { kVertex, kCusp, kCircleCusp };

// A labeled point. `rep` is any half-edge of the vertex or boundary cycle;
// for a circle cusp it is the circle half-edge itself.
struct Point {
  PointKind kind = PointKind::kVertex;
  int rep = -1;
  auto operator<=>(const Point&) const = default;
};

// Label name -> point. Positive names are the external labels; negative
// names are reserved for internal node markers.
using LabelMap = std::map<int, Point>;

class RibbonGraph {
 public:
  RibbonGraph() = default;

  // Raw constructor; keeps the cycle presentation as given. Invariants are
  // not checked here, see validate().
  RibbonGraph(int half_edge_count, std::vector<int> sigma1,
              std::vector<std::vector<int>> sigma0_cycles,
              std::vector<int> circle_half_edges, LabelMap labels);

  // sigma0[h] == -1 marks h as a circle half-edge.
  static RibbonGraph from_permutations(std::vector<int> sigma1, std::vector<int> sigma0,
                                       LabelMap labels = {});

  int half_edge_count() const { return n_; }
  int sigma1(int h) const { return sigma1_[static_cast<std::size_t>(h)]; }
  int sigma0(int h) const { return sigma0_[static_cast<std::size_t>(h)]; }
  bool on_circle(int h) const { return sigma0_[static_cast<std::size_t>(h)] < 0; }
  int edge_of(int h) const { return std::min(h, sigma1(h)); }

  const std::vector<int>& sigma1_perm() const { return sigma1_; }
  const std::vector<int>& sigma0_perm() const { return sigma0_; }
  const std::vector<std::vector<int>>& sigma0_cycles() const { return cycles_; }
  const std::vector<int>& circle_half_edges() const { return circle_; }
  const LabelMap& labels() const { return labels_; }

  void set_labels(LabelMap labels) { labels_ = std::move(labels); }

  // Edge ids (minimal half-edge of each sigma1-orbit), ascending.
  std::vector<int> edges() const;
  int edge_count() const { return n_ / 2; }

  // sigma_inf(h) = sigma0^{-1}(sigma1(h)); identity on circle half-edges.
  std::vector<int> sigma_inf() const;

  bool operator==(const RibbonGraph& other) const;

 private:
  int n_ = 0;
  std::vector<int> sigma1_;
  std::vector<int> sigma0_;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> circle_;
  LabelMap labels_;
};

struct DerivedStructure {
  std::vector<std::vector<int>> vertices;  // sigma0 cycles, rotated to min, sorted
  std::vector<int> vertex_of;              // -1 on circle half-edges
  std::vector<int> edges;                  // minimal half-edge per edge
  std::vector<int> sigma_inf;
  std::vector<std::vector<int>> boundary_cycles;  // sigma_inf orbits and circle singletons
  std::vector<int> cycle_of;
  std::vector<std::vector<int>> components;  // half-edges per component, sorted
  std::vector<int> component_of;

  int cusp_count() const { return static_cast<int>(boundary_cycles.size()); }
  int valence(int vertex) const { return static_cast<int>(vertices[static_cast<std::size_t>(vertex)].size()); }
  bool component_is_circle(const RibbonGraph& g, int component) const;
};

struct Violation {
  std::string name;
  std::string detail;
};
using ValidityReport = std::vector<Violation>;

struct TopologicalType {
  int genus = 0;
  int label_count = 0;
  auto operator<=>(const TopologicalType&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `standalone` additionally requires positive label names and that every
// distinguished point carries a label.
ValidityReport validate(const RibbonGraph& g, bool standalone = true);
bool is_valid(const RibbonGraph& g, bool standalone = true);

// Throws GraphError when the permutation data is structurally broken.
DerivedStructure derive(const RibbonGraph& g);

int component_genus(const RibbonGraph& g, const DerivedStructure& d, int component);
int component_genus(const RibbonGraph& g, int component);
int labeled_euler_characteristic(const RibbonGraph& g, const DerivedStructure& d, int component);
int labeled_euler_characteristic(const RibbonGraph& g, int component);
TopologicalType topological_type(const RibbonGraph& g);

// Index of the vertex (kVertex) or boundary cycle (kCusp, kCircleCusp) named
// by a point; nullopt if the point does not name one.
std::optional<int> locate(const RibbonGraph& g, const DerivedStructure& d, const Point& p);

// Normalizes a point's representative to the minimal half-edge of its orbit.
Point normalize_point(const RibbonGraph& g, const DerivedStructure& d, const Point& p);

// Which label (if any) sits on each vertex / boundary cycle.
std::vector<std::optional<int>> vertex_labels(const RibbonGraph& g, const DerivedStructure& d);
std::vector<std::optional<int>> cycle_labels(const RibbonGraph& g, const DerivedStructure& d);

// Disjoint union; half-edges of b are shifted by a.half_edge_count(). Labels
// must not collide.
RibbonGraph disjoint_union(const RibbonGraph& a, const RibbonGraph& b);

// Renumbers half-edges: new index of h is `to_new[h]`.
RibbonGraph relabel(const RibbonGraph& g, const std::vector<int>& to_new);

const char* to_string(PointKind kind);
PointKind point_kind_from_string(const std::string& s);

nlohmann::json to_json(const RibbonGraph& g);
// Throws GraphError on documents with missing or mistyped fields. Structural
// invariants are left to validate().
RibbonGraph graph_from_json(const nlohmann::json& j);

}  // namespace ssgh
