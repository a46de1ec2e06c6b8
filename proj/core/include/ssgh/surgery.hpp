#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssgh/edge_set.hpp"
#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// Result of an operation that renumbers half-edges.
struct SurgeryResult {
  RibbonGraph graph;
  std::vector<int> origin;  // new half-edge -> half-edge of the input
  std::vector<int> to_new;  // input half-edge -> new half-edge, -1 if gone
};

// Γ_Z: sigma1 restricted, sigma0(h) the first sigma0^k(h) inside H_Z.
// Vertex labels of touched vertices and cusp labels of faces lying inside H_Z
// are carried over.
SurgeryResult induce_subgraph(const RibbonGraph& g, const EdgeSet& z);

// Γ/Γ_Z: complement edges, sigma_inf(h) the first sigma_inf^k(h) outside H_Z.
// Labels on untouched vertices and on faces meeting the complement survive.
SurgeryResult quotient_graph(const RibbonGraph& g, const EdgeSet& z);

enum class SubsetKind { kNegligible, kSemistable, kStable, kNone };
enum class ComponentShape { kTree, kHomotopyCircle, kTopologicalCircle, kOther };

struct ComponentWitness {
  EdgeSet edges;
  ComponentShape shape = ComponentShape::kOther;
  int labeled_vertices = 0;
  bool contains_boundary = false;    // some face of Γ lies inside the component
  bool unlabeled_univalent = false;  // an unlabeled vertex of Z-valence one
  bool negligible = false;
};

struct SubsetClass {
  SubsetKind kind = SubsetKind::kNone;
  bool proper = true;
  std::vector<ComponentWitness> components;

  bool negligible() const { return kind == SubsetKind::kNegligible; }
  bool semistable() const { return kind == SubsetKind::kSemistable || kind == SubsetKind::kStable; }
  bool stable() const { return kind == SubsetKind::kStable; }
};

// Node data of a semistable graph: vertex-nodes count as marked vertices, and
// a homotopy circle bounding a cusp-node is never negligible.
struct NodeContext {
  std::vector<int> vertex_node_reps;
  std::vector<int> cusp_node_reps;
};

SubsetClass classify_subset(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes = nullptr);
EdgeSet max_semistable(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes = nullptr);
EdgeSet max_stable(const RibbonGraph& g, const EdgeSet& z, const NodeContext* nodes = nullptr);

// Deletes unlabeled bivalent vertices; an unlabeled loop on a bivalent vertex
// becomes a semistable circle. Merged edges keep their outer half-edges.
SurgeryResult reduce(const RibbonGraph& g);

// Γ̂_Z = reduce(Γ_Z).
SurgeryResult reduction(const RibbonGraph& g, const EdgeSet& z);

struct ExceptionalPair {
  Point vertex;  // exceptional vertex of Γ/Γ_Z (numbering of the collapse result)
  Point cycle;   // exceptional boundary cycle on the Γ̂_{Z^sst} side
};

struct CollapseResult {
  RibbonGraph graph;                  // Γ/Γ_Z ⊔ Γ̂_{Z^sst}
  std::vector<int> origin;            // new half-edge -> input half-edge
  std::vector<char> in_new_piece;     // per new half-edge: lies in Γ̂_{Z^sst}
  EdgeSet semistable_part;            // Z^sst in input numbering
  std::vector<ExceptionalPair> pairs;
};

CollapseResult edge_collapse(const RibbonGraph& g, const EdgeSet& z);

struct BlowUpResult {
  RibbonGraph graph;  // input half-edges keep their indices
  int cycle_rep = -1; // a half-edge of the new injective boundary cycle
};

BlowUpResult blow_up(const RibbonGraph& g, int vertex_rep);

// A boundary cycle is injective when it meets each vertex and each edge at
// most once.
bool is_injective_cycle(const RibbonGraph& g, const DerivedStructure& d, int cycle);

}  // namespace ssgh
