#pragma once

#include <nlohmann/json.hpp>

#include <vector>

#include "ssgh/canonical.hpp"
#include "ssgh/edge_set.hpp"
#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// A connected labeled graph with a chain Z_1 ⊋ ... ⊋ Z_m of edge subsets.
struct SequencedGraph {
  RibbonGraph graph;
  Chain chain;

  int length() const { return static_cast<int>(chain.size()); }
  // Z_i with Z_0 = all edges and Z_i = ∅ past the end.
  EdgeSet z(int i) const;
  bool operator==(const SequencedGraph&) const = default;
};

// `semistable` requires every Z_i to be semistable; otherwise the chain only
// has to be permissible (Z_i ⊊ Z_{i-1}^sst).
ValidityReport validate_sequence(const SequencedGraph& sq, bool semistable = true);

// Level of every half-edge: the largest i with its edge in Z_i.
std::vector<int> half_edge_levels(const SequencedGraph& sq);

SequencedGraph canonical_sequence(const SequencedGraph& sq);

// (Γ/Γ_{D_0}, (Z/D)_•) for a negligible sequence D_0 ⊇ D_1 ⊇ ... with
// D_i ⊆ Z_i. Throws GraphError when a containment fails.
// `origin`, when given, receives the input half-edge of every result half-edge.
SequencedGraph collapse_negligible(const SequencedGraph& sq, const std::vector<EdgeSet>& d,
                                   std::vector<int>* origin = nullptr);

// (Z_0, ..., Z_i, S ∪ Z_{i+1}, Z_{i+1}, ..., Z_m) for S inside piece i.
// Requires S ∪ Z_{i+1} semistable and S ∪ Z_{i+1} ≠ Z_i.
SequencedGraph insert_piece(const SequencedGraph& sq, const EdgeSet& s, int piece);

struct NodePair {
  Point vertex;  // vertex-node
  Point cusp;    // cusp-node (kCusp or kCircleCusp)
  bool operator==(const NodePair&) const = default;
};

// Disjoint union of the pieces. Components are those of derive(graph), in
// order of their minimal half-edge. Node pairs are listed in gluing order:
// descending order of the vertex side.
struct SemistableGraph {
  RibbonGraph graph;
  std::vector<int> orders;
  std::vector<NodePair> nodes;
  std::vector<int> tangents;  // index into the sorted vertex gluing family, per pair
};

ValidityReport validate_semistable(const SemistableGraph& sg);

SemistableGraph from_sequence(const SequencedGraph& sq);

// Reassembles the sequenced graph; the result is in canonical form.
SequencedGraph to_sequences(const SemistableGraph& sg);

nlohmann::json to_json(const SequencedGraph& sq);
SequencedGraph sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SemistableGraph& sg);
SemistableGraph semistable_from_json(const nlohmann::json& j);

}  // namespace ssgh
