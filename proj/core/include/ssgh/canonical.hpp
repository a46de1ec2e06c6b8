#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssgh/edge_set.hpp"
#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// Edge-subset chain attached to a graph. For sequenced graphs this holds
// Z_1, ..., Z_m; Z_0 = E(Γ) is implicit.
using Chain = std::vector<EdgeSet>;

struct CanonicalForm {
  std::string bytes;            // serialized canonical document
  std::vector<int> relabeling;  // input half-edge -> canonical half-edge
  std::vector<int> edge_order;  // canonical edge ids, ascending
  RibbonGraph graph;
  Chain chain;
};

CanonicalForm canonicalize(const RibbonGraph& g, const Chain& chain = {});
std::string canonical_bytes(const RibbonGraph& g, const Chain& chain = {});

struct AutomorphismInfo {
  std::uint64_t order = 1;
  std::vector<std::vector<int>> generators;  // half-edge permutations
  bool edge_sign_reversing = false;
};

AutomorphismInfo automorphisms(const RibbonGraph& g, const Chain& chain = {});

struct Isomorphism {
  std::vector<int> map;  // half-edge of the source -> half-edge of the target
  int sign = 1;          // parity of the induced map between ascending edge orders
};

std::optional<Isomorphism> find_isomorphism(const RibbonGraph& a, const RibbonGraph& b,
                                            const Chain& chain_a = {}, const Chain& chain_b = {});

// Sign of the bijection E(a) -> E(b) induced by a half-edge map, with both
// edge sets in ascending id order.
int edge_map_sign(const RibbonGraph& a, const RibbonGraph& b, const std::vector<int>& map);

nlohmann::json chain_to_json(const Chain& chain);
Chain chain_from_json(const nlohmann::json& j);

}  // namespace ssgh
