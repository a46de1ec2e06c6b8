#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <vector>

#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// A set of edges of a host graph, stored as sorted edge ids (minimal
// half-edge of each edge).
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<int> ids) : ids_(ids) { normalize(); }
  explicit EdgeSet(std::vector<int> ids) : ids_(std::move(ids)) { normalize(); }

  static EdgeSet all(const RibbonGraph& g) { return EdgeSet(g.edges()); }

  bool contains(int edge) const { return std::binary_search(ids_.begin(), ids_.end(), edge); }
  bool empty() const { return ids_.empty(); }
  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool subset_of(const EdgeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }
  bool disjoint_from(const EdgeSet& other) const {
    return intersect(other).empty();
  }
  EdgeSet unite(const EdgeSet& other) const {
    std::vector<int> out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
  }
  EdgeSet minus(const EdgeSet& other) const {
    std::vector<int> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
  }
  EdgeSet intersect(const EdgeSet& other) const {
    std::vector<int> out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
  }

  // Membership mask over half-edges of the host graph.
  std::vector<char> half_edge_mask(const RibbonGraph& g) const {
    std::vector<char> mask(static_cast<std::size_t>(g.half_edge_count()), 0);
    for (int e : ids_) {
      mask[static_cast<std::size_t>(e)] = 1;
      mask[static_cast<std::size_t>(g.sigma1(e))] = 1;
    }
    return mask;
  }

  auto operator<=>(const EdgeSet&) const = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<int> ids_;
};

// Maps edges of a host graph through a half-edge map (old -> new, -1 when
// dropped) into edge ids of the target graph. An edge survives if either of
// its half-edges does.
inline EdgeSet map_edges(const RibbonGraph& host, const RibbonGraph& target, const EdgeSet& z,
                         const std::vector<int>& to_new) {
  std::vector<int> out;
  for (int e : z) {
    int a = to_new[static_cast<std::size_t>(e)];
    if (a < 0) a = to_new[static_cast<std::size_t>(host.sigma1(e))];
    if (a >= 0) out.push_back(target.edge_of(a));
  }
  return EdgeSet(std::move(out));
}

}  // namespace ssgh
