#pragma once

#include <span>
#include <vector>

namespace ssgh {

// Permutations act on dense indices 0..n-1. Entries equal to -1 mark points
// outside the domain (used for half-edges on semistable circles).
std::vector<int> inverse_permutation(std::span<const int> perm);

// Orbits of a partial permutation, each rotated to start at its minimum and
// sorted by that minimum. Points mapped to -1 are skipped.
std::vector<std::vector<int>> cycles_of(std::span<const int> perm);

// +1 for even, -1 for odd. `perm` must be a full permutation.
int permutation_sign(std::span<const int> perm);

// Sign of the permutation carrying sequence `from` onto `to`; both must list
// the same distinct values.
int relative_sign(std::span<const int> from, std::span<const int> to);

bool is_permutation(std::span<const int> perm);

}  // namespace ssgh
