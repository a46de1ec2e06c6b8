#include "ssgh/permutation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ssgh {

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= 0) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  }
  return inv;
}

std::vector<std::vector<int>> cycles_of(std::span<const int> perm) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] < 0) continue;
    std::vector<int> cycle;
    int h = static_cast<int>(start);
    while (!seen[static_cast<std::size_t>(h)]) {
      seen[static_cast<std::size_t>(h)] = 1;
      cycle.push_back(h);
      h = perm[static_cast<std::size_t>(h)];
      if (h < 0) throw std::invalid_argument("cycles_of: orbit leaves the domain");
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

int permutation_sign(std::span<const int> perm) {
  std::vector<char> seen(perm.size(), 0);
  int sign = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    std::size_t h = start;
    while (!seen[h]) {
      seen[h] = 1;
      h = static_cast<std::size_t>(perm[h]);
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int relative_sign(std::span<const int> from, std::span<const int> to) {
  if (from.size() != to.size()) throw std::invalid_argument("relative_sign: size mismatch");
  std::unordered_map<int, int> position;
  for (std::size_t i = 0; i < to.size(); ++i) {
    if (!position.emplace(to[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("relative_sign: repeated value");
    }
  }
  std::vector<int> perm(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = position.find(from[i]);
    if (it == position.end()) throw std::invalid_argument("relative_sign: multiset mismatch");
    perm[i] = it->second;
  }
  if (!is_permutation(perm)) throw std::invalid_argument("relative_sign: multiset mismatch");
  return permutation_sign(perm);
}

bool is_permutation(std::span<const int> perm) {
  std::vector<char> hit(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm.size() || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

}  // namespace ssgh
