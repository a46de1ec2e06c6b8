#pragma once

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ssgh/complex.hpp"

namespace ssgh {

// Invariant factors d_1 | d_2 | ... of an integer matrix, all positive.
std::vector<mpz_class> smith_normal_form(const BoundaryMatrix& m);
std::vector<mpz_class> smith_normal_form(const std::vector<std::vector<mpz_class>>& dense);

// Rank over the rationals.
std::size_t rational_rank(const BoundaryMatrix& m);

// Dense product a * b. Throws GraphError on a shape mismatch.
std::vector<std::vector<mpz_class>> multiply(const std::vector<std::vector<mpz_class>>& a,
                                             const std::vector<std::vector<mpz_class>>& b);

struct DSquaredReport {
  bool ok = true;
  // First nonzero entry of d_{k-1} d_k, when not ok.
  int degree = 0;
  int row = 0;
  int col = 0;
  mpz_class value;
  std::string row_generator;  // in G_{k-2}
  std::string col_generator;  // in G_k
};

// Checks every consecutive product. Throws GraphError when the row catalog of
// d_k differs from the column catalog of d_{k-1}.
DSquaredReport verify_d_squared(const std::vector<BoundaryMatrix>& matrices);

struct DegreeHomology {
  int k = 0;
  std::size_t dim = 0;
  std::size_t rank = 0;  // rank of d_k : G_k -> G_{k-1}
  long long betti = 0;
  std::vector<mpz_class> torsion;
};

struct HomologyProfile {
  int genus = 0;
  int labels = 0;
  std::vector<DegreeHomology> degrees;  // k = 0..top

  long long euler_from_cells() const;
  long long euler_from_betti() const;
};

// `dims[k]` is dim G_k; matrices as from boundary_matrices.
HomologyProfile homology_profile(int genus, int labels, const std::vector<std::size_t>& dims,
                                 const std::vector<BoundaryMatrix>& matrices, int threads = 1);
HomologyProfile homology_profile(const Catalog& catalog, const std::vector<BoundaryMatrix>& matrices,
                                 int threads = 1);

nlohmann::json to_json(const HomologyProfile& p);
nlohmann::json to_json(const DSquaredReport& r);

}  // namespace ssgh
