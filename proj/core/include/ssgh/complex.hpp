#pragma once

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ssgh/semistable.hpp"

namespace ssgh {

struct Generator {
  SequencedGraph sequence;  // canonical form
  std::string key;          // canonical bytes
  int degree = 0;
  bool zero_flag = false;

  int length() const { return sequence.length(); }
  std::string id() const;
};

int degree(const SequencedGraph& sq);

// Canonicalizes and fills degree and zero flag.
Generator make_generator(const SequencedGraph& sq);

// 64-bit FNV-1a of the canonical bytes, as 16 hex digits.
std::string generator_id(const std::string& key);

// Which edges d_e collapses.
enum class EdgeRule {
  kPieceNegligible,  // {e} negligible in its piece, vertex-nodes counted as marked
  kGraphNegligible,  // {e} negligible in Γ
};

// Which subgraphs S of piece i d_s collapses.
enum class SubgraphRule {
  kUnionSemistable,   // S ∪ Z_{i+1} semistable in Γ
  kSubsetSemistable,  // S itself semistable in Γ
};

struct DifferentialOptions {
  EdgeRule edge = EdgeRule::kPieceNegligible;
  SubgraphRule subgraph = SubgraphRule::kUnionSemistable;
  bool use_edges = true;
  bool use_subgraphs = true;
};

// Generator key -> coefficient. Zero-flag targets and zero coefficients are
// dropped.
using OrientedChain = std::map<std::string, long long>;

// One term of a differential before zero-flag filtering.
struct Term {
  SequencedGraph target;  // canonical
  std::string key;
  int sign = 1;
};

// Symbol of an orientation ordering: edges by id, order vectors by index.
struct OrientationSymbol {
  bool order_vector = false;
  int index = 0;
  auto operator<=>(const OrientationSymbol&) const = default;
};

// Parity of the permutation relating two orderings of the same symbols.
// Throws GraphError on a multiset mismatch.
int orientation_sign(const std::vector<OrientationSymbol>& presented,
                     const std::vector<OrientationSymbol>& canonical);

// Admissible edges of a canonical generator under `rule`.
std::vector<int> admissible_edges(const SequencedGraph& sq, EdgeRule rule);

std::vector<Term> edge_terms(const Generator& gen, EdgeRule rule);
std::vector<Term> subgraph_terms(const Generator& gen, SubgraphRule rule);

OrientedChain d_e(const Generator& gen, EdgeRule rule = EdgeRule::kPieceNegligible);
OrientedChain d_s(const Generator& gen, SubgraphRule rule = SubgraphRule::kUnionSemistable);
OrientedChain differential(const Generator& gen, const DifferentialOptions& options = {});

struct Catalog {
  int genus = 0;
  int labels = 0;
  std::map<int, std::vector<Generator>> by_degree;  // sorted by key
  std::size_t zero_generators = 0;                   // classes dropped for an odd automorphism

  int top_degree() const { return by_degree.empty() ? -1 : by_degree.rbegin()->first; }
  std::size_t dimension(int k) const;
  // (degree, position) of a generator key, if present.
  std::optional<std::pair<int, int>> find(const std::string& key) const;

  std::map<std::string, std::pair<int, int>> index;
};

// Throws GraphError for (g, n) without graphs.
Catalog build_catalog(int genus, int labels, int threads = 1);
std::vector<Generator> enumerate_generators(int genus, int labels, int degree, int threads = 1);

struct MatrixEntry {
  int row = 0;
  int col = 0;
  mpz_class value;
};

// Matrix of d: G_k -> G_{k-1}; rows index G_{k-1}, columns G_k.
struct BoundaryMatrix {
  int degree = 0;
  std::vector<std::string> rows;  // generator ids
  std::vector<std::string> cols;
  std::vector<MatrixEntry> entries;  // sorted by (row, col), nonzero
};

// One matrix per degree 1..top. Deterministic for every thread count.
std::vector<BoundaryMatrix> boundary_matrices(const Catalog& catalog, const DifferentialOptions& options = {},
                                              int threads = 1);

nlohmann::json to_json(const BoundaryMatrix& m);
BoundaryMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Generator& gen);
nlohmann::json catalog_to_json(const Catalog& catalog, std::optional<int> degree = std::nullopt);

}  // namespace ssgh
