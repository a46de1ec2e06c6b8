#include <doctest.h>

#include <random>

#include "ssgh/complex.hpp"
#include "ssgh/homology.hpp"

using namespace ssgh;

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

BoundaryMatrix sparse(const Dense& a, int degree = 1) {
  BoundaryMatrix m;
  m.degree = degree;
  for (std::size_t r = 0; r < a.size(); ++r) m.rows.push_back("r" + std::to_string(r));
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols; ++c) m.cols.push_back("c" + std::to_string(c));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (a[r][c] != 0) m.entries.push_back({static_cast<int>(r), static_cast<int>(c), a[r][c]});
    }
  }
  return m;
}

std::vector<mpz_class> factors(std::initializer_list<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Rank over Q by plain rational elimination.
std::size_t rank_over_q(const Dense& a) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

Dense random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density) {
  Dense a(rows, std::vector<mpz_class>(cols, 0));
  for (auto& row : a) {
    for (auto& x : row) {
      if (static_cast<int>(rng() % 100) < density) x = static_cast<long>(rng() % 7) - 3;
    }
  }
  return a;
}

// Random unimodular matrix as a product of elementary operations.
Dense random_unimodular(std::mt19937& rng, std::size_t n) {
  Dense u(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n < 2) return u;
  for (int step = 0; step < 12; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    long f = static_cast<long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) u[i][c] += f * u[j][c];
    if (rng() % 4 == 0) std::swap(u[i], u[j]);
  }
  return u;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(Dense{{0, 0}, {0, 0}}).empty());
  CHECK(smith_normal_form(sparse(Dense{{0, 0}, {0, 0}})).empty());
  Dense id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(smith_normal_form(id) == factors({1, 1, 1}));
  CHECK(smith_normal_form(sparse(id)) == factors({1, 1, 1}));
  Dense d{{2, 0}, {0, 3}};
  CHECK(smith_normal_form(d) == factors({1, 6}));
  CHECK(smith_normal_form(sparse(d)) == factors({1, 6}));
  Dense w{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(smith_normal_form(w) == factors({2, 6, 12}));
  CHECK(smith_normal_form(sparse(w)) == factors({2, 6, 12}));
  CHECK(smith_normal_form(Dense{}).empty());
  CHECK_THROWS_AS(smith_normal_form(Dense{{1, 2}, {3}}), GraphError);
}

TEST_CASE("sparse and dense smith forms agree and match the rank") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    Dense a = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7, 10 + static_cast<int>(rng() % 60));
    auto dense = smith_normal_form(a);
    auto sp = smith_normal_form(sparse(a));
    CHECK(dense == sp);
    CHECK(rational_rank(sparse(a)) == rank_over_q(a));
    CHECK(sp.size() == rank_over_q(a));
    for (std::size_t i = 1; i < sp.size(); ++i) CHECK(sp[i] % sp[i - 1] == 0);
  }
}

TEST_CASE("smith form is invariant under unimodular changes of basis") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    Dense a = random_matrix(rng, rows, cols, 50);
    Dense b = multiply(multiply(random_unimodular(rng, rows), a), random_unimodular(rng, cols));
    CHECK(smith_normal_form(sparse(b)) == smith_normal_form(sparse(a)));
  }
}

TEST_CASE("multiply checks shapes") {
  CHECK_THROWS_AS(multiply(Dense{{1, 2}}, Dense{{1, 2}}), GraphError);
  CHECK(multiply(Dense{{1, 2}}, Dense{{3}, {4}}) == Dense{{11}});
}

TEST_CASE("d squared witness") {
  Catalog cat = build_catalog(0, 3);
  auto ms = boundary_matrices(cat);
  CHECK(verify_d_squared(ms).ok);
  auto broken = ms;
  broken[1].entries[0].value = -broken[1].entries[0].value;
  DSquaredReport r = verify_d_squared(broken);
  CHECK_FALSE(r.ok);
  CHECK(r.degree == 2);
  CHECK(r.value != 0);
  CHECK(r.row_generator == ms[0].rows[static_cast<std::size_t>(r.row)]);
  CHECK(r.col_generator == ms[1].cols[static_cast<std::size_t>(r.col)]);
  CHECK(to_json(r)["ok"] == false);
  auto mismatched = ms;
  mismatched[1].rows.pop_back();
  CHECK_THROWS_AS(verify_d_squared(mismatched), GraphError);
}

TEST_CASE("thrice-labeled sphere against a subdivided triangle") {
  // Closed triangle split into four: corners 0,1,2, midpoints 3 (01), 4 (12),
  // 5 (02); faces (0,3,5), (3,1,4), (5,4,2), (3,4,5).
  std::vector<std::pair<int, int>> edges = {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {0, 5}, {5, 2}, {3, 4}, {4, 5}, {3, 5}};
  std::vector<std::array<int, 3>> faces = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}};
  Dense d1(6, std::vector<mpz_class>(edges.size(), 0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d1[static_cast<std::size_t>(edges[e].first)][e] = -1;
    d1[static_cast<std::size_t>(edges[e].second)][e] = 1;
  }
  Dense d2(edges.size(), std::vector<mpz_class>(faces.size(), 0));
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int i = 0; i < 3; ++i) {
      int a = faces[f][static_cast<std::size_t>(i)], b = faces[f][static_cast<std::size_t>((i + 1) % 3)];
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e] == std::make_pair(a, b)) d2[e][f] = 1;
        if (edges[e] == std::make_pair(b, a)) d2[e][f] = -1;
      }
    }
  }
  REQUIRE(multiply(d1, d2) == Dense(6, std::vector<mpz_class>(faces.size(), 0)));
  BoundaryMatrix m1 = sparse(d1, 1), m2 = sparse(d2, 2);
  m2.rows = m1.cols;
  HomologyProfile oracle = homology_profile(0, 3, {6, 9, 4}, {m1, m2});

  Catalog cat = build_catalog(0, 3);
  HomologyProfile ours = homology_profile(cat, boundary_matrices(cat));
  REQUIRE(ours.degrees.size() == oracle.degrees.size());
  for (std::size_t k = 0; k < ours.degrees.size(); ++k) {
    CHECK(ours.degrees[k].dim == oracle.degrees[k].dim);
    CHECK(ours.degrees[k].rank == oracle.degrees[k].rank);
    CHECK(ours.degrees[k].betti == oracle.degrees[k].betti);
    CHECK(ours.degrees[k].torsion == oracle.degrees[k].torsion);
  }
  CHECK(ours.degrees[0].betti == 1);
  CHECK(ours.euler_from_cells() == 1);
  CHECK(ours.euler_from_betti() == 1);
}

TEST_CASE("once-punctured torus profile") {
  Catalog cat = build_catalog(1, 1);
  auto ms = boundary_matrices(cat);
  HomologyProfile p = homology_profile(cat, ms, 2);
  CHECK(p.euler_from_cells() == p.euler_from_betti());
  for (const auto& m : ms) CHECK(rational_rank(m) == smith_normal_form(m).size());
  nlohmann::json expected = nlohmann::json::parse(R"({"g":1,"n":1,"degrees":[
    {"k":0,"dim":1,"rank":0,"betti":1,"torsion":[]},
    {"k":1,"dim":1,"rank":0,"betti":0,"torsion":[3]},
    {"k":2,"dim":1,"rank":1,"betti":0,"torsion":[]}]})");
  CHECK(to_json(p) == expected);
}

TEST_CASE("profile rejects inconsistent shapes") {
  BoundaryMatrix m = sparse(Dense{{1}});
  CHECK_THROWS_AS(homology_profile(0, 3, {2, 1}, {m}), GraphError);
  m.degree = 5;
  CHECK_THROWS_AS(homology_profile(0, 3, {1, 1}, {m}), GraphError);
}
