#include "ssgh/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parallel.hpp"

namespace ssgh {

namespace {

using SparseRow = std::map<int, mpz_class>;
using Dense = std::vector<std::vector<mpz_class>>;

std::vector<SparseRow> sparse_rows(const BoundaryMatrix& m) {
  std::vector<SparseRow> rows(m.rows.size());
  for (const auto& e : m.entries) {
    if (e.row < 0 || e.col < 0 || static_cast<std::size_t>(e.row) >= m.rows.size() ||
        static_cast<std::size_t>(e.col) >= m.cols.size()) {
      throw GraphError("matrix entry out of range");
    }
    if (e.value != 0) rows[static_cast<std::size_t>(e.row)][e.col] += e.value;
  }
  for (auto& r : rows) std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return rows;
}

// a -= f * b
void axpy(SparseRow& a, const mpz_class& f, const SparseRow& b) {
  for (const auto& [c, v] : b) {
    auto it = a.try_emplace(c, 0).first;
    it->second -= f * v;
    if (it->second == 0) a.erase(it);
  }
}

// Diagonal entries to invariant factors.
std::vector<mpz_class> normalize_diagonal(std::vector<mpz_class> d) {
  for (auto& x : d) x = abs(x);
  std::erase_if(d, [](const mpz_class& x) { return x == 0; });
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]);
      mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

std::vector<mpz_class> dense_diagonal(Dense a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry in the remaining block.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      const mpz_class p = a[t][t];
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), p.get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), p.get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(a[t][t]);
  }
  return diag;
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const std::vector<std::vector<mpz_class>>& dense) {
  for (const auto& row : dense) {
    if (row.size() != dense.front().size()) throw GraphError("smith_normal_form: ragged matrix");
  }
  return normalize_diagonal(dense_diagonal(dense));
}

std::vector<mpz_class> smith_normal_form(const BoundaryMatrix& m) {
  std::vector<SparseRow> rows = sparse_rows(m);
  std::map<int, std::set<int>> in_col;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r]) in_col[c].insert(static_cast<int>(r));
  }
  std::vector<bool> alive(rows.size(), true);
  std::vector<mpz_class> diag;
  // Unit pivots with the smallest fill estimate.
  while (true) {
    int best_r = -1, best_c = -1;
    std::size_t best_cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!alive[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (rows[r].size() - 1) * (in_col[c].size() - 1);
        if (best_r < 0 || cost < best_cost) {
          best_r = static_cast<int>(r);
          best_c = c;
          best_cost = cost;
        }
      }
    }
    if (best_r < 0) break;
    const SparseRow pivot = rows[static_cast<std::size_t>(best_r)];
    const mpz_class pv = pivot.at(best_c);
    std::set<int> targets = in_col[best_c];
    for (int r : targets) {
      if (r == best_r) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      mpz_class f = row.at(best_c) * pv;  // pv is a unit
      for (const auto& [c, v] : row) in_col[c].erase(r);
      axpy(row, f, pivot);
      for (const auto& [c, v] : row) in_col[c].insert(r);
    }
    for (const auto& [c, v] : pivot) in_col[c].erase(best_r);
    rows[static_cast<std::size_t>(best_r)].clear();
    alive[static_cast<std::size_t>(best_r)] = false;
    in_col.erase(best_c);
    diag.push_back(1);
  }
  // Dense remainder on the surviving support.
  std::vector<int> live_rows, live_cols;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (alive[r] && !rows[r].empty()) live_rows.push_back(static_cast<int>(r));
  }
  for (const auto& [c, rs] : in_col) {
    if (!rs.empty()) live_cols.push_back(c);
  }
  if (!live_rows.empty()) {
    std::map<int, std::size_t> col_pos;
    for (std::size_t i = 0; i < live_cols.size(); ++i) col_pos[live_cols[i]] = i;
    Dense dense(live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i) {
      for (const auto& [c, v] : rows[static_cast<std::size_t>(live_rows[i])]) dense[i][col_pos.at(c)] = v;
    }
    for (auto& x : dense_diagonal(std::move(dense))) diag.push_back(std::move(x));
  }
  return normalize_diagonal(std::move(diag));
}

std::size_t rational_rank(const BoundaryMatrix& m) {
  std::vector<SparseRow> rows = sparse_rows(m);
  std::map<int, SparseRow> pivots;  // leading column -> reduced row
  for (auto& row : rows) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) break;
      const SparseRow& p = it->second;
      const mpz_class a = p.begin()->second, b = lead->second;
      mpz_class g = gcd(a, b);
      mpz_class fa = a / g, fb = b / g;
      for (auto& [c, v] : row) v *= fa;
      axpy(row, fb, p);
      mpz_class content = 0;
      for (const auto& [c, v] : row) content = gcd(content, v);
      if (content > 1) {
        for (auto& [c, v] : row) v /= content;
      }
    }
    if (!row.empty()) pivots.emplace(row.begin()->first, std::move(row));
  }
  return pivots.size();
}

Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t inner = a.empty() ? 0 : a[0].size();
  if (inner != b.size()) throw GraphError("multiply: shape mismatch");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Dense out(a.size(), std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

DSquaredReport verify_d_squared(const std::vector<BoundaryMatrix>& matrices) {
  DSquaredReport report;
  for (std::size_t i = 1; i < matrices.size(); ++i) {
    const BoundaryMatrix& low = matrices[i - 1];
    const BoundaryMatrix& high = matrices[i];
    if (high.degree != low.degree + 1) throw GraphError("verify_d_squared: degrees not consecutive");
    if (high.rows != low.cols) throw GraphError("verify_d_squared: catalogs do not match");
    std::vector<SparseRow> a = sparse_rows(low);
    std::vector<SparseRow> b = sparse_rows(high);
    for (std::size_t r = 0; r < a.size(); ++r) {
      SparseRow prod;
      for (const auto& [k, v] : a[r]) {
        for (const auto& [c, w] : b[static_cast<std::size_t>(k)]) prod[c] += v * w;
      }
      for (const auto& [c, v] : prod) {
        if (v == 0) continue;
        report.ok = false;
        report.degree = high.degree;
        report.row = static_cast<int>(r);
        report.col = c;
        report.value = v;
        report.row_generator = low.rows[r];
        report.col_generator = high.cols[static_cast<std::size_t>(c)];
        return report;
      }
    }
  }
  return report;
}

long long HomologyProfile::euler_from_cells() const {
  long long s = 0;
  for (const auto& d : degrees) s += (d.k % 2 == 0 ? 1 : -1) * static_cast<long long>(d.dim);
  return s;
}

long long HomologyProfile::euler_from_betti() const {
  long long s = 0;
  for (const auto& d : degrees) s += (d.k % 2 == 0 ? 1 : -1) * d.betti;
  return s;
}

HomologyProfile homology_profile(int genus, int labels, const std::vector<std::size_t>& dims,
                                 const std::vector<BoundaryMatrix>& matrices, int threads) {
  const int top = static_cast<int>(dims.size()) - 1;
  std::vector<const BoundaryMatrix*> by_degree(dims.size() + 1, nullptr);
  for (const auto& m : matrices) {
    if (m.degree < 1 || m.degree > top) throw GraphError("homology_profile: matrix degree out of range");
    if (m.cols.size() != dims[static_cast<std::size_t>(m.degree)] ||
        m.rows.size() != dims[static_cast<std::size_t>(m.degree - 1)]) {
      throw GraphError("homology_profile: matrix shape does not match the dimensions");
    }
    by_degree[static_cast<std::size_t>(m.degree)] = &m;
  }
  std::vector<std::vector<mpz_class>> factors(by_degree.size());
  detail::parallel_for(by_degree.size(), threads, [&](std::size_t k) {
    if (by_degree[k]) factors[k] = smith_normal_form(*by_degree[k]);
  });
  HomologyProfile p;
  p.genus = genus;
  p.labels = labels;
  for (int k = 0; k <= top; ++k) {
    DegreeHomology h;
    h.k = k;
    h.dim = dims[static_cast<std::size_t>(k)];
    h.rank = factors[static_cast<std::size_t>(k)].size();
    const std::size_t above = factors[static_cast<std::size_t>(k + 1)].size();
    h.betti = static_cast<long long>(h.dim) - static_cast<long long>(h.rank) - static_cast<long long>(above);
    for (const auto& f : factors[static_cast<std::size_t>(k + 1)]) {
      if (f > 1) h.torsion.push_back(f);
    }
    p.degrees.push_back(std::move(h));
  }
  return p;
}

HomologyProfile homology_profile(const Catalog& catalog, const std::vector<BoundaryMatrix>& matrices,
                                 int threads) {
  std::vector<std::size_t> dims;
  for (int k = 0; k <= catalog.top_degree(); ++k) dims.push_back(catalog.dimension(k));
  return homology_profile(catalog.genus, catalog.labels, dims, matrices, threads);
}

nlohmann::json to_json(const HomologyProfile& p) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& d : p.degrees) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : d.torsion) torsion.push_back(t.fits_slong_p() ? nlohmann::json(t.get_si()) : nlohmann::json(t.get_str()));
    degrees.push_back({{"k", d.k}, {"dim", d.dim}, {"rank", d.rank}, {"betti", d.betti}, {"torsion", torsion}});
  }
  return {{"g", p.genus}, {"n", p.labels}, {"degrees", degrees}};
}

nlohmann::json to_json(const DSquaredReport& r) {
  if (r.ok) return {{"ok", true}};
  return {{"ok", false},
          {"degree", r.degree},
          {"row", r.row},
          {"col", r.col},
          {"value", r.value.get_str()},
          {"row_generator", r.row_generator},
          {"col_generator", r.col_generator}};
}

}  // namespace ssgh
