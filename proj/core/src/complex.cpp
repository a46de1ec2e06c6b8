#include "ssgh/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>

#include "parallel.hpp"
#include "ssgh/enumerate.hpp"
#include "ssgh/permutation.hpp"
#include "ssgh/surgery.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

int parity(int k) { return k % 2 == 0 ? 1 : -1; }

// Sign of listing the canonical edges in the order given by `images`.
int listing_sign(const std::vector<int>& images) {
  std::vector<int> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  return relative_sign(images, sorted);
}

bool zero_flag_of(const SequencedGraph& canonical) {
  return automorphisms(canonical.graph, canonical.chain).edge_sign_reversing;
}

}  // namespace

std::string generator_id(const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Generator::id() const { return generator_id(key); }

int degree(const SequencedGraph& sq) { return sq.graph.edge_count() - (sq.length() + 1); }

Generator make_generator(const SequencedGraph& sq) {
  CanonicalForm c = canonicalize(sq.graph, sq.chain);
  Generator gen;
  gen.sequence = {c.graph, c.chain};
  gen.key = std::move(c.bytes);
  gen.degree = degree(gen.sequence);
  gen.zero_flag = zero_flag_of(gen.sequence);
  return gen;
}

int orientation_sign(const std::vector<OrientationSymbol>& presented,
                     const std::vector<OrientationSymbol>& canonical) {
  if (presented.size() != canonical.size()) throw GraphError("orientation_sign: orderings differ in length");
  std::vector<OrientationSymbol> a = presented, b = canonical;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw GraphError("orientation_sign: orderings list different symbols");
  }
  std::vector<int> from, to;
  auto code = [&](const OrientationSymbol& s) {
    return static_cast<int>(std::lower_bound(a.begin(), a.end(), s) - a.begin());
  };
  for (const auto& s : presented) from.push_back(code(s));
  for (const auto& s : canonical) to.push_back(code(s));
  return relative_sign(from, to);
}

std::vector<int> admissible_edges(const SequencedGraph& sq, EdgeRule rule) {
  const RibbonGraph& g = sq.graph;
  DerivedStructure d = derive(g);
  std::vector<int> level = half_edge_levels(sq);
  auto vl = vertex_labels(g, d);
  // Highest level touching each vertex.
  std::vector<int> top(d.vertices.size(), 0);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    for (int h : d.vertices[v]) top[v] = std::max(top[v], level[idx(h)]);
  }
  std::vector<int> out;
  for (int e : g.edges()) {
    if (!classify_subset(g, EdgeSet{e}).negligible()) continue;
    if (rule == EdgeRule::kPieceNegligible) {
      const int i = level[idx(e)];
      auto special = [&](int h) {
        auto v = idx(d.vertex_of[idx(h)]);
        return vl[v].has_value() || top[v] > i;
      };
      int a = e, b = g.sigma1(e);
      bool loop = d.vertex_of[idx(a)] == d.vertex_of[idx(b)];
      if (loop ? special(a) : (special(a) && special(b))) continue;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Term> edge_terms(const Generator& gen, EdgeRule rule) {
  const SequencedGraph& sq = gen.sequence;
  const RibbonGraph& g = sq.graph;
  std::vector<int> edges = g.edges();
  std::vector<int> level = half_edge_levels(sq);
  std::vector<Term> out;
  for (int e : admissible_edges(sq, rule)) {
    std::vector<EdgeSet> dseq(idx(level[idx(e)] + 1), EdgeSet{e});
    SequencedGraph collapsed;
    std::vector<int> origin;
    try {
      collapsed = collapse_negligible(sq, dseq, &origin);
    } catch (const GraphError&) {
      continue;  // a piece would vanish
    }
    if (!validate_sequence(collapsed, true).empty()) continue;
    CanonicalForm c = canonicalize(collapsed.graph, collapsed.chain);
    std::vector<int> to_new(idx(g.half_edge_count()), -1);
    for (std::size_t h = 0; h < origin.size(); ++h) to_new[idx(origin[h])] = static_cast<int>(h);
    std::vector<int> images;
    int position = -1;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      int f = edges[k];
      if (f == e) {
        position = static_cast<int>(k);
        continue;
      }
      int a = to_new[idx(f)];
      if (a < 0) a = to_new[idx(g.sigma1(f))];
      images.push_back(c.graph.edge_of(c.relabeling[idx(a)]));
    }
    Term t;
    t.target = {c.graph, c.chain};
    t.key = std::move(c.bytes);
    t.sign = parity(position) * listing_sign(images);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Term> subgraph_terms(const Generator& gen, SubgraphRule rule) {
  const SequencedGraph& sq = gen.sequence;
  const RibbonGraph& g = sq.graph;
  std::vector<int> edges = g.edges();
  const int m = sq.length();
  std::vector<Term> out;
  for (int i = 0; i <= m; ++i) {
    std::vector<int> inside = sq.z(i).minus(sq.z(i + 1)).ids();
    const int k = static_cast<int>(inside.size());
    if (k > 24) throw GraphError("d_s: piece too large");
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      std::vector<int> ids;
      for (int b = 0; b < k; ++b) {
        if (mask & (1u << b)) ids.push_back(inside[idx(b)]);
      }
      EdgeSet s(std::move(ids));
      if (rule == SubgraphRule::kSubsetSemistable && !classify_subset(g, s).semistable()) continue;
      if (!classify_subset(g, s.unite(sq.z(i + 1))).semistable()) continue;
      SequencedGraph target = insert_piece(sq, s, i);
      CanonicalForm c = canonicalize(target.graph, target.chain);
      std::vector<int> images;
      for (int f : edges) images.push_back(c.graph.edge_of(c.relabeling[idx(f)]));
      Term t;
      t.target = {c.graph, c.chain};
      t.key = std::move(c.bytes);
      t.sign = parity(static_cast<int>(edges.size()) + i) * listing_sign(images);
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

void accumulate(OrientedChain& chain, const std::vector<Term>& terms) {
  std::map<std::string, bool> zero;
  for (const auto& t : terms) {
    auto it = zero.find(t.key);
    if (it == zero.end()) it = zero.emplace(t.key, zero_flag_of(t.target)).first;
    if (it->second) continue;
    chain[t.key] += t.sign;
  }
  std::erase_if(chain, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

OrientedChain d_e(const Generator& gen, EdgeRule rule) {
  OrientedChain out;
  accumulate(out, edge_terms(gen, rule));
  return out;
}

OrientedChain d_s(const Generator& gen, SubgraphRule rule) {
  OrientedChain out;
  accumulate(out, subgraph_terms(gen, rule));
  return out;
}

OrientedChain differential(const Generator& gen, const DifferentialOptions& options) {
  std::vector<Term> terms;
  if (options.use_edges) terms = edge_terms(gen, options.edge);
  if (options.use_subgraphs) {
    auto more = subgraph_terms(gen, options.subgraph);
    terms.insert(terms.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  OrientedChain out;
  accumulate(out, terms);
  return out;
}

std::size_t Catalog::dimension(int k) const {
  auto it = by_degree.find(k);
  return it == by_degree.end() ? 0 : it->second.size();
}

std::optional<std::pair<int, int>> Catalog::find(const std::string& key) const {
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Catalog build_catalog(int genus, int labels, int threads) {
  std::vector<RibbonGraph> graphs = labeled_graphs(genus, labels, threads);
  std::vector<std::vector<Generator>> per_graph(graphs.size());
  detail::parallel_for(graphs.size(), threads, [&](std::size_t i) {
    std::map<std::string, Generator> seen;
    for (const auto& chain : semistable_chains(graphs[i])) {
      CanonicalForm c = canonicalize(graphs[i], chain);
      if (seen.count(c.bytes)) continue;
      Generator gen;
      gen.sequence = {c.graph, c.chain};
      gen.degree = degree(gen.sequence);
      gen.zero_flag = zero_flag_of(gen.sequence);
      gen.key = c.bytes;
      seen.emplace(std::move(c.bytes), std::move(gen));
    }
    for (auto& [key, gen] : seen) per_graph[i].push_back(std::move(gen));
  });
  Catalog cat;
  cat.genus = genus;
  cat.labels = labels;
  for (auto& gens : per_graph) {
    for (auto& gen : gens) {
      if (gen.zero_flag) {
        ++cat.zero_generators;
        continue;
      }
      cat.by_degree[gen.degree].push_back(std::move(gen));
    }
  }
  for (auto& [k, gens] : cat.by_degree) {
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) { return a.key < b.key; });
    for (std::size_t p = 0; p < gens.size(); ++p) {
      if (!cat.index.emplace(gens[p].key, std::make_pair(k, static_cast<int>(p))).second) {
        throw GraphError("build_catalog: duplicate generator");
      }
    }
  }
  return cat;
}

std::vector<Generator> enumerate_generators(int genus, int labels, int k, int threads) {
  Catalog cat = build_catalog(genus, labels, threads);
  auto it = cat.by_degree.find(k);
  return it == cat.by_degree.end() ? std::vector<Generator>{} : it->second;
}

std::vector<BoundaryMatrix> boundary_matrices(const Catalog& catalog, const DifferentialOptions& options,
                                              int threads) {
  std::vector<BoundaryMatrix> out;
  for (int k = 1; k <= catalog.top_degree(); ++k) {
    BoundaryMatrix bm;
    bm.degree = k;
    auto cols_it = catalog.by_degree.find(k);
    auto rows_it = catalog.by_degree.find(k - 1);
    static const std::vector<Generator> none;
    const auto& cols = cols_it == catalog.by_degree.end() ? none : cols_it->second;
    const auto& rows = rows_it == catalog.by_degree.end() ? none : rows_it->second;
    for (const auto& g : rows) bm.rows.push_back(g.id());
    for (const auto& g : cols) bm.cols.push_back(g.id());
    std::vector<std::vector<MatrixEntry>> columns(cols.size());
    detail::parallel_for(cols.size(), threads, [&](std::size_t c) {
      std::vector<Term> terms;
      if (options.use_edges) terms = edge_terms(cols[c], options.edge);
      if (options.use_subgraphs) {
        auto more = subgraph_terms(cols[c], options.subgraph);
        terms.insert(terms.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
      }
      std::map<int, long long> acc;
      std::map<std::string, bool> checked;
      for (const auto& t : terms) {
        auto where = catalog.find(t.key);
        if (where) {
          if (where->first != k - 1) throw GraphError("boundary_matrices: term of the wrong degree");
          acc[where->second] += t.sign;
          continue;
        }
        auto it = checked.find(t.key);
        if (it == checked.end()) it = checked.emplace(t.key, zero_flag_of(t.target)).first;
        if (!it->second) throw GraphError("boundary_matrices: term outside the catalog");
      }
      for (const auto& [r, v] : acc) {
        if (v != 0) columns[c].push_back({r, static_cast<int>(c), mpz_class(static_cast<long>(v))});
      }
    });
    for (auto& col : columns) {
      for (auto& e : col) bm.entries.push_back(std::move(e));
    }
    std::sort(bm.entries.begin(), bm.entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    out.push_back(std::move(bm));
  }
  return out;
}

namespace {

nlohmann::json mpz_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

mpz_class mpz_from(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(j.get<long>());
}

}  // namespace

nlohmann::json to_json(const BoundaryMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries) entries.push_back({e.row, e.col, mpz_json(e.value)});
  return {{"degree", m.degree}, {"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

BoundaryMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    BoundaryMatrix m;
    m.degree = j.at("degree").get<int>();
    m.rows = j.at("rows").get<std::vector<std::string>>();
    m.cols = j.at("cols").get<std::vector<std::string>>();
    for (const auto& e : j.at("entries")) m.entries.push_back({e.at(0).get<int>(), e.at(1).get<int>(), mpz_from(e.at(2))});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed matrix document: ") + e.what());
  }
}

nlohmann::json to_json(const Generator& gen) {
  return {{"id", gen.id()}, {"degree", gen.degree}, {"length", gen.length()}, {"graph", to_json(gen.sequence)}};
}

nlohmann::json catalog_to_json(const Catalog& catalog, std::optional<int> degree) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& [k, gens] : catalog.by_degree) {
    if (degree && *degree != k) continue;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& g : gens) list.push_back(to_json(g));
    degrees.push_back({{"k", k}, {"generators", list}});
  }
  return {{"g", catalog.genus}, {"n", catalog.labels}, {"degrees", degrees}};
}

}  // namespace ssgh
