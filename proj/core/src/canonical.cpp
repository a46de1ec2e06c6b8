#include "ssgh/canonical.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

#include "ssgh/permutation.hpp"

namespace ssgh {

namespace {

std::size_t idx(int h) { return static_cast<std::size_t>(h); }

constexpr int kNoLabel = INT_MIN;
constexpr int kFields = 5;

// Per half-edge invariants that any isomorphism must preserve.
struct Context {
  const RibbonGraph& g;
  DerivedStructure d;
  std::vector<int> vertex_label;
  std::vector<int> cycle_label;
  std::vector<int> chain_mask;

  Context(const RibbonGraph& graph, const Chain& chain) : g(graph), d(derive(graph)) {
    const int n = g.half_edge_count();
    vertex_label.assign(idx(n), kNoLabel);
    cycle_label.assign(idx(n), kNoLabel);
    chain_mask.assign(idx(n), 0);
    auto vl = vertex_labels(g, d);
    auto cl = cycle_labels(g, d);
    for (int h = 0; h < n; ++h) {
      int v = d.vertex_of[idx(h)];
      if (v >= 0 && vl[idx(v)]) vertex_label[idx(h)] = *vl[idx(v)];
      int c = d.cycle_of[idx(h)];
      if (cl[idx(c)]) cycle_label[idx(h)] = *cl[idx(c)];
    }
    if (chain.size() > 30) throw GraphError("canonicalize: chain too long");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (int e : chain[i]) {
        if (e < 0 || e >= n || g.sigma1(e) < e) throw GraphError("canonicalize: bad edge id in chain");
        chain_mask[idx(e)] |= 1 << i;
        chain_mask[idx(g.sigma1(e))] |= 1 << i;
      }
    }
  }
};

// Breadth-first numbering from `root`. Returns false (and stops early) as
// soon as the code exceeds `best`; sets `improved` when strictly smaller.
bool bfs_code(const Context& c, int root, const std::vector<int>* best, std::vector<int>& order,
              std::vector<int>& code, std::vector<int>& number, bool& improved) {
  const auto& comp = c.d.components[idx(c.d.component_of[idx(root)])];
  for (int h : comp) number[idx(h)] = -1;
  order.clear();
  code.clear();
  order.push_back(root);
  number[idx(root)] = 0;
  improved = best == nullptr;
  bool equal_so_far = best != nullptr;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int h = order[i];
    int s1 = c.g.sigma1(h);
    if (number[idx(s1)] < 0) {
      number[idx(s1)] = static_cast<int>(order.size());
      order.push_back(s1);
    }
    int s0 = c.g.sigma0(h);
    if (s0 >= 0 && number[idx(s0)] < 0) {
      number[idx(s0)] = static_cast<int>(order.size());
      order.push_back(s0);
    }
    int entry[kFields] = {number[idx(s1)], s0 >= 0 ? number[idx(s0)] : -1, c.vertex_label[idx(h)],
                          c.cycle_label[idx(h)], c.chain_mask[idx(h)]};
    for (int f = 0; f < kFields; ++f) {
      if (equal_so_far) {
        int other = (*best)[code.size()];
        if (entry[f] > other) return false;
        if (entry[f] < other) {
          equal_so_far = false;
          improved = true;
        }
      }
      code.push_back(entry[f]);
    }
  }
  return true;
}

struct ComponentCode {
  std::vector<int> code;
  std::vector<int> roots;  // all roots achieving the minimal code
  std::vector<std::vector<int>> orders;  // BFS order per root in `roots`
  int component = 0;
};

std::vector<ComponentCode> component_codes(const Context& c) {
  std::vector<ComponentCode> out;
  std::vector<int> number(idx(c.g.half_edge_count()), -1);
  std::vector<int> order, code;
  for (std::size_t comp = 0; comp < c.d.components.size(); ++comp) {
    ComponentCode cc;
    cc.component = static_cast<int>(comp);
    for (int root : c.d.components[comp]) {
      bool improved = false;
      bool ok = bfs_code(c, root, cc.roots.empty() ? nullptr : &cc.code, order, code, number, improved);
      if (!ok) continue;
      if (improved) {
        cc.code = code;
        cc.roots = {root};
        cc.orders = {order};
      } else {
        cc.roots.push_back(root);
        cc.orders.push_back(order);
      }
    }
    out.push_back(std::move(cc));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ComponentCode& a, const ComponentCode& b) { return a.code < b.code; });
  return out;
}

std::vector<int> edge_permutation(const RibbonGraph& g, const std::vector<int>& map) {
  auto edges = g.edges();
  std::map<int, int> position;
  for (std::size_t i = 0; i < edges.size(); ++i) position[edges[i]] = static_cast<int>(i);
  std::vector<int> perm(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    perm[i] = position.at(g.edge_of(map[idx(edges[i])]));
  }
  return perm;
}

}  // namespace

CanonicalForm canonicalize(const RibbonGraph& g, const Chain& chain) {
  Context c(g, chain);
  auto codes = component_codes(c);
  CanonicalForm out;
  out.relabeling.assign(idx(g.half_edge_count()), -1);
  int offset = 0;
  for (const auto& cc : codes) {
    const auto& order = cc.orders.front();
    for (std::size_t i = 0; i < order.size(); ++i) out.relabeling[idx(order[i])] = offset + static_cast<int>(i);
    offset += static_cast<int>(order.size());
  }
  RibbonGraph canon = relabel(g, out.relabeling);
  DerivedStructure cd = derive(canon);
  LabelMap labels;
  for (const auto& [name, p] : canon.labels()) labels[name] = normalize_point(canon, cd, p);
  canon.set_labels(std::move(labels));
  out.chain.reserve(chain.size());
  for (const auto& z : chain) out.chain.push_back(map_edges(g, canon, z, out.relabeling));
  out.edge_order = canon.edges();
  nlohmann::json doc = to_json(canon);
  if (!chain.empty()) doc["sequence"] = chain_to_json(out.chain);
  out.bytes = doc.dump();
  out.graph = std::move(canon);
  return out;
}

std::string canonical_bytes(const RibbonGraph& g, const Chain& chain) {
  return canonicalize(g, chain).bytes;
}

AutomorphismInfo automorphisms(const RibbonGraph& g, const Chain& chain) {
  Context c(g, chain);
  auto codes = component_codes(c);
  const int n = g.half_edge_count();
  AutomorphismInfo info;
  auto record = [&](std::vector<int> perm) {
    if (permutation_sign(edge_permutation(g, perm)) < 0) info.edge_sign_reversing = true;
    info.generators.push_back(std::move(perm));
  };
  std::vector<int> identity(idx(n));
  std::iota(identity.begin(), identity.end(), 0);
  for (const auto& cc : codes) {
    info.order *= cc.roots.size();
    for (std::size_t k = 1; k < cc.orders.size(); ++k) {
      std::vector<int> perm = identity;
      for (std::size_t i = 0; i < cc.orders[0].size(); ++i) perm[idx(cc.orders[0][i])] = cc.orders[k][i];
      record(std::move(perm));
    }
  }
  std::size_t run = 1;
  for (std::size_t i = 1; i <= codes.size(); ++i) {
    if (i < codes.size() && codes[i].code == codes[i - 1].code) {
      ++run;
      info.order *= run;
      const auto& a = codes[i - 1].orders.front();
      const auto& b = codes[i].orders.front();
      std::vector<int> perm = identity;
      for (std::size_t j = 0; j < a.size(); ++j) {
        perm[idx(a[j])] = b[j];
        perm[idx(b[j])] = a[j];
      }
      record(std::move(perm));
    } else {
      run = 1;
    }
  }
  return info;
}

int edge_map_sign(const RibbonGraph& a, const RibbonGraph& b, const std::vector<int>& map) {
  auto ea = a.edges();
  auto eb = b.edges();
  if (ea.size() != eb.size()) throw GraphError("edge_map_sign: edge counts differ");
  std::map<int, int> position;
  for (std::size_t i = 0; i < eb.size(); ++i) position[eb[i]] = static_cast<int>(i);
  std::vector<int> perm(ea.size());
  for (std::size_t i = 0; i < ea.size(); ++i) perm[i] = position.at(b.edge_of(map[idx(ea[i])]));
  if (!is_permutation(perm)) throw GraphError("edge_map_sign: map is not a bijection on edges");
  return permutation_sign(perm);
}

std::optional<Isomorphism> find_isomorphism(const RibbonGraph& a, const RibbonGraph& b,
                                            const Chain& chain_a, const Chain& chain_b) {
  if (a.half_edge_count() != b.half_edge_count()) return std::nullopt;
  CanonicalForm ca = canonicalize(a, chain_a);
  CanonicalForm cb = canonicalize(b, chain_b);
  if (ca.bytes != cb.bytes) return std::nullopt;
  std::vector<int> from_canonical_b = inverse_permutation(cb.relabeling);
  Isomorphism iso;
  iso.map.resize(idx(a.half_edge_count()));
  for (int h = 0; h < a.half_edge_count(); ++h) {
    iso.map[idx(h)] = from_canonical_b[idx(ca.relabeling[idx(h)])];
  }
  iso.sign = edge_map_sign(a, b, iso.map);
  return iso;
}

nlohmann::json chain_to_json(const Chain& chain) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : chain) out.push_back(z.ids());
  return out;
}

Chain chain_from_json(const nlohmann::json& j) {
  Chain out;
  try {
    for (const auto& z : j) out.emplace_back(z.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed sequence: ") + e.what());
  }
  return out;
}

}  // namespace ssgh
