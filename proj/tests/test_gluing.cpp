#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "ssgh/canonical.hpp"
#include "ssgh/gluing.hpp"
#include "ssgh/surgery.hpp"

using namespace ssgh;
using namespace fixtures;

namespace {

bool trivalent(const RibbonGraph& g) {
  DerivedStructure d = derive(g);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (d.valence(static_cast<int>(v)) != 3) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("petal glued onto a theta face") {
  RibbonGraph g = disjoint_union(loop(), theta(false));
  auto family = vertex_gluing_family(g, 0, cusp(2));
  std::set<std::string> trivalent_keys;
  for (const auto& cls : family) {
    CHECK(derive(cls.graph).components.size() == 1);
    CHECK(component_genus(cls.graph, 0) == 0);
    if (trivalent(cls.graph)) trivalent_keys.insert(cls.key);
  }
  std::set<std::string> pictured = {canonical_bytes(handle_with_short_chord(false)),
                                    canonical_bytes(theta_with_handle()),
                                    canonical_bytes(handle_with_short_chord(true))};
  CHECK(trivalent_keys == pictured);
  // The two short-chord drawings are the same ribbon graph.
  CHECK(pictured.size() == 2);
}

TEST_CASE("general gluing of the blown-up petal matches vertex gluing") {
  RibbonGraph g = disjoint_union(loop(), theta(false));
  BlowUpResult b = blow_up(g, 0);
  auto general = gluing_family(b.graph, cusp(b.cycle_rep), cusp(2));
  auto vertexwise = vertex_gluing_family(g, 0, cusp(2));
  std::set<std::string> keys;
  for (const auto& cls : vertexwise) keys.insert(cls.key);
  for (const auto& cls : general) CHECK(keys.count(cls.key) == 1);
  int trivalent_general = 0;
  for (const auto& cls : general) trivalent_general += trivalent(cls.graph);
  CHECK(trivalent_general == 2);
}

TEST_CASE("gluing is additive in genus and removes one cusp") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    RibbonGraph a = random_graph(1 + static_cast<int>(rng() % 3), rng);
    RibbonGraph b = random_graph(1 + static_cast<int>(rng() % 3), rng);
    RibbonGraph g = disjoint_union(a, b);
    DerivedStructure da = derive(a), db = derive(b);
    int vertex_rep = 0;
    int target = a.half_edge_count() + static_cast<int>(rng() % static_cast<unsigned>(b.half_edge_count()));
    auto family = vertex_gluing_family(g, vertex_rep, cusp(target));
    CHECK_FALSE(family.empty());
    for (const auto& cls : family) {
      DerivedStructure d = derive(cls.graph);
      CHECK(d.components.size() == 1);
      CHECK(component_genus(cls.graph, 0) == component_genus(a, 0) + component_genus(b, 0));
      CHECK(d.cusp_count() == da.cusp_count() + db.cusp_count() - 1);
      CHECK(cls.graph.edge_count() >= a.edge_count() + b.edge_count());
    }
  }
}

TEST_CASE("gluing onto a semistable circle") {
  // A vertex of valence two glued onto a circle: the circle gets subdivided.
  RibbonGraph g = disjoint_union(loop(), circle());
  auto family = vertex_gluing_family(g, 0, circle_cusp(2));
  CHECK_FALSE(family.empty());
  for (const auto& cls : family) {
    DerivedStructure d = derive(cls.graph);
    CHECK(d.components.size() == 1);
    CHECK(d.cusp_count() == 2 + 2 - 1);
  }
}

TEST_CASE("plans carry tags onto subdivided edges") {
  RibbonGraph g = disjoint_union(loop(), theta(false));
  std::vector<int> tags(static_cast<std::size_t>(g.half_edge_count()), 0);
  for (int h = 2; h < 8; ++h) tags[static_cast<std::size_t>(h)] = 1;
  auto family = vertex_gluing_family(g, 0, cusp(2), tags);
  for (const auto& cls : family) {
    int tagged = 0;
    for (int t : cls.tags) tagged += t;
    // Loop half-edges stay untagged; every theta edge keeps its tag.
    CHECK(tagged == cls.graph.half_edge_count() - 2);
  }
}

TEST_CASE("gluing rejects bad inputs") {
  RibbonGraph t = theta(false);
  CHECK_THROWS_AS(vertex_gluing_family(t, 0, cusp(0)), GraphError);
  RibbonGraph tor = torus(false);
  RibbonGraph g = disjoint_union(tor, theta(false));
  CHECK_THROWS_AS(gluing_family(g, cusp(0), cusp(6)), GraphError);
}

TEST_CASE("one-vertex cycle onto a one-vertex cycle") {
  // Two loops; each face is a one-edge cycle through a single vertex.
  RibbonGraph g = disjoint_union(loop(), loop());
  auto family = gluing_family(g, cusp(0), cusp(2));
  REQUIRE(family.size() == 2);
  int merged = 0;
  for (const auto& cls : family) {
    DerivedStructure d = derive(cls.graph);
    CHECK(d.components.size() == 1);
    CHECK(d.cusp_count() == 2);
    merged += d.vertices.size() == 1;
  }
  // Exactly one class has the two vertices at a common point.
  CHECK(merged == 1);
  CHECK(canonical_bytes(family.front().graph) == canonical_bytes(loop()));
}
