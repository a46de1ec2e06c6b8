#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ssgh/permutation.hpp"
#include "ssgh/ribbon_graph.hpp"

using namespace ssgh;
using namespace fixtures;

namespace {

bool has_violation(const ValidityReport& r, const std::string& name) {
  for (const auto& v : r) {
    if (v.name == name) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("theta graph is valid with three boundary cycles") {
  RibbonGraph g = theta();
  CHECK(validate(g).empty());
  DerivedStructure d = derive(g);
  CHECK(d.vertices.size() == 2);
  CHECK(d.edges.size() == 3);
  CHECK(d.cusp_count() == 3);
  CHECK(component_genus(g, 0) == 0);
  CHECK(labeled_euler_characteristic(g, 0) == -1);
  CHECK(topological_type(g) == TopologicalType{0, 3});
}

TEST_CASE("torus graph has one boundary cycle and genus one") {
  RibbonGraph g = torus();
  CHECK(validate(g).empty());
  DerivedStructure d = derive(g);
  CHECK(d.cusp_count() == 1);
  CHECK(d.boundary_cycles[0].size() == 6);
  CHECK(component_genus(g, 0) == 1);
  CHECK(topological_type(g) == TopologicalType{1, 1});
}

TEST_CASE("one-edge graphs") {
  CHECK(derive(loop()).cusp_count() == 2);
  CHECK(derive(circle()).cusp_count() == 2);
  CHECK(derive(segment()).cusp_count() == 1);
  CHECK(component_genus(circle(), 0) == 0);
  CHECK(labeled_euler_characteristic(circle(), 0) == 0);
  RibbonGraph s = segment({{1, vertex(0)}, {2, vertex(1)}, {3, cusp(0)}});
  CHECK(labeled_euler_characteristic(s, 0) == -1);
  CHECK(validate(s).empty());
}

TEST_CASE("figure-eight with cusp labels has type (0,3)") {
  RibbonGraph g = figure_eight({{1, cusp(0)}, {2, cusp(2)}, {3, cusp(1)}});
  CHECK(validate(g).empty());
  CHECK(topological_type(g) == TopologicalType{0, 3});
}

TEST_CASE("validation names violations") {
  RibbonGraph fixed(2, {0, 0}, {{0, 1}}, {}, {});
  CHECK(has_violation(validate(fixed), "sigma1-fixed-point"));

  RibbonGraph s = segment({{1, vertex(0)}, {3, cusp(0)}});
  CHECK(has_violation(validate(s), "uncovered-distinguished-point"));

  RibbonGraph dup(4, {1, 0, 3, 2}, {{0, 1, 2}, {2, 3}}, {}, {});
  CHECK(has_violation(validate(dup), "sigma0-repeated-half-edge"));

  RibbonGraph bad_label = theta();
  bad_label.set_labels({{1, cusp(0)}, {2, cusp(3)}, {3, cusp(1)}});
  CHECK(has_violation(validate(bad_label), "label-not-injective"));

  RibbonGraph lonely = circle();
  CHECK(has_violation(validate(lonely), "uncovered-distinguished-point"));
  CHECK(has_violation(validate(circle({{1, circle_cusp(0)}, {2, circle_cusp(1)}})),
                      "positive-euler-characteristic") == false);
}

TEST_CASE("sigma0 is recovered from sigma1 and sigma_inf") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RibbonGraph g = random_graph(1 + trial % 6, rng);
    auto sinf = g.sigma_inf();
    auto inv = inverse_permutation(sinf);
    for (int h = 0; h < g.half_edge_count(); ++h) CHECK(g.sigma1(inv[static_cast<std::size_t>(h)]) == g.sigma0(h));
  }
}

TEST_CASE("derived counts are invariant under relabeling") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    RibbonGraph g = random_graph(1 + trial % 7, rng);
    RibbonGraph h = shuffle(g, rng);
    DerivedStructure a = derive(g), b = derive(h);
    CHECK(a.vertices.size() == b.vertices.size());
    CHECK(a.cusp_count() == b.cusp_count());
    CHECK(a.components.size() == b.components.size());
    CHECK(component_genus(g, 0) == component_genus(h, 0));
    int chi = static_cast<int>(a.vertices.size()) - g.edge_count() + a.cusp_count();
    CHECK(chi <= 2);
    CHECK(chi % 2 == 0);
  }
}

TEST_CASE("orbits partition the half-edges") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    RibbonGraph g = random_graph(1 + trial % 6, rng);
    DerivedStructure d = derive(g);
    std::vector<int> seen(static_cast<std::size_t>(g.half_edge_count()), 0);
    for (const auto& c : d.boundary_cycles) {
      for (int h : c) ++seen[static_cast<std::size_t>(h)];
    }
    for (int s : seen) CHECK(s == 1);
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& v : d.vertices) {
      for (int h : v) ++seen[static_cast<std::size_t>(h)];
    }
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("json round trip is byte identical") {
  RibbonGraph g = figure_eight({{1, cusp(0)}, {2, cusp(2)}, {3, cusp(1)}});
  std::string text = to_json(g).dump();
  RibbonGraph back = graph_from_json(nlohmann::json::parse(text));
  CHECK(back == g);
  CHECK(to_json(back).dump() == text);
  RibbonGraph c = circle({{1, circle_cusp(0)}, {2, circle_cusp(1)}});
  CHECK(graph_from_json(to_json(c)) == c);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"half_edges": "x"})")), GraphError);
}

TEST_CASE("disconnected graphs have no topological type") {
  CHECK_THROWS_AS(topological_type(disjoint_union(loop(), segment())), GraphError);
}
