#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ssgh/canonical.hpp"
#include "ssgh/surgery.hpp"

using namespace ssgh;
using namespace fixtures;

TEST_CASE("inducing one theta edge gives a segment") {
  SurgeryResult r = induce_subgraph(theta(false), EdgeSet{0});
  DerivedStructure d = derive(r.graph);
  CHECK(r.graph.edge_count() == 1);
  CHECK(d.vertices.size() == 2);
  CHECK(d.valence(0) == 1);
  CHECK(d.valence(1) == 1);
}

TEST_CASE("inducing the theta inside the handle graph") {
  RibbonGraph g = theta_with_handle();
  CHECK(validate(g, false).empty());
  CHECK(topological_type(g).genus == 0);
  SurgeryResult r = induce_subgraph(g, EdgeSet{2, 4, 6, 8, 10});
  SurgeryResult red = reduce(r.graph);
  CHECK(canonical_bytes(red.graph) == canonical_bytes(theta(false)));
}

TEST_CASE("quotients") {
  // One theta edge: figure-eight with three faces.
  SurgeryResult q = quotient_graph(theta(false), EdgeSet{0});
  DerivedStructure d = derive(q.graph);
  CHECK(d.vertices.size() == 1);
  CHECK(q.graph.edge_count() == 2);
  CHECK(d.cusp_count() == 3);
  CHECK(canonical_bytes(q.graph) == canonical_bytes(figure_eight()));
  // Labels on faces survive.
  SurgeryResult ql = quotient_graph(theta(), EdgeSet{0});
  CHECK(ql.graph.labels().size() == 3);
  CHECK(topological_type(ql.graph) == TopologicalType{0, 3});

  // The bar of the dumbbell.
  SurgeryResult qb = quotient_graph(dumbbell(), EdgeSet{4});
  CHECK(canonical_bytes(qb.graph) == canonical_bytes(figure_eight()));

  // The encircling loop: two one-loop components.
  SurgeryResult qe = quotient_graph(three_petals(), EdgeSet{2});
  DerivedStructure de = derive(qe.graph);
  CHECK(de.components.size() == 2);
  CHECK(canonical_bytes(qe.graph) == canonical_bytes(disjoint_union(loop(), loop())));
}

TEST_CASE("classification of subsets") {
  RibbonGraph t = theta(false);
  CHECK(classify_subset(t, EdgeSet{0}).negligible());
  CHECK(classify_subset(t, EdgeSet{}).negligible());
  // Two edges form a circle bounding a face: negligible when unlabeled.
  CHECK(classify_subset(t, EdgeSet{0, 2}).negligible());
  // The encircling loop bounds no face: semistable, not stable.
  SubsetClass e = classify_subset(three_petals(), EdgeSet{2});
  CHECK(e.semistable());
  CHECK_FALSE(e.stable());
  // Labeling its vertex makes it stable.
  RibbonGraph lab = three_petals({{1, vertex(0)}});
  CHECK(classify_subset(lab, EdgeSet{2}).stable());
  // An edge between two labeled vertices is stable.
  RibbonGraph dl = dumbbell({{1, vertex(0)}, {2, vertex(2)}});
  CHECK(classify_subset(dl, EdgeSet{4}).stable());
  // With one labeled end it is negligible.
  RibbonGraph d1 = dumbbell({{1, vertex(0)}});
  CHECK(classify_subset(d1, EdgeSet{4}).negligible());
  // Non-proper sets are never semistable.
  CHECK_FALSE(classify_subset(dl, EdgeSet::all(dl)).semistable());
}

TEST_CASE("pruning the triangle with pendants empties it") {
  RibbonGraph g = triangle_with_pendants();
  CHECK(max_semistable(g, EdgeSet::all(g)).empty());
  // An unlabeled homotopy circle around a face is negligible as well.
  CHECK(classify_subset(g, EdgeSet{0, 2, 4, 6, 8}).negligible());
  CHECK(max_semistable(g, EdgeSet{0, 2, 4, 6, 8}).empty());
}

TEST_CASE("maximal semistable subset is empty exactly for negligible sets") {
  std::mt19937 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    RibbonGraph g = with_random_vertex_labels(random_graph(1 + static_cast<int>(rng() % 6), rng), rng);
    EdgeSet z = random_subset(g, rng);
    EdgeSet sst = max_semistable(g, z);
    CHECK(sst.subset_of(z));
    CHECK(sst.empty() == classify_subset(g, z).negligible());
    if (!sst.empty() && sst.size() < g.edge_count()) {
      CHECK(classify_subset(g, sst).semistable());
      CHECK(max_semistable(g, sst) == sst);
      EdgeSet st = max_stable(g, z);
      CHECK(st.subset_of(sst));
      if (!st.empty()) CHECK(classify_subset(g, st).stable());
    }
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("reduction turns an unlabeled loop into a circle") {
  SurgeryResult r = reduce(loop());
  CHECK(r.graph.on_circle(0));
  CHECK(r.graph.on_circle(1));
  // Subdivided theta reduces to theta.
  SurgeryResult t = reduction(theta_with_handle(), EdgeSet{2, 4, 6, 8, 10});
  CHECK(canonical_bytes(t.graph) == canonical_bytes(theta(false)));
  // Labeled bivalent vertices stay.
  RibbonGraph l = loop({{1, vertex(0)}});
  CHECK(reduce(l).graph == l);
}

TEST_CASE("edge collapse of the handle graph") {
  RibbonGraph g = theta_with_handle();
  CollapseResult c = edge_collapse(g, EdgeSet{2, 4, 6, 8, 10});
  CHECK(c.semistable_part == EdgeSet{2, 4, 6, 8, 10});
  CHECK(canonical_bytes(c.graph) == canonical_bytes(disjoint_union(loop(), theta(false))));
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].vertex.kind == PointKind::kVertex);
  CHECK(c.in_new_piece[static_cast<std::size_t>(c.pairs[0].cycle.rep)]);
  CHECK_FALSE(c.in_new_piece[static_cast<std::size_t>(c.pairs[0].vertex.rep)]);
}

TEST_CASE("collapsing the encircling loop creates a semistable circle") {
  CollapseResult c = edge_collapse(three_petals(), EdgeSet{2});
  CHECK(canonical_bytes(c.graph) == canonical_bytes(disjoint_union(disjoint_union(loop(), loop()), circle())));
  REQUIRE(c.pairs.size() == 2);
  CHECK(c.pairs[0].cycle.rep != c.pairs[1].cycle.rep);
  CHECK(c.pairs[0].cycle.kind == PointKind::kCircleCusp);
}

TEST_CASE("total collapse moves the cusp label to the vertex") {
  // Loop bounding a labeled face, attached to a labeled vertex by an edge.
  RibbonGraph g = dumbbell({{1, cusp(0)}, {2, vertex(2)}});
  CollapseResult c = edge_collapse(g, EdgeSet{0});
  CHECK(c.semistable_part.empty());
  DerivedStructure d = derive(c.graph);
  auto vl = vertex_labels(c.graph, d);
  int labeled = 0;
  for (const auto& v : vl) labeled += v.has_value();
  CHECK(labeled == 2);
}

TEST_CASE("collapse commutes on vertex-disjoint pairs") {
  std::mt19937 rng(29);
  int done = 0;
  for (int trial = 0; done < 1000 && trial < 200000; ++trial) {
    RibbonGraph g = with_random_vertex_labels(random_graph(2 + static_cast<int>(rng() % 5), rng), rng);
    EdgeSet z1 = random_subset(g, rng);
    DerivedStructure d = derive(g);
    auto m1 = z1.half_edge_mask(g);
    std::vector<char> touched(d.vertices.size(), 0);
    for (int h = 0; h < g.half_edge_count(); ++h) {
      if (m1[static_cast<std::size_t>(h)]) touched[static_cast<std::size_t>(d.vertex_of[static_cast<std::size_t>(h)])] = 1;
    }
    std::vector<int> free_edges;
    for (int e : g.edges()) {
      if (touched[static_cast<std::size_t>(d.vertex_of[static_cast<std::size_t>(e)])] ||
          touched[static_cast<std::size_t>(d.vertex_of[static_cast<std::size_t>(g.sigma1(e))])]) continue;
      if (rng() % 3) free_edges.push_back(e);
    }
    EdgeSet z2(std::move(free_edges));
    if (z1.empty() || z2.empty() || z1.size() + z2.size() >= g.edge_count()) continue;
    CollapseResult both = edge_collapse(g, z1.unite(z2));
    CollapseResult first = edge_collapse(g, z1);
    std::vector<int> to_new(static_cast<std::size_t>(g.half_edge_count()), -1);
    for (std::size_t h = 0; h < first.origin.size(); ++h) {
      if (!first.in_new_piece[h]) to_new[static_cast<std::size_t>(first.origin[h])] = static_cast<int>(h);
    }
    EdgeSet z2_image = map_edges(g, first.graph, z2, to_new);
    CollapseResult second = edge_collapse(first.graph, z2_image);
    CHECK(canonical_bytes(both.graph) == canonical_bytes(second.graph));
    ++done;
  }
  CHECK(done == 1000);
}

TEST_CASE("blow-up adds an injective boundary cycle") {
  RibbonGraph t = theta(false);
  BlowUpResult b = blow_up(t, 0);
  DerivedStructure d = derive(b.graph);
  CHECK(b.graph.edge_count() == 6);
  CHECK(d.vertices.size() == 4);
  CHECK(d.cusp_count() == 4);
  int c = d.cycle_of[static_cast<std::size_t>(b.cycle_rep)];
  CHECK(d.boundary_cycles[static_cast<std::size_t>(c)].size() == 3);
  CHECK(is_injective_cycle(b.graph, d, c));
  CHECK(component_genus(b.graph, 0) == 0);
  // The torus boundary cycle is not injective.
  RibbonGraph tor = torus();
  CHECK_FALSE(is_injective_cycle(tor, derive(tor), 0));
  CHECK_THROWS_AS(blow_up(dumbbell({{1, vertex(0)}}), 0), GraphError);
}
