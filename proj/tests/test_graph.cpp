#include <doctest.h>

#include "evinet/graph.hpp"
#include "test_util.hpp"

using namespace evinet;
using evinet::test::from_edges;
using evinet::test::random_digraph;

TEST_CASE("build: single directed edge") {
  const auto g = from_edges({{"a", "b", 1}}, true);
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.has_arc(0, 1));
  CHECK_FALSE(g.has_arc(1, 0));
}

TEST_CASE("build: duplicate records aggregate by weight sum") {
  const auto g = from_edges({{"a", "b", 1}, {"a", "b", 2}}, true);
  CHECK(g.num_edges() == 1);
  CHECK(g.arc_weight(0, 1) == doctest::Approx(3.0));
}

TEST_CASE("build: undirected input stored as symmetric arc pair") {
  const auto g = from_edges({{"a", "b", 1}}, false);
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.num_arcs() == 2);
  CHECK(g.has_arc(0, 1));
  CHECK(g.has_arc(1, 0));
}

TEST_CASE("build: self-loops dropped with a count, zero weight reads as 1") {
  const auto g = from_edges({{"a", "a", 5}, {"a", "b", 0}}, true);
  CHECK(g.self_loops_dropped() == 1);
  CHECK(g.num_edges() == 1);
  CHECK(g.arc_weight(0, 1) == doctest::Approx(1.0));
  CHECK_FALSE(g.weighted());
}

TEST_CASE("build: empty and all-self-loop inputs are errors") {
  CHECK_THROWS_AS(EvidenceNetwork::build({}, true), InputError);
  CHECK_THROWS_AS(from_edges({{"a", "a", 1}}, true), InputError);
}

TEST_CASE("build: labels interned in first-seen order") {
  const auto g = from_edges({{"z", "m", 1}, {"a", "z", 1}}, true);
  CHECK(g.nodes().label(0) == "z");
  CHECK(g.nodes().label(1) == "m");
  CHECK(g.nodes().label(2) == "a");
}

TEST_CASE("degree: directed single edge") {
  const auto g = from_edges({{"a", "b", 1}}, true);
  CHECK(g.degree(0, DegreeMode::Out) == 1);
  CHECK(g.degree(0, DegreeMode::In) == 0);
}

TEST_CASE("degree: 2-cycle total") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "a", 1}}, true);
  CHECK(g.degree(0, DegreeMode::Total) == 2);
}

TEST_CASE("degree: isolated node is 0 in all modes") {
  // isolated nodes appear via restriction
  const auto g1 = from_edges({{"a", "b", 1}, {"a", "c", 1}}, true, "g1");
  const auto g2 = from_edges({{"b", "x", 1}, {"c", "x", 1}}, true, "g2");
  const auto pair = restrict_to_common(g1, g2);
  // common set {b, c}; no arcs survive in g1
  REQUIRE(pair.num_common() == 2);
  CHECK(pair.first.num_edges() == 0);
  for (NodeId u = 0; u < 2; ++u) {
    CHECK(pair.first.degree(u, DegreeMode::In) == 0);
    CHECK(pair.first.degree(u, DegreeMode::Out) == 0);
    CHECK(pair.first.degree(u, DegreeMode::Total) == 0);
  }
  CHECK_THROWS_AS(pair.first.degree(7, DegreeMode::In), InputError);
}

TEST_CASE("degree: undirected total is the neighbor count") {
  const auto g = from_edges({{"a", "b", 1}, {"a", "c", 1}}, false);
  CHECK(g.degree(0, DegreeMode::Total) == 2);
  CHECK(g.degree(1, DegreeMode::Total) == 1);
}

TEST_CASE("restrict_to_common: label intersection") {
  const auto g1 =
      from_edges({{"a", "b", 1}, {"b", "c", 1}}, true, "g1");
  const auto g2 =
      from_edges({{"b", "c", 1}, {"c", "d", 1}}, true, "g2");
  const auto pair = restrict_to_common(g1, g2);
  CHECK(pair.num_common() == 2);
  CHECK(pair.first.nodes().find("b").has_value());
  CHECK(pair.first.nodes().find("c").has_value());
  CHECK_FALSE(pair.first.nodes().find("a").has_value());
  // both members share one node table
  CHECK(pair.first.node_table().get() == pair.second.node_table().get());
}

TEST_CASE("restrict_to_common: identical networks give identical copies") {
  const auto g = random_digraph(12, 30, 77, true);
  const auto pair = restrict_to_common(g, g);
  CHECK(pair.first.num_nodes() == g.num_nodes());
  CHECK(pair.first.num_edges() == g.num_edges());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto orig = g.nodes().label(u);
    const NodeId cu = *pair.first.nodes().find(orig);
    for (const HalfEdge& e : g.out_neighbors(u)) {
      const NodeId cv = *pair.first.nodes().find(g.nodes().label(e.node));
      CHECK(pair.first.arc_weight(cu, cv) == doctest::Approx(e.weight));
      CHECK(pair.second.arc_weight(cu, cv) == doctest::Approx(e.weight));
    }
  }
}

TEST_CASE("restrict_to_common: empty intersection names both networks") {
  const auto g1 = from_edges({{"a", "b", 1}}, true, "left");
  const auto g2 = from_edges({{"x", "y", 1}}, true, "right");
  try {
    restrict_to_common(g1, g2);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("left") != std::string::npos);
    CHECK(what.find("right") != std::string::npos);
  }
}

TEST_CASE("property: in-adjacency is the exact transpose of out-adjacency") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto g = random_digraph(3 + seed % 20, 2 + seed % 50, seed, true);
    std::size_t out_arcs = 0, in_arcs = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      out_arcs += g.out_degree(u);
      in_arcs += g.in_degree(u);
      for (const HalfEdge& e : g.out_neighbors(u)) {
        bool found = false;
        for (const HalfEdge& back : g.in_neighbors(e.node))
          if (back.node == u && back.weight == e.weight) found = true;
        REQUIRE(found);
      }
    }
    REQUIRE(out_arcs == in_arcs);
  }
}

TEST_CASE("property: edge-record round trip rebuilds an identical graph") {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const bool directed = seed % 2 == 0;
    const auto g = directed
                       ? random_digraph(3 + seed % 15, 2 + seed % 40, seed, true)
                       : test::random_undirected(3 + seed % 15, 2 + seed % 40,
                                                 seed, true);
    const auto records = g.to_edge_records();
    const auto h = EvidenceNetwork::build(records, directed);
    REQUIRE(h.num_nodes() == g.num_nodes());
    REQUIRE(h.num_arcs() == g.num_arcs());
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      const auto label = g.nodes().label(u);
      const auto hu = h.nodes().find(label);
      REQUIRE(hu.has_value());
      for (const HalfEdge& e : g.out_neighbors(u)) {
        const auto hv = h.nodes().find(g.nodes().label(e.node));
        REQUIRE(hv.has_value());
        REQUIRE(h.arc_weight(*hu, *hv) == e.weight);
      }
    }
  }
}

TEST_CASE("property: restriction keeps only arcs inside the common set") {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const auto g1 = random_digraph(10, 25, seed * 2 + 1, true);
    const auto g2 = random_digraph(10, 25, seed * 2 + 2, true);
    RestrictedPair pair{g1, g2};
    try {
      pair = restrict_to_common(g1, g2);
    } catch (const InputError&) {
      continue;  // disjoint label sets
    }
    for (NodeId u = 0; u < pair.first.num_nodes(); ++u) {
      const auto& label_u = pair.first.nodes().label(u);
      REQUIRE(g1.nodes().find(label_u).has_value());
      REQUIRE(g2.nodes().find(label_u).has_value());
      for (const HalfEdge& e : pair.first.out_neighbors(u)) {
        const auto& label_v = pair.first.nodes().label(e.node);
        const double w =
            g1.arc_weight(*g1.nodes().find(label_u), *g1.nodes().find(label_v));
        REQUIRE(w == e.weight);
      }
    }
  }
}
