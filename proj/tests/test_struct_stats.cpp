#include <doctest.h>

#include <algorithm>
#include <set>

#include "evinet/struct_stats.hpp"
#include "test_util.hpp"

using namespace evinet;
using evinet::test::from_edges;
using evinet::test::random_digraph;
using evinet::test::random_undirected;

namespace {

// reachability by plain BFS, independent of the library's traversals
bool reaches(const EvidenceNetwork& g, NodeId from, NodeId to) {
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const NodeId u = queue.back();
    queue.pop_back();
    if (u == to) return true;
    for (const HalfEdge& e : g.out_neighbors(u))
      if (!seen[e.node]) {
        seen[e.node] = true;
        queue.push_back(e.node);
      }
  }
  return false;
}

}  // namespace

TEST_CASE("scc: directed 3-cycle is one component") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}}, true);
  const auto scc = strongly_connected_components(g);
  CHECK(scc.count == 1);
  CHECK(scc.largest_size == 3);
}

TEST_CASE("scc: path gives singleton components") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "c", 1}}, true);
  const auto scc = strongly_connected_components(g);
  CHECK(scc.count == 3);
  CHECK(scc.largest_size == 1);
}

TEST_CASE("scc: mutual pair plus tail") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "a", 1}, {"b", "c", 1}}, true);
  const auto scc = strongly_connected_components(g);
  CHECK(scc.count == 2);
  CHECK(scc.largest_size == 2);
  CHECK(scc.component_of[0] == scc.component_of[1]);
  CHECK(scc.component_of[0] != scc.component_of[2]);
}

TEST_CASE("bowtie: IN and OUT around a 2-node core") {
  const auto g = from_edges(
      {{"x", "a", 1}, {"a", "b", 1}, {"b", "a", 1}, {"b", "y", 1}}, true);
  const auto bt = bowtie_decompose(g);
  const auto label = [&](const std::vector<NodeId>& v) {
    std::set<std::string> out;
    for (NodeId u : v) out.insert(g.nodes().label(u));
    return out;
  };
  CHECK(label(bt.scc_nodes) == std::set<std::string>{"a", "b"});
  CHECK(label(bt.in_nodes) == std::set<std::string>{"x"});
  CHECK(label(bt.out_nodes) == std::set<std::string>{"y"});
  CHECK(bt.misc_nodes.empty());
  CHECK(bt.wcc_star_size == 4);
}

TEST_CASE("bowtie: full cycle has empty IN/OUT/MISC") {
  const auto g = from_edges(
      {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}}, true);
  const auto bt = bowtie_decompose(g);
  CHECK(bt.scc_nodes.size() == 4);
  CHECK(bt.in_nodes.empty());
  CHECK(bt.out_nodes.empty());
  CHECK(bt.misc_nodes.empty());
}

TEST_CASE("bowtie: two disconnected 2-cycles") {
  const auto g = from_edges(
      {{"a", "b", 1}, {"b", "a", 1}, {"c", "d", 1}, {"d", "c", 1}}, true);
  const auto bt = bowtie_decompose(g);
  CHECK(bt.scc_nodes.size() == 2);
  // ties for largest SCC go to the one holding the smallest node index
  CHECK(std::find(bt.scc_nodes.begin(), bt.scc_nodes.end(), NodeId{0}) !=
        bt.scc_nodes.end());
  CHECK(bt.wcc_star_size == 2);
  CHECK(bt.wcc_star_size >=
        bt.in_nodes.size() + bt.scc_nodes.size() + bt.out_nodes.size());
}

TEST_CASE("property: bowtie reachability contract (n <= 50)") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto g = random_digraph(4 + seed % 47, 3 + seed % 120, seed);
    const auto bt = bowtie_decompose(g);
    REQUIRE(!bt.scc_nodes.empty());
    const NodeId probe = bt.scc_nodes.front();
    for (NodeId u : bt.in_nodes) {
      REQUIRE(reaches(g, u, probe));
      REQUIRE_FALSE(reaches(g, probe, u));
    }
    for (NodeId u : bt.out_nodes) {
      REQUIRE(reaches(g, probe, u));
      REQUIRE_FALSE(reaches(g, u, probe));
    }
    const std::size_t total = bt.scc_nodes.size() + bt.in_nodes.size() +
                              bt.out_nodes.size() + bt.misc_nodes.size();
    REQUIRE(total == g.num_nodes());
    REQUIRE(bt.wcc_star_size >=
            bt.in_nodes.size() + bt.scc_nodes.size() + bt.out_nodes.size());
  }
}

TEST_CASE("symmetric links: mutual pair is 1, single arc is 0") {
  CHECK(symmetric_link_fraction(
            from_edges({{"a", "b", 1}, {"b", "a", 1}}, true)) ==
        doctest::Approx(1.0));
  CHECK(symmetric_link_fraction(from_edges({{"a", "b", 1}}, true)) ==
        doctest::Approx(0.0));
}

TEST_CASE("symmetric links: 2 of 3 arcs reciprocated") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "a", 1}, {"b", "c", 1}}, true);
  CHECK(symmetric_link_fraction(g) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("krackhardt: path, 2-cycle and mixed case") {
  CHECK(krackhardt_hierarchy(from_edges({{"a", "b", 1}, {"b", "c", 1}}, true))
            .value == doctest::Approx(1.0));
  CHECK(krackhardt_hierarchy(from_edges({{"a", "b", 1}, {"b", "a", 1}}, true))
            .value == doctest::Approx(0.0));
  const auto g = from_edges({{"a", "b", 1}, {"b", "a", 1}, {"b", "c", 1}}, true);
  CHECK(krackhardt_hierarchy(g).value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("krackhardt: sampled estimate tracks the exact value") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    const auto g = random_digraph(150, 450, seed, false, true);
    const double exact = krackhardt_hierarchy(g).value;
    const auto sampled = krackhardt_hierarchy(g, PairSample{10000, 99});
    CHECK(sampled.sampled);
    CHECK(sampled.connected_pairs > 0);
    CHECK(std::abs(sampled.value - exact) <= 0.05);
  }
}

TEST_CASE("paths: undirected path a-b-c") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "c", 1}}, false);
  const auto stats = path_length_stats(g, PathMode::Undirected);
  CHECK(stats.diameter == 2);
  CHECK(stats.apl == doctest::Approx(4.0 / 3.0));
  CHECK(stats.length_histogram.at(1) == 2);
  CHECK(stats.length_histogram.at(2) == 1);
}

TEST_CASE("paths: complete graph K3") {
  const auto g = from_edges(
      {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}, false);
  const auto stats = path_length_stats(g, PathMode::Undirected);
  CHECK(stats.diameter == 1);
  CHECK(stats.apl == doctest::Approx(1.0));
}

TEST_CASE("paths: directed chain counts reachable ordered pairs") {
  const auto g = from_edges({{"a", "b", 1}, {"b", "c", 1}}, true);
  const auto stats = path_length_stats(g, PathMode::Directed);
  CHECK(stats.diameter == 2);
  CHECK(stats.apl == doctest::Approx((1.0 + 1.0 + 2.0) / 3.0));
}

TEST_CASE("paths: no reachable pair is an error") {
  const auto g1 = from_edges({{"a", "b", 1}, {"a", "c", 1}}, true, "g1");
  const auto g2 = from_edges({{"b", "x", 1}, {"c", "x", 1}}, true, "g2");
  const auto pair = restrict_to_common(g1, g2);  // two isolated nodes
  CHECK_THROWS_AS(path_length_stats(pair.first, PathMode::Directed),
                  InputError);
}

TEST_CASE("property: undirected histogram counts each unordered pair once") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_undirected(12, 20, seed);
    const auto und = path_length_stats(g, PathMode::Undirected);
    // the same graph walked as a directed symmetric graph enumerates both
    // (u,v) and (v,u): every bucket exactly doubles
    const auto sym = EvidenceNetwork::build(
        [&] {
          std::vector<EdgeRecord> recs;
          for (const auto& r : g.to_edge_records()) {
            recs.push_back(r);
            recs.push_back({r.dst, r.src, r.weight});
          }
          return recs;
        }(),
        true);
    const auto dir = path_length_stats(sym, PathMode::Directed);
    REQUIRE(dir.length_histogram.size() == und.length_histogram.size());
    for (const auto& [len, count] : und.length_histogram)
      REQUIRE(dir.length_histogram.at(len) == 2 * count);
    REQUIRE(dir.apl == doctest::Approx(und.apl));
    REQUIRE(dir.diameter == und.diameter);
  }
}

TEST_CASE("transitivity: triangle, path, K4 minus an edge") {
  CHECK(transitivity(from_edges(
            {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}, false)) ==
        doctest::Approx(1.0));
  CHECK(transitivity(from_edges({{"a", "b", 1}, {"b", "c", 1}}, false)) ==
        doctest::Approx(0.0));
  const auto k4_minus = from_edges({{"a", "b", 1},
                                    {"a", "c", 1},
                                    {"a", "d", 1},
                                    {"b", "c", 1},
                                    {"b", "d", 1}},
                                   false);
  CHECK(transitivity(k4_minus) == doctest::Approx(0.75));
  CHECK_THROWS_AS(transitivity(from_edges({{"a", "b", 1}}, false)),
                  InputError);
}

TEST_CASE("ccdf: [1,1,2] and star K1,3") {
  const auto path = from_edges({{"a", "b", 1}, {"b", "c", 1}}, false);
  const auto ccdf = degree_ccdf(path, DegreeMode::Total);
  REQUIRE(ccdf.size() == 2);
  CHECK(ccdf[0].degree == 1);
  CHECK(ccdf[0].fraction == doctest::Approx(1.0));
  CHECK(ccdf[1].degree == 2);
  CHECK(ccdf[1].fraction == doctest::Approx(1.0 / 3.0));

  const auto star = from_edges(
      {{"h", "a", 1}, {"h", "b", 1}, {"h", "c", 1}}, false);
  const auto sc = degree_ccdf(star, DegreeMode::Total);
  REQUIRE(sc.size() == 2);
  CHECK(sc[0].degree == 1);
  CHECK(sc[0].fraction == doctest::Approx(1.0));
  CHECK(sc[1].degree == 3);
  CHECK(sc[1].fraction == doctest::Approx(0.25));
}

TEST_CASE("ccdf: regular graph is a single step") {
  const auto ring = from_edges(
      {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}}, false);
  const auto ccdf = degree_ccdf(ring, DegreeMode::Total);
  REQUIRE(ccdf.size() == 1);
  CHECK(ccdf[0].fraction == doctest::Approx(1.0));
}

TEST_CASE("property: ccdf is non-increasing and starts at 1.0") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto g = random_digraph(4 + seed % 25, 3 + seed % 60, seed);
    for (DegreeMode mode :
         {DegreeMode::In, DegreeMode::Out, DegreeMode::Total}) {
      const auto ccdf = degree_ccdf(g, mode);
      REQUIRE(!ccdf.empty());
      REQUIRE(ccdf.front().fraction == doctest::Approx(1.0));
      for (std::size_t i = 1; i < ccdf.size(); ++i) {
        REQUIRE(ccdf[i].fraction <= ccdf[i - 1].fraction);
        REQUIRE(ccdf[i].degree > ccdf[i - 1].degree);
      }
    }
  }
}

TEST_CASE("knn: star K1,3 and 2-regular ring") {
  const auto star = from_edges(
      {{"h", "a", 1}, {"h", "b", 1}, {"h", "c", 1}}, false);
  const auto profile = knn_profile(star, DegreeMode::Total);
  REQUIRE(profile.points.size() == 2);
  CHECK(profile.points[0].degree == 1);
  CHECK(profile.points[0].mean_neighbor_degree == doctest::Approx(3.0));
  CHECK(profile.points[0].node_count == 3);
  CHECK(profile.points[1].degree == 3);
  CHECK(profile.points[1].mean_neighbor_degree == doctest::Approx(1.0));

  const auto ring = from_edges(
      {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}}, false);
  const auto rp = knn_profile(ring, DegreeMode::Total);
  REQUIRE(rp.points.size() == 1);
  CHECK(rp.points[0].degree == 2);
  CHECK(rp.points[0].mean_neighbor_degree == doctest::Approx(2.0));
}

TEST_CASE("property: knn profile ignores node labels") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = random_undirected(15, 30, seed);
    // relabel every node; the profile cannot move
    std::vector<EdgeRecord> relabeled;
    for (const auto& r : g.to_edge_records())
      relabeled.push_back({"x" + r.src, "x" + r.dst, r.weight});
    const auto h = EvidenceNetwork::build(relabeled, false);
    const auto pg = knn_profile(g, DegreeMode::Total);
    const auto ph = knn_profile(h, DegreeMode::Total);
    REQUIRE(pg.points.size() == ph.points.size());
    for (std::size_t i = 0; i < pg.points.size(); ++i) {
      REQUIRE(pg.points[i].degree == ph.points[i].degree);
      REQUIRE(pg.points[i].mean_neighbor_degree ==
              doctest::Approx(ph.points[i].mean_neighbor_degree));
      REQUIRE(pg.points[i].node_count == ph.points[i].node_count);
    }
  }
}
