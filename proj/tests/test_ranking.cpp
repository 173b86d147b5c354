#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evinet/ranking.hpp"
#include "evinet/rng.hpp"

using namespace evinet;

namespace {

Ranking ranking_of(const std::vector<std::pair<std::string, double>>& rows,
                   const std::string& net = "g") {
  QualityScoreTable table;
  for (const auto& [id, score] : rows)
    table.rows.push_back({id, net, QualityFunction::Modularity, score, {}});
  return make_ranking(table, net, QualityFunction::Modularity);
}

Ranking ranking_from_order(const std::vector<std::string>& ids,
                           const std::string& net = "g") {
  std::vector<std::pair<std::string, double>> rows;
  for (std::size_t i = 0; i < ids.size(); ++i)
    rows.emplace_back(ids[i], static_cast<double>(ids.size() - i));
  return ranking_of(rows, net);
}

}  // namespace

TEST_CASE("make_ranking: ties broken by allocation id and recorded") {
  const auto r = ranking_of(
      {{"bbb", 1.0}, {"aaa", 1.0}, {"top", 5.0}, {"low", -2.0}});
  REQUIRE(r.ids.size() == 4);
  CHECK(r.ids[0] == "top");
  CHECK(r.ids[1] == "aaa");
  CHECK(r.ids[2] == "bbb");
  CHECK(r.ids[3] == "low");
  REQUIRE(r.tie_groups.size() == 1);
  CHECK(r.tie_groups[0].first == 1);
  CHECK(r.tie_groups[0].second == 3);
}

TEST_CASE("kendall: identical and reversed rankings") {
  const auto r1 = ranking_from_order({"a", "b", "c", "d"}, "g1");
  const auto r2 = ranking_from_order({"a", "b", "c", "d"}, "g2");
  CHECK(kendall_tau(r1, r2).tau == doctest::Approx(1.0));
  const auto rev = ranking_from_order({"d", "c", "b", "a"}, "g3");
  CHECK(kendall_tau(r1, rev).tau == doctest::Approx(-1.0));
}

TEST_CASE("kendall: one swapped pair out of three gives 1/3") {
  const auto r1 = ranking_from_order({"1", "2", "3"}, "g1");
  const auto r2 = ranking_from_order({"1", "3", "2"}, "g2");
  const auto kr = kendall_tau(r1, r2);
  CHECK(kr.tau == doctest::Approx(1.0 / 3.0));
  CHECK(kr.exact_p);
  // every permutation of 3 items has |T| >= 1: the two-sided p is 1
  CHECK(kr.p_value == doctest::Approx(1.0));
}

TEST_CASE("kendall: fewer than two common items is an error") {
  const auto r1 = ranking_from_order({"a", "b"}, "g1");
  const auto r2 = ranking_from_order({"x", "y"}, "g2");
  CHECK_THROWS_AS(kendall_tau(r1, r2), InputError);
}

TEST_CASE("kendall: top-k restriction uses the top-set intersection") {
  const auto r1 = ranking_from_order({"a", "b", "c", "d", "e", "f"}, "g1");
  const auto r2 = ranking_from_order({"b", "a", "f", "c", "d", "e"}, "g2");
  // top-3 sets {a,b,c} and {b,a,f}: intersection {a,b}
  const auto kr = kendall_tau(r1, r2, 3);
  CHECK(kr.n == 2);
  CHECK(kr.tau == doctest::Approx(-1.0));  // a before b vs b before a
}

TEST_CASE("kendall: tie handling via tau-b") {
  // x has one tied pair, y fully ordered
  const std::vector<double> x{3.0, 2.0, 2.0, 1.0};
  const std::vector<double> y{4.0, 3.0, 2.0, 1.0};
  const auto kr = kendall_tau_scores(x, y);
  // P = 5, Q = 0, tied_x = 1: tau-b = 5 / sqrt(5 * 6)
  CHECK(kr.tau == doctest::Approx(5.0 / std::sqrt(30.0)));
  CHECK_FALSE(kr.exact_p);
}

TEST_CASE("kendall: exact p for a perfect short ranking") {
  const auto r1 = ranking_from_order({"a", "b", "c", "d", "e"}, "g1");
  const auto r2 = ranking_from_order({"a", "b", "c", "d", "e"}, "g2");
  const auto kr = kendall_tau(r1, r2);
  CHECK(kr.exact_p);
  // only the two extreme permutations of 5! = 120 reach |T| = 10
  CHECK(kr.p_value == doctest::Approx(2.0 / 120.0));
}

TEST_CASE("topk overlap: identical, expected column, disjoint") {
  const auto r1 = ranking_from_order({"a", "b", "c", "d"}, "g1");
  const auto r2 = ranking_from_order({"a", "b", "c", "d"}, "g2");
  const std::vector<std::size_t> ks{1, 2, 3, 4};
  const auto curve = topk_overlap_curve(r1, r2, ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(curve.points[i].observed == ks[i]);
    CHECK(curve.points[i].expected ==
          doctest::Approx(static_cast<double>(ks[i] * ks[i]) / 4.0));
  }

  const auto r3 = ranking_from_order({"d", "c", "b", "a"}, "g3");
  const auto rev = topk_overlap_curve(r1, r3, std::vector<std::size_t>{2});
  CHECK(rev.points[0].observed == 0);  // top-2 {a,b} vs {d,c}

  CHECK_THROWS_AS(topk_overlap_curve(r1, r2, std::vector<std::size_t>{9}),
                  InputError);
}

TEST_CASE("topk overlap: n=100, k=10 expects exactly 1.0") {
  std::vector<std::string> ids;
  for (int i = 0; i < 100; ++i) ids.push_back("c" + std::to_string(i));
  const auto r1 = ranking_from_order(ids, "g1");
  const auto r2 = ranking_from_order(ids, "g2");
  const auto curve = topk_overlap_curve(r1, r2, std::vector<std::size_t>{10});
  CHECK(curve.points[0].expected == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlap pmf: C(2,2)C(2,0)/C(4,2) and error cases") {
  CHECK(overlap_pmf(4, 2, 2) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(overlap_pmf(4, 2, 3), InputError);   // m > k
  CHECK_THROWS_AS(overlap_pmf(4, 3, 1), InputError);   // k - m > n - k
  CHECK_THROWS_AS(overlap_pmf(4, 5, 1), InputError);   // k > n
}

TEST_CASE("property: pmf sums to 1 with mean k^2/n") {
  for (const auto& [n, k] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {4, 2}, {10, 3}, {50, 7}, {100, 10}, {500, 50}, {1000, 200}}) {
    double total = 0, mean = 0;
    const std::uint64_t m_lo = k > n - k ? k - (n - k) : 0;
    for (std::uint64_t m = m_lo; m <= k; ++m) {
      const double p = overlap_pmf(n, k, m);
      total += p;
      mean += p * static_cast<double>(m);
    }
    REQUIRE(std::abs(total - 1.0) < 1e-9);
    REQUIRE(std::abs(mean - static_cast<double>(k * k) /
                                static_cast<double>(n)) < 1e-9);
  }
}

TEST_CASE("property: topk overlap is symmetric in its arguments") {
  Rng rng(2211);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 5 + rng.uniform(40);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("i" + std::to_string(i));
    auto shuffled = ids;
    rng.shuffle(shuffled);
    const auto r1 = ranking_from_order(ids, "g1");
    const auto r2 = ranking_from_order(shuffled, "g2");
    std::vector<std::size_t> ks{1, n / 2 > 0 ? n / 2 : 1, n};
    const auto ab = topk_overlap_curve(r1, r2, ks);
    const auto ba = topk_overlap_curve(r2, r1, ks);
    for (std::size_t i = 0; i < ks.size(); ++i)
      REQUIRE(ab.points[i].observed == ba.points[i].observed);
  }
}

TEST_CASE("property: tau flips sign when one ranking is reversed") {
  Rng rng(3344);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 3 + rng.uniform(20);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.next_u64() % 100000);  // ties unlikely
      y[i] = static_cast<double>(rng.next_u64() % 100000);
    }
    auto y_rev = y;
    for (double& v : y_rev) v = -v;
    const auto a = kendall_tau_scores(x, y);
    const auto b = kendall_tau_scores(x, y_rev);
    REQUIRE(a.tau == doctest::Approx(-b.tau));
  }
}

TEST_CASE("property: shuffled-ranking overlap matches k^2/n (Monte Carlo)") {
  const std::size_t n = 50, k = 10, trials = 2000;
  std::vector<std::uint32_t> pos(n);
  Rng rng(515151);
  double sum = 0, sum_sq = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    // overlap of two independent permutations = overlap of one random
    // permutation's top-k with a fixed top-k
    std::iota(pos.begin(), pos.end(), 0);
    rng.shuffle(pos);
    std::size_t m = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (pos[i] < k) ++m;
    sum += static_cast<double>(m);
    sum_sq += static_cast<double>(m) * static_cast<double>(m);
  }
  const double mean = sum / trials;
  const double var = sum_sq / trials - mean * mean;
  const double se = std::sqrt(var / trials);
  const double expected = static_cast<double>(k * k) / static_cast<double>(n);
  CHECK(std::abs(mean - expected) <= 3 * se);
}
