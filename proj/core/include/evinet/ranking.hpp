#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evinet/community.hpp"

namespace evinet {

// Allocation ids ordered best-first by one (network, function) source.
// Ties in score are broken by allocation id for materialization and
// handled properly inside tau-b.
struct Ranking {
  std::vector<std::string> ids;
  std::vector<double> scores;  // aligned with ids, non-increasing
  std::string network_id;
  std::string function;
  std::vector<std::pair<std::size_t, std::size_t>> tie_groups;  // [begin,end)

  std::optional<double> score_of(const std::string& id) const;
};

Ranking make_ranking(const QualityScoreTable& table,
                     const std::string& network_id, QualityFunction function);

struct KendallResult {
  double tau = 0.0;  // tau-b
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;
  bool exact_p = false;  // inversion-count enumeration vs normal approx
};

// tau-b over aligned score vectors. Exact p by inversion-count enumeration
// for tie-free data with n < 30, tie-adjusted normal approximation
// otherwise. Throws on n < 2 or degenerate (all-tied) input.
KendallResult kendall_tau_scores(std::span<const double> x,
                                 std::span<const double> y);

// Restricts to items present in both rankings; with restrict_top, to the
// intersection of the two top-k sets. Throws when < 2 items remain.
KendallResult kendall_tau(const Ranking& r1, const Ranking& r2,
                          std::optional<std::size_t> restrict_top = {});

struct OverlapCurvePoint {
  std::size_t k;
  std::size_t observed;  // |top_k(r1) & top_k(r2)|
  double expected;       // k^2 / n
};

struct OverlapCurve {
  std::vector<OverlapCurvePoint> points;
  std::size_t universe = 0;  // n
};

// Rankings must cover the same id universe; throws when some k > n.
OverlapCurve topk_overlap_curve(const Ranking& r1, const Ranking& r2,
                                std::span<const std::size_t> ks);

// P(m) = C(k,m) C(n-k,k-m) / C(n,k); hypergeometric special case with
// mean k^2/n. Throws on parameter violations (m > k, k > n, k-m > n-k).
double overlap_pmf(std::uint64_t n, std::uint64_t k, std::uint64_t m);

}  // namespace evinet
