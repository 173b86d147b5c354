#include "evinet/ranking.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace evinet {

std::optional<double> Ranking::score_of(const std::string& id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return scores[i];
  return std::nullopt;
}

Ranking make_ranking(const QualityScoreTable& table,
                     const std::string& network_id, QualityFunction function) {
  std::vector<std::pair<std::string, double>> entries;
  for (const QualityScore& row : table.rows)
    if (row.network_id == network_id && row.function == function)
      entries.emplace_back(row.allocation_id, row.score);
  if (entries.empty())
    throw InputError("make_ranking: no scores for network '" + network_id +
                     "' and function " + quality_function_name(function));

  // best first; ties broken by allocation id so materialization is stable
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second > b.second
                                          : a.first < b.first;
            });

  Ranking r;
  r.network_id = network_id;
  r.function = quality_function_name(function);
  for (auto& [id, score] : entries) {
    r.ids.push_back(std::move(id));
    r.scores.push_back(score);
  }
  std::size_t i = 0;
  while (i < r.scores.size()) {
    std::size_t j = i;
    while (j < r.scores.size() && r.scores[j] == r.scores[i]) ++j;
    if (j - i > 1) r.tie_groups.emplace_back(i, j);
    i = j;
  }
  return r;
}

namespace {

// Null distribution of the inversion count of a random permutation
// (Mahonian numbers), normalized; exactly the distribution obtained by
// enumerating all n! orders.
std::vector<double> inversion_distribution(std::size_t n) {
  std::vector<double> dist{1.0};
  for (std::size_t i = 2; i <= n; ++i) {
    // convolve with uniform{0..i-1} via prefix sums
    std::vector<double> next(dist.size() + i - 1, 0.0);
    double window = 0.0;
    for (std::size_t q = 0; q < next.size(); ++q) {
      if (q < dist.size()) window += dist[q];
      if (q >= i && q - i < dist.size()) window -= dist[q - i];
      next[q] = window;
    }
    dist.swap(next);
  }
  double total = 0;
  for (double c : dist) total += c;
  for (double& c : dist) c /= total;
  return dist;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

KendallResult kendall_tau_scores(std::span<const double> x,
                                 std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size())
    throw InputError("kendall_tau: score vectors differ in length");
  if (n < 2) throw InputError("kendall_tau: need at least 2 items");

  std::size_t concordant = 0, discordant = 0;
  std::size_t tied_x = 0, tied_y = 0;  // pairs
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0) ++tied_x;
      if (dy == 0) ++tied_y;
      if (dx == 0 || dy == 0) continue;
      if ((dx > 0) == (dy > 0)) ++concordant;
      else ++discordant;
    }

  const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
  const double denom = std::sqrt((n0 - static_cast<double>(tied_x)) *
                                 (n0 - static_cast<double>(tied_y)));
  if (denom == 0)
    throw InputError("kendall_tau: a ranking has all items tied");

  KendallResult result;
  result.n = n;
  const double s = static_cast<double>(concordant) -
                   static_cast<double>(discordant);
  result.tau = s / denom;

  const bool has_ties = tied_x > 0 || tied_y > 0;
  if (!has_ties && n < 30) {
    // exact two-sided p over the permutation null
    const auto dist = inversion_distribution(n);
    const double threshold = std::abs(s);
    double p = 0;
    for (std::size_t q = 0; q < dist.size(); ++q) {
      const double stat = n0 - 2.0 * static_cast<double>(q);
      if (std::abs(stat) >= threshold - 1e-9) p += dist[q];
    }
    result.p_value = std::min(p, 1.0);
    result.exact_p = true;
    return result;
  }

  // tie-adjusted normal approximation
  std::map<double, std::size_t> gx, gy;
  for (double v : x) ++gx[v];
  for (double v : y) ++gy[v];
  auto tie_terms = [](const std::map<double, std::size_t>& groups) {
    double t1 = 0, t2 = 0, t3 = 0;
    for (const auto& [value, t] : groups) {
      const double td = static_cast<double>(t);
      t1 += td * (td - 1) * (2 * td + 5);
      t2 += td * (td - 1);
      t3 += td * (td - 1) * (td - 2);
    }
    return std::array<double, 3>{t1, t2, t3};
  };
  const auto [xt1, xt2, xt3] = tie_terms(gx);
  const auto [yt1, yt2, yt3] = tie_terms(gy);
  const double nd = static_cast<double>(n);
  double var = (nd * (nd - 1) * (2 * nd + 5) - xt1 - yt1) / 18.0 +
               xt2 * yt2 / (2 * nd * (nd - 1));
  if (n > 2) var += xt3 * yt3 / (9 * nd * (nd - 1) * (nd - 2));
  if (var <= 0) {
    result.p_value = 1.0;
    return result;
  }
  const double z = s / std::sqrt(var);
  result.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
  return result;
}

KendallResult kendall_tau(const Ranking& r1, const Ranking& r2,
                          std::optional<std::size_t> restrict_top) {
  std::unordered_map<std::string, double> s2;
  if (restrict_top) {
    // common items between the two top-k sets
    const std::size_t k = *restrict_top;
    std::unordered_set<std::string> top1;
    for (std::size_t i = 0; i < std::min(k, r1.ids.size()); ++i)
      top1.insert(r1.ids[i]);
    for (std::size_t i = 0; i < std::min(k, r2.ids.size()); ++i)
      if (top1.count(r2.ids[i])) s2.emplace(r2.ids[i], r2.scores[i]);
  } else {
    for (std::size_t i = 0; i < r2.ids.size(); ++i)
      s2.emplace(r2.ids[i], r2.scores[i]);
  }

  std::vector<double> x, y;
  for (std::size_t i = 0; i < r1.ids.size(); ++i) {
    auto it = s2.find(r1.ids[i]);
    if (it == s2.end()) continue;
    x.push_back(r1.scores[i]);
    y.push_back(it->second);
  }
  if (x.size() < 2)
    throw InputError("kendall_tau: fewer than 2 common items between '" +
                     r1.network_id + "' and '" + r2.network_id + "'");
  return kendall_tau_scores(x, y);
}

OverlapCurve topk_overlap_curve(const Ranking& r1, const Ranking& r2,
                                std::span<const std::size_t> ks) {
  if (r1.ids.size() != r2.ids.size())
    throw InputError("topk_overlap_curve: rankings cover different universes");
  std::unordered_set<std::string> universe(r1.ids.begin(), r1.ids.end());
  for (const std::string& id : r2.ids)
    if (!universe.count(id))
      throw InputError("topk_overlap_curve: rankings cover different "
                       "universes ('" + id + "' missing from one)");

  const std::size_t n = r1.ids.size();
  OverlapCurve curve;
  curve.universe = n;

  // position of every id in r2
  std::unordered_map<std::string, std::size_t> pos2;
  for (std::size_t i = 0; i < n; ++i) pos2.emplace(r2.ids[i], i);

  for (std::size_t k : ks) {
    if (k > n)
      throw InputError("topk_overlap_curve: k = " + std::to_string(k) +
                       " exceeds universe size " + std::to_string(n));
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (pos2.at(r1.ids[i]) < k) ++overlap;
    const double expected = static_cast<double>(k) * static_cast<double>(k) /
                            static_cast<double>(n);
    curve.points.push_back({k, overlap, expected});
  }
  return curve;
}

double overlap_pmf(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (m > k || k > n)
    throw InputError("overlap_pmf: need 0 <= m <= k <= n");
  if (k - m > n - k)
    throw InputError("overlap_pmf: k - m exceeds n - k");
  auto log_choose = [](std::uint64_t a, std::uint64_t b) {
    return std::lgamma(static_cast<double>(a) + 1) -
           std::lgamma(static_cast<double>(b) + 1) -
           std::lgamma(static_cast<double>(a - b) + 1);
  };
  return std::exp(log_choose(k, m) + log_choose(n - k, k - m) -
                  log_choose(n, k));
}

}  // namespace evinet
