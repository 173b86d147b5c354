#include "evinet/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "evinet/null_models.hpp"
#include "evinet/rng.hpp"

namespace evinet {

const char* overlap_measure_name(OverlapMeasure m) {
  switch (m) {
    case OverlapMeasure::Jaccard: return "jaccard";
    case OverlapMeasure::Precision: return "precision";
    case OverlapMeasure::Cosine: return "cosine";
  }
  return "?";
}

OverlapMeasure overlap_measure_from_name(const std::string& name) {
  if (name == "jaccard") return OverlapMeasure::Jaccard;
  if (name == "precision") return OverlapMeasure::Precision;
  if (name == "cosine") return OverlapMeasure::Cosine;
  throw InputError("unknown overlap measure '" + name + "'");
}

namespace {

// Scores one node; nullopt when the measure's precondition fails.
std::optional<double> score_node(const EvidenceNetwork& g1,
                                 const EvidenceNetwork& g2, NodeId u,
                                 OverlapMeasure measure, bool weighted) {
  const auto n1 = g1.out_neighbors(u);
  const auto n2 = g2.out_neighbors(u);

  if (measure == OverlapMeasure::Cosine) {
    double dot = 0, a2 = 0, b2 = 0;
    std::size_t i = 0, j = 0;
    while (i < n1.size() && j < n2.size()) {
      const double w1 = weighted ? n1[i].weight : 1.0;
      const double w2 = weighted ? n2[j].weight : 1.0;
      if (n1[i].node < n2[j].node) {
        a2 += w1 * w1;
        ++i;
      } else if (n2[j].node < n1[i].node) {
        b2 += w2 * w2;
        ++j;
      } else {
        dot += w1 * w2;
        a2 += w1 * w1;
        b2 += w2 * w2;
        ++i;
        ++j;
      }
    }
    for (; i < n1.size(); ++i) {
      const double w = weighted ? n1[i].weight : 1.0;
      a2 += w * w;
    }
    for (; j < n2.size(); ++j) {
      const double w = weighted ? n2[j].weight : 1.0;
      b2 += w * w;
    }
    if (a2 == 0 || b2 == 0) return std::nullopt;
    return dot / (std::sqrt(a2) * std::sqrt(b2));
  }

  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < n1.size() && j < n2.size()) {
    if (n1[i].node < n2[j].node) ++i;
    else if (n2[j].node < n1[i].node) ++j;
    else { ++inter; ++i; ++j; }
  }
  if (measure == OverlapMeasure::Precision) {
    if (n1.empty()) return std::nullopt;
    return static_cast<double>(inter) / static_cast<double>(n1.size());
  }
  const std::size_t uni = n1.size() + n2.size() - inter;
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

NeighborhoodScores score_all(const EvidenceNetwork& g1,
                             const EvidenceNetwork& g2,
                             OverlapMeasure measure) {
  const bool weighted = g1.weighted() && g2.weighted();
  NeighborhoodScores result;
  for (NodeId u = 0; u < g1.num_nodes(); ++u) {
    if (auto s = score_node(g1, g2, u, measure, weighted))
      result.scores.emplace_back(u, *s);
    else
      ++result.skipped;
  }
  return result;
}

}  // namespace

NeighborhoodScores neighborhood_scores(const RestrictedPair& pair,
                                       OverlapMeasure measure) {
  if (pair.num_common() == 0)
    throw InputError("neighborhood_scores: empty common vertex set");
  NeighborhoodScores result = score_all(pair.first, pair.second, measure);
  if (result.scores.empty())
    throw InputError(std::string("neighborhood_scores: every node skipped "
                                 "for measure ") +
                     overlap_measure_name(measure));
  return result;
}

OverlapProfile overlap_degree_profile(const RestrictedPair& pair,
                                      OverlapMeasure measure,
                                      std::size_t null_replicas,
                                      std::uint64_t seed) {
  OverlapProfile profile;
  profile.measure = measure;
  profile.null_replicas = null_replicas;
  profile.seed = seed;

  const NeighborhoodScores scores = neighborhood_scores(pair, measure);
  profile.skipped = scores.skipped;

  auto group_by_degree = [&](const NeighborhoodScores& s) {
    std::map<std::size_t, std::pair<double, std::size_t>> groups;
    for (const auto& [u, score] : s.scores) {
      auto& [sum, count] = groups[pair.first.out_degree(u)];
      sum += score;
      ++count;
    }
    return groups;
  };

  for (const auto& [k, agg] : group_by_degree(scores))
    profile.points.push_back(
        {k, agg.first / static_cast<double>(agg.second), agg.second});

  if (null_replicas == 0) return profile;

  // Replica means per degree; the null point is their mean and standard
  // error across replicas.
  std::map<std::size_t, std::vector<double>> replica_means;
  for (std::size_t r = 0; r < null_replicas; ++r) {
    auto [rewired, report] = rewire_degree_preserving(
        pair.second, RewirePlan{0, derive_seed(seed, r)});
    (void)report;
    const NeighborhoodScores null_scores =
        score_all(pair.first, rewired, measure);
    for (const auto& [k, agg] : group_by_degree(null_scores))
      replica_means[k].push_back(agg.first /
                                 static_cast<double>(agg.second));
  }
  for (const auto& [k, means] : replica_means) {
    double sum = 0;
    for (double m : means) sum += m;
    const double mean = sum / static_cast<double>(means.size());
    double var = 0;
    for (double m : means) var += (m - mean) * (m - mean);
    const double stderr_ =
        means.size() > 1
            ? std::sqrt(var / static_cast<double>(means.size() - 1)) /
                  std::sqrt(static_cast<double>(means.size()))
            : 0.0;
    profile.null_points.push_back({k, mean, stderr_, means.size()});
  }
  return profile;
}

}  // namespace evinet
