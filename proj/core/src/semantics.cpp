#include "evinet/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "evinet/parallel.hpp"
#include "evinet/rng.hpp"

namespace evinet {

FeatureProfileTable FeatureProfileTable::from_records(
    const std::vector<std::tuple<std::string, std::string, std::uint32_t>>&
        records) {
  FeatureProfileTable table;
  std::map<std::pair<std::uint32_t, FeatureId>, std::uint64_t> agg;
  for (const auto& [user, tag, count] : records) {
    const std::uint32_t u = table.users_.intern(user);
    if (u >= table.rows_.size()) table.rows_.emplace_back();
    if (count == 0) continue;
    const FeatureId f = table.features_.intern(tag);
    agg[{u, f}] += count;
  }
  for (const auto& [key, count] : agg)
    table.rows_[key.first].push_back(
        {key.second, static_cast<std::uint32_t>(
                         std::min<std::uint64_t>(count, 0xffffffffu))});
  for (auto& row : table.rows_)
    std::sort(row.begin(), row.end(),
              [](const FeatureCount& a, const FeatureCount& b) {
                return a.feature < b.feature;
              });
  return table;
}

std::uint32_t FeatureProfileTable::add_user(std::string_view label) {
  const std::uint32_t u = users_.intern(label);
  if (u >= rows_.size()) rows_.emplace_back();
  return u;
}

FeatureProfileTable FeatureProfileTable::with_permuted_rows(
    std::span<const std::uint32_t> perm) const {
  if (perm.size() != rows_.size())
    throw InputError("row permutation has wrong length");
  FeatureProfileTable out = *this;
  for (std::size_t u = 0; u < rows_.size(); ++u) out.rows_[u] = rows_[perm[u]];
  return out;
}

double cosine_similarity(std::span<const FeatureCount> u,
                         std::span<const FeatureCount> v) {
  double dot = 0, nu = 0, nv = 0;
  std::size_t i = 0, j = 0;
  while (i < u.size() && j < v.size()) {
    if (u[i].feature < v[j].feature) {
      nu += static_cast<double>(u[i].count) * u[i].count;
      ++i;
    } else if (v[j].feature < u[i].feature) {
      nv += static_cast<double>(v[j].count) * v[j].count;
      ++j;
    } else {
      dot += static_cast<double>(u[i].count) * v[j].count;
      nu += static_cast<double>(u[i].count) * u[i].count;
      nv += static_cast<double>(v[j].count) * v[j].count;
      ++i;
      ++j;
    }
  }
  for (; i < u.size(); ++i) nu += static_cast<double>(u[i].count) * u[i].count;
  for (; j < v.size(); ++j) nv += static_cast<double>(v[j].count) * v[j].count;
  if (nu == 0 || nv == 0)
    throw InputError("cosine_similarity: zero profile vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

namespace {

constexpr std::uint32_t kUnreached = 0xffffffffu;

// Adjacency restricted to the requested distance semantics.
std::vector<std::vector<NodeId>> profile_adjacency(const EvidenceNetwork& g,
                                                   PathMode mode) {
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (const HalfEdge& e : g.out_neighbors(u)) adj[u].push_back(e.node);
    if (mode == PathMode::Undirected)
      for (const HalfEdge& e : g.in_neighbors(u)) adj[u].push_back(e.node);
    std::sort(adj[u].begin(), adj[u].end());
    adj[u].erase(std::unique(adj[u].begin(), adj[u].end()), adj[u].end());
  }
  return adj;
}

struct BucketSums {
  std::vector<double> cosine_sum;
  std::vector<std::size_t> pair_count;

  explicit BucketSums(std::size_t max_distance)
      : cosine_sum(max_distance + 1, 0.0), pair_count(max_distance + 1, 0) {}

  void merge(const BucketSums& other) {
    for (std::size_t d = 0; d < cosine_sum.size(); ++d) {
      cosine_sum[d] += other.cosine_sum[d];
      pair_count[d] += other.pair_count[d];
    }
  }
};

}  // namespace

DistanceSimilarityProfile distance_similarity_profile(
    const EvidenceNetwork& g, const FeatureProfileTable& profiles,
    const SimilarityProfileOptions& options) {
  const std::size_t n = g.num_nodes();
  if (options.max_distance == 0)
    throw InputError("distance_similarity_profile: max_distance must be >= 1");

  DistanceSimilarityProfile result;
  result.shuffle_count = options.shuffles;
  result.seed = options.seed;
  result.distance_mode =
      g.directed() ? options.distance_mode : PathMode::Undirected;

  // Node -> profile row; nodes without a nonzero profile are excluded
  // from the pair population (paths may still run through them).
  std::vector<std::uint32_t> row_of(n, kUnreached);
  for (NodeId u = 0; u < n; ++u) {
    auto row = profiles.find_user(g.nodes().label(u));
    if (row && !profiles.row(*row).empty())
      row_of[u] = *row;
    else
      ++result.excluded_users;
  }

  const auto adj = profile_adjacency(g, result.distance_mode);
  const bool unordered = result.distance_mode == PathMode::Undirected &&
                         !options.source_sample;

  std::vector<NodeId> sources;
  for (NodeId u = 0; u < n; ++u)
    if (row_of[u] != kUnreached) sources.push_back(u);
  if (options.source_sample) {
    Rng rng(options.source_sample->seed);
    rng.shuffle(sources);
    if (sources.size() > options.source_sample->count)
      sources.resize(options.source_sample->count);
    std::sort(sources.begin(), sources.end());
  }

  // rows_by_pass[0] is the observed assignment; passes 1..R are shuffles
  // of the included users' rows.
  std::vector<std::vector<std::uint32_t>> rows_by_pass;
  rows_by_pass.push_back(row_of);
  std::vector<NodeId> included;
  for (NodeId u = 0; u < n; ++u)
    if (row_of[u] != kUnreached) included.push_back(u);
  for (std::size_t s = 0; s < options.shuffles; ++s) {
    Rng rng(derive_seed(options.seed, s + 1));
    auto perm = rng.permutation(included.size());
    auto shuffled = row_of;
    for (std::size_t i = 0; i < included.size(); ++i)
      shuffled[included[i]] = row_of[included[perm[i]]];
    rows_by_pass.push_back(std::move(shuffled));
  }

  const std::size_t nw = effective_workers(options.workers);
  std::vector<BucketSums> observed_parts(
      sources.size(), BucketSums(options.max_distance));
  std::vector<BucketSums> null_parts(sources.size(),
                                     BucketSums(options.max_distance));

  parallel_for(sources.size(), nw, [&](std::size_t si) {
    const NodeId src = sources[si];
    // bounded BFS
    std::vector<std::uint32_t> dist(n, kUnreached);
    dist[src] = 0;
    std::vector<NodeId> frontier{src}, next;
    for (std::uint32_t d = 1;
         d <= options.max_distance && !frontier.empty(); ++d) {
      next.clear();
      for (NodeId u : frontier)
        for (NodeId v : adj[u])
          if (dist[v] == kUnreached) {
            dist[v] = d;
            next.push_back(v);
          }
      frontier.swap(next);
    }

    for (NodeId v = 0; v < n; ++v) {
      if (v == src || dist[v] == kUnreached || dist[v] == 0) continue;
      if (row_of[v] == kUnreached) continue;
      if (unordered && v < src) continue;  // count unordered pairs once
      const std::size_t d = dist[v];
      for (std::size_t pass = 0; pass < rows_by_pass.size(); ++pass) {
        const auto& rows = rows_by_pass[pass];
        const double c =
            cosine_similarity(profiles.row(rows[src]), profiles.row(rows[v]));
        if (pass == 0) {
          observed_parts[si].cosine_sum[d] += c;
          ++observed_parts[si].pair_count[d];
        } else {
          null_parts[si].cosine_sum[d] += c;
        }
      }
    }
  });

  BucketSums observed(options.max_distance), null_sums(options.max_distance);
  for (std::size_t si = 0; si < sources.size(); ++si) {
    observed.merge(observed_parts[si]);
    null_sums.merge(null_parts[si]);
  }

  double global_sum = 0;
  for (std::size_t d = 1; d <= options.max_distance; ++d) {
    if (observed.pair_count[d] == 0) continue;
    const double mean =
        observed.cosine_sum[d] / static_cast<double>(observed.pair_count[d]);
    result.points.push_back({d, mean, observed.pair_count[d]});
    result.total_pairs += observed.pair_count[d];
    global_sum += observed.cosine_sum[d];
    if (options.shuffles > 0) {
      const double null_mean =
          null_sums.cosine_sum[d] /
          (static_cast<double>(observed.pair_count[d]) *
           static_cast<double>(options.shuffles));
      result.null_points.push_back({d, null_mean, observed.pair_count[d]});
    }
  }
  if (result.total_pairs == 0)
    throw InputError(
        "distance_similarity_profile: no pair at finite distance");
  result.global_mean = global_sum / static_cast<double>(result.total_pairs);
  return result;
}

}  // namespace evinet
