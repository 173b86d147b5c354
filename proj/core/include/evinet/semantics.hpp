#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evinet/graph.hpp"

namespace evinet {

using FeatureId = std::uint32_t;

struct FeatureCount {
  FeatureId feature;
  std::uint32_t count;  // > 0
};

// Sparse user x tag count matrix; one row per user, rows may be empty.
class FeatureProfileTable {
 public:
  // Records aggregate by (user, tag); zero counts are dropped.
  static FeatureProfileTable from_records(
      const std::vector<std::tuple<std::string, std::string, std::uint32_t>>&
          records);

  // Registers a user with an (explicitly) empty row.
  std::uint32_t add_user(std::string_view label);

  std::size_t num_users() const { return rows_.size(); }
  std::size_t num_features() const { return features_.size(); }

  std::optional<std::uint32_t> find_user(std::string_view label) const {
    return users_.find(label);
  }
  const std::string& user_label(std::uint32_t row) const {
    return users_.label(row);
  }
  const std::string& feature_label(FeatureId f) const {
    return features_.label(f);
  }

  std::span<const FeatureCount> row(std::uint32_t user) const {
    return {rows_[user].data(), rows_[user].size()};
  }

  // Replaces the user -> row assignment; perm[i] names the row that user i
  // receives. Used by the feature-shuffle null model.
  FeatureProfileTable with_permuted_rows(
      std::span<const std::uint32_t> perm) const;

 private:
  NodeTable users_;
  NodeTable features_;
  std::vector<std::vector<FeatureCount>> rows_;
};

// dot(u,v) / (|u| |v|); in [0,1] for non-negative counts.
// Throws InputError when either vector is all-zero.
double cosine_similarity(std::span<const FeatureCount> u,
                         std::span<const FeatureCount> v);

struct ProfilePoint {
  std::size_t distance;
  double mean_cosine;
  std::size_t pair_count;
};

struct SourceSample {
  std::size_t count;
  std::uint64_t seed;
};

enum class PathMode { Directed, Undirected };

struct DistanceSimilarityProfile {
  std::vector<ProfilePoint> points;
  std::vector<ProfilePoint> null_points;  // averaged over shuffle_count runs
  double global_mean = 0.0;  // over the sampled finite-distance pairs
  std::size_t total_pairs = 0;
  std::size_t shuffle_count = 0;
  std::uint64_t seed = 0;
  std::size_t excluded_users = 0;  // missing or empty profiles
  PathMode distance_mode = PathMode::Undirected;
};

struct SimilarityProfileOptions {
  std::size_t max_distance = 10;
  std::optional<SourceSample> source_sample;  // default: every source
  std::size_t shuffles = 5;
  std::uint64_t seed = 0;
  PathMode distance_mode = PathMode::Undirected;
  std::size_t workers = 0;
};

// Mean tag-vector cosine per shortest-path distance, with a
// feature-to-vertex shuffle null curve. Pairs at infinite distance are
// excluded; users without a (nonzero) profile are excluded with a count.
DistanceSimilarityProfile distance_similarity_profile(
    const EvidenceNetwork& g, const FeatureProfileTable& profiles,
    const SimilarityProfileOptions& options);

}  // namespace evinet
