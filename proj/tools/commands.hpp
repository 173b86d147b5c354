#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace evinet::cli {

// Options shared by every subcommand. A randomized command either gets an
// explicit seed or records the generated one in its output.
struct Common {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t workers = 0;
  bool directed = false;

  std::uint64_t resolve_seed();  // generates + remembers when not given
  bool seed_generated = false;
};

struct StatsArgs {
  std::filesystem::path edges;
  std::filesystem::path out;
  std::optional<std::size_t> sample_pairs;
  std::optional<std::size_t> sample_sources;
  std::size_t knn_null = 0;
  Common common;
};
int run_stats(StatsArgs args);

struct SimProfileArgs {
  std::filesystem::path edges;
  std::filesystem::path tags;
  std::filesystem::path out;
  std::size_t max_distance = 10;
  std::size_t shuffles = 5;
  std::optional<std::size_t> sample_sources;
  bool directed_distances = false;
  Common common;
};
int run_simprofile(SimProfileArgs args);

struct OverlapArgs {
  std::filesystem::path g1;
  std::filesystem::path g2;
  std::filesystem::path out;
  std::string measure = "precision";
  std::size_t null_replicas = 5;
  Common common;
};
int run_overlap(OverlapArgs args);

struct QapArgs {
  std::filesystem::path g1;
  std::filesystem::path g2;
  std::filesystem::path out;
  std::size_t permutations = 1000;
  bool binary = false;
  bool exclude_diagonal = false;
  std::size_t histogram_bins = 40;
  Common common;
};
int run_qap(QapArgs args);

struct QualityArgs {
  std::vector<std::filesystem::path> networks;
  std::filesystem::path allocs_dir;
  std::filesystem::path out;
  std::vector<std::string> functions = {"modularity"};
  std::string cut_method = "auto";
  Common common;
};
int run_quality(QualityArgs args);

struct RankCompareArgs {
  std::filesystem::path scores;
  std::filesystem::path out;
  std::vector<std::size_t> ks = {5, 10, 25, 50, 100};
  Common common;
};
int run_rank_compare(RankCompareArgs args);

struct RewireArgs {
  std::filesystem::path edges;
  std::filesystem::path out;
  std::size_t attempts_factor = 10;
  std::optional<std::size_t> attempts;
  Common common;
};
int run_rewire(RewireArgs args);

struct SynthArgs {
  std::filesystem::path spec;
  std::filesystem::path out_dir;
  Common common;
};
int run_synth(SynthArgs args);

struct PipelineArgs {
  std::optional<std::filesystem::path> spec;
  std::filesystem::path out_dir;
  std::vector<double> levels = {0.0, 0.1, 0.2, 0.3, 0.4,
                                0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t allocs_per_level = 5;
  std::vector<std::string> functions = {"modularity"};
  std::size_t null_replicas = 5;
  std::vector<std::size_t> ks = {5, 10, 25, 50};
  Common common;
};
int run_pipeline_cmd(PipelineArgs args);

}  // namespace evinet::cli
