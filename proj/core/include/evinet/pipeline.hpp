#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evinet/community.hpp"
#include "evinet/ranking.hpp"
#include "evinet/synth.hpp"

namespace evinet {

// End-to-end run: synth world -> perturbed allocation family -> quality
// scores in every network and its rewired null models -> ranking
// comparison (tau matrices and top-k overlap curves).
struct PipelineConfig {
  PlantedWorldSpec world;
  std::vector<double> perturbation_levels = {0.0, 0.1, 0.2, 0.3, 0.4,
                                             0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t allocations_per_level = 5;
  std::vector<QualityFunction> functions = {QualityFunction::Modularity};
  std::size_t null_replicas = 5;
  std::vector<std::size_t> overlap_ks = {5, 10, 25, 50};
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  CutMethod cut_method = CutMethod::Auto;
};

// Entry (i,j): upper triangle (i<j) tau between rankings of networks i
// and j; lower triangle (i>j) tau between network j's ranking and the one
// induced by network i's null models; diagonal tau(G_i, null_i).
struct TauMatrix {
  std::string function;
  std::vector<std::string> network_ids;
  std::vector<std::vector<double>> tau;
  std::vector<std::vector<double>> p_value;
};

struct PipelineOverlapCurve {
  std::string function;
  std::string network_a;
  std::string network_b;
  OverlapCurve observed;
  std::vector<std::size_t> null_observed;  // vs network_b's null ranking
};

struct PipelineResult {
  GeneratedWorld world;
  std::vector<CommunityAllocation> allocations;
  QualityScoreTable scores;
  // Network ids suffixed "#null"; scores averaged over the replicas.
  QualityScoreTable null_scores;
  std::vector<TauMatrix> tau_matrices;
  std::vector<PipelineOverlapCurve> overlap_curves;
  std::uint64_t seed = 0;
};

// Throws StageError naming the failing stage.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace evinet
