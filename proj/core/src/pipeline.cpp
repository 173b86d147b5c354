#include "evinet/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "evinet/null_models.hpp"
#include "evinet/rng.hpp"

namespace evinet {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string format_level(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", f);
  return buf;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;
  result.seed = config.seed;

  result.world = stage("synth", [&] {
    PlantedWorldSpec world = config.world;
    if (world.seed == 0) world.seed = derive_seed(config.seed, 1);
    return generate_world(world);
  });

  result.allocations = stage("allocations", [&] {
    if (config.perturbation_levels.empty() ||
        config.allocations_per_level == 0)
      throw InputError("empty allocation family requested");
    std::vector<CommunityAllocation> allocs;
    std::size_t stream = 0;
    for (double f : config.perturbation_levels) {
      for (std::size_t i = 0; i < config.allocations_per_level; ++i) {
        CommunityAllocation a = perturb_allocation(
            result.world.truth, f, derive_seed(config.seed, 1000 + stream));
        ++stream;
        a.allocation_id = "f" + format_level(f) + "-" + std::to_string(i);
        allocs.push_back(std::move(a));
      }
    }
    return allocs;
  });

  result.scores = stage("quality", [&] {
    return rate_allocations(result.allocations, result.world.networks,
                            config.functions, config.cut_method,
                            config.workers);
  });

  result.null_scores = stage("null-models", [&] {
    QualityScoreTable merged;
    for (std::size_t ni = 0; ni < result.world.networks.size(); ++ni) {
      const EvidenceNetwork& net = result.world.networks[ni];

      // score every replica, then average per (allocation, function):
      // rankings come from the replica-averaged quality values
      std::map<std::pair<std::string, QualityFunction>,
               std::pair<double, std::size_t>>
          acc;
      for (std::size_t r = 0; r < config.null_replicas; ++r) {
        auto [rewired, report] = rewire_degree_preserving(
            net, RewirePlan{0, derive_seed(config.seed, 5000 + ni * 97 + r)});
        (void)report;
        rewired.set_name(net.name());
        std::vector<EvidenceNetwork> one;
        one.push_back(std::move(rewired));
        QualityScoreTable t =
            rate_allocations(result.allocations, one, config.functions,
                             config.cut_method, config.workers);
        for (const QualityScore& row : t.rows) {
          auto& [sum, count] = acc[{row.allocation_id, row.function}];
          sum += row.score;
          ++count;
        }
      }
      for (const auto& [key, agg] : acc) {
        if (agg.second != config.null_replicas) continue;  // incomplete cell
        merged.rows.push_back({key.first, net.name() + "#null", key.second,
                               agg.first / static_cast<double>(agg.second),
                               {}});
      }
    }
    return merged;
  });

  stage("ranking", [&] {
    const auto& nets = result.world.networks;
    for (QualityFunction f : config.functions) {
      std::vector<Ranking> original, null_ranking;
      for (const EvidenceNetwork& net : nets) {
        original.push_back(make_ranking(result.scores, net.name(), f));
        if (config.null_replicas > 0)
          null_ranking.push_back(
              make_ranking(result.null_scores, net.name() + "#null", f));
      }

      TauMatrix matrix;
      matrix.function = quality_function_name(f);
      for (const EvidenceNetwork& net : nets)
        matrix.network_ids.push_back(net.name());
      matrix.tau.assign(nets.size(), std::vector<double>(nets.size(), 0.0));
      matrix.p_value.assign(nets.size(),
                            std::vector<double>(nets.size(), 1.0));

      for (std::size_t i = 0; i < nets.size(); ++i) {
        for (std::size_t j = 0; j < nets.size(); ++j) {
          KendallResult kr;
          if (i < j) {
            kr = kendall_tau(original[i], original[j]);
          } else if (config.null_replicas > 0) {
            // ranking induced by network j vs network i's null models
            kr = kendall_tau(null_ranking[i], original[j]);
          } else {
            continue;
          }
          matrix.tau[i][j] = kr.tau;
          matrix.p_value[i][j] = kr.p_value;
        }
      }
      result.tau_matrices.push_back(std::move(matrix));

      for (std::size_t i = 0; i < nets.size(); ++i) {
        for (std::size_t j = i + 1; j < nets.size(); ++j) {
          PipelineOverlapCurve curve;
          curve.function = quality_function_name(f);
          curve.network_a = nets[i].name();
          curve.network_b = nets[j].name();
          curve.observed =
              topk_overlap_curve(original[i], original[j], config.overlap_ks);
          // a null ranking can cover fewer ids when replicas disagreed on
          // scorable cells; skip the null column then
          if (config.null_replicas > 0) {
            try {
              const OverlapCurve null_curve = topk_overlap_curve(
                  original[i], null_ranking[j], config.overlap_ks);
              for (const auto& p : null_curve.points)
                curve.null_observed.push_back(p.observed);
            } catch (const InputError&) {
            }
          }
          result.overlap_curves.push_back(std::move(curve));
        }
      }
    }
    return 0;
  });

  return result;
}

}  // namespace evinet
