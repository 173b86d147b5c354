// evinet: structural statistics, inter-network correlation and community
// quality analysis over user-interaction edge lists.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "evinet/error.hpp"
#include "evinet/version.hpp"

namespace {

void add_common(CLI::App* cmd, evinet::cli::Common& common,
                bool with_directed = true) {
  auto* seed =
      cmd->add_option("--seed", common.seed, "RNG seed (generated and "
                                             "recorded in output when omitted)");
  cmd->callback([seed, &common] { common.seed_given = seed->count() > 0; });
  cmd->add_option("--workers", common.workers,
                  "worker threads (0 = hardware; EVINET_WORKERS caps)");
  if (with_directed)
    cmd->add_flag("--directed", common.directed,
                  "treat edge lists as directed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("evinet ") + evinet::kVersion +
               " - evidence network analysis"};
  app.require_subcommand(1);

  evinet::cli::StatsArgs stats;
  {
    auto* cmd = app.add_subcommand("stats", "structural statistics report");
    cmd->add_option("edges", stats.edges, "edge-list TSV")->required();
    cmd->add_option("--out", stats.out, "JSON report path")->required();
    cmd->add_option("--sample-pairs", stats.sample_pairs,
                    "sample size for the Krackhardt hierarchy estimate");
    cmd->add_option("--sample-sources", stats.sample_sources,
                    "BFS source sample size for path statistics");
    cmd->add_option("--null", stats.knn_null,
                    "rewired-null replicas for the knn sidecar");
    add_common(cmd, stats.common);
  }

  evinet::cli::SimProfileArgs simprofile;
  {
    auto* cmd = app.add_subcommand(
        "simprofile", "tag-vector cosine similarity vs graph distance");
    cmd->add_option("edges", simprofile.edges, "edge-list TSV")->required();
    cmd->add_option("tags", simprofile.tags, "user<TAB>tag<TAB>count TSV")
        ->required();
    cmd->add_option("--out", simprofile.out, "CSV output")->required();
    cmd->add_option("--max-dist", simprofile.max_distance, "distance cap");
    cmd->add_option("--shuffles", simprofile.shuffles,
                    "feature-shuffle null replicas");
    cmd->add_option("--sample-sources", simprofile.sample_sources,
                    "BFS source sample size");
    cmd->add_flag("--directed-distances", simprofile.directed_distances,
                  "use directed shortest paths (default undirected)");
    add_common(cmd, simprofile.common);
  }

  evinet::cli::OverlapArgs overlap;
  {
    auto* cmd = app.add_subcommand(
        "overlap", "common-neighborhood profile of two networks");
    cmd->add_option("g1", overlap.g1, "first edge list")->required();
    cmd->add_option("g2", overlap.g2, "second edge list")->required();
    cmd->add_option("--out", overlap.out, "CSV output")->required();
    cmd->add_option("--measure", overlap.measure,
                    "jaccard | precision | cosine");
    cmd->add_option("--null", overlap.null_replicas,
                    "rewired null replicas (0 disables)");
    add_common(cmd, overlap.common);
  }

  evinet::cli::QapArgs qap;
  {
    auto* cmd =
        app.add_subcommand("qap", "graph correlation QAP permutation test");
    cmd->add_option("g1", qap.g1, "first edge list")->required();
    cmd->add_option("g2", qap.g2, "second edge list")->required();
    cmd->add_option("--out", qap.out, "JSON output")->required();
    cmd->add_option("--perms", qap.permutations, "permutation count");
    auto* binary = cmd->add_flag("--binary", qap.binary,
                                 "0/1 adjacency cells");
    cmd->add_flag("--weighted",
                  [&qap](std::int64_t) { qap.binary = false; },
                  "weighted adjacency cells (default)")
        ->excludes(binary);
    cmd->add_flag("--exclude-diagonal", qap.exclude_diagonal,
                  "restrict sums to off-diagonal cells");
    add_common(cmd, qap.common);
  }

  evinet::cli::QualityArgs quality;
  {
    auto* cmd = app.add_subcommand(
        "quality", "score community allocations in evidence networks");
    cmd->add_option("--networks", quality.networks, "edge-list TSVs")
        ->required()
        ->delimiter(',');
    cmd->add_option("--allocs", quality.allocs_dir,
                    "directory of allocation TSVs")
        ->required();
    cmd->add_option("--functions", quality.functions,
                    "modularity,segregation,intra_conductance,"
                    "inter_conductance")
        ->delimiter(',');
    cmd->add_option("--method", quality.cut_method,
                    "min-conductance cut: brute | sweep | auto");
    cmd->add_option("--out", quality.out, "scores CSV")->required();
    add_common(cmd, quality.common);
  }

  evinet::cli::RankCompareArgs rank;
  {
    auto* cmd = app.add_subcommand(
        "rank-compare", "Kendall tau and top-k overlap between rankings");
    cmd->add_option("scores", rank.scores, "QualityScoreTable CSV")
        ->required();
    cmd->add_option("--ks", rank.ks, "top-k positions")->delimiter(',');
    cmd->add_option("--out", rank.out, "curves CSV")->required();
    add_common(cmd, rank.common, false);
  }

  evinet::cli::RewireArgs rewire;
  {
    auto* cmd = app.add_subcommand(
        "rewire", "degree-preserving null model of an edge list");
    cmd->add_option("edges", rewire.edges, "edge-list TSV")->required();
    cmd->add_option("--out", rewire.out, "rewired edge list")->required();
    cmd->add_option("--attempts-factor", rewire.attempts_factor,
                    "swap attempts as a multiple of m");
    cmd->add_option("--attempts", rewire.attempts,
                    "absolute swap attempts (overrides factor)");
    add_common(cmd, rewire.common);
  }

  evinet::cli::SynthArgs synth;
  {
    auto* cmd = app.add_subcommand(
        "synth", "generate a planted world (networks, tags, truth)");
    cmd->add_option("--spec", synth.spec, "world spec JSON")->required();
    cmd->add_option("--out-dir", synth.out_dir, "output directory")
        ->required();
    add_common(cmd, synth.common, false);
  }

  evinet::cli::PipelineArgs pipeline;
  {
    auto* cmd = app.add_subcommand(
        "pipeline",
        "synth -> quality -> ranking -> null-model comparison bundle");
    cmd->add_option("--spec", pipeline.spec,
                    "world spec JSON (default: built-in 200-user world)");
    cmd->add_option("--out-dir", pipeline.out_dir, "output directory")
        ->required();
    cmd->add_option("--levels", pipeline.levels, "perturbation fractions")
        ->delimiter(',');
    cmd->add_option("--allocs-per-level", pipeline.allocs_per_level,
                    "allocations per perturbation level");
    cmd->add_option("--functions", pipeline.functions, "quality functions")
        ->delimiter(',');
    cmd->add_option("--null", pipeline.null_replicas,
                    "rewired null replicas per network");
    cmd->add_option("--ks", pipeline.ks, "top-k overlap positions")
        ->delimiter(',');
    add_common(cmd, pipeline.common, false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("stats")) return evinet::cli::run_stats(stats);
    if (app.got_subcommand("simprofile"))
      return evinet::cli::run_simprofile(simprofile);
    if (app.got_subcommand("overlap")) return evinet::cli::run_overlap(overlap);
    if (app.got_subcommand("qap")) return evinet::cli::run_qap(qap);
    if (app.got_subcommand("quality")) return evinet::cli::run_quality(quality);
    if (app.got_subcommand("rank-compare"))
      return evinet::cli::run_rank_compare(rank);
    if (app.got_subcommand("rewire")) return evinet::cli::run_rewire(rewire);
    if (app.got_subcommand("synth")) return evinet::cli::run_synth(synth);
    if (app.got_subcommand("pipeline"))
      return evinet::cli::run_pipeline_cmd(pipeline);
  } catch (const evinet::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
