#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

#include "evinet/io.hpp"
#include "evinet/null_models.hpp"
#include "evinet/overlap.hpp"
#include "evinet/parallel.hpp"
#include "evinet/pipeline.hpp"
#include "evinet/qap.hpp"
#include "evinet/rng.hpp"
#include "evinet/struct_stats.hpp"
#include "evinet/version.hpp"

namespace evinet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t Common::resolve_seed() {
  if (!seed_given && !seed_generated) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    if (seed == 0) seed = 1;
    seed_generated = true;
  }
  return seed;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Leading '#' lines shared by every CSV/TSV output: version + one-line
// config echo (keys sorted by nlohmann, so re-runs are bit-identical).
std::vector<std::string> echo_comments(const json& config) {
  return {std::string("evinet ") + kVersion, "config: " + config.dump()};
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void write_csv(const fs::path& path, const json& config,
               const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out = open_out(path);
  for (const auto& c : echo_comments(config)) out << "# " << c << "\n";
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
}

void write_json(const fs::path& path, const json& value) {
  std::ofstream out = open_out(path);
  out << value.dump(2) << "\n";
}

fs::path sidecar(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension();
  p += "." + suffix;
  return p;
}

PathMode path_mode(bool directed_distances, const EvidenceNetwork& g) {
  return (directed_distances && g.directed()) ? PathMode::Directed
                                              : PathMode::Undirected;
}

}  // namespace

int run_stats(StatsArgs args) {
  const EvidenceNetwork g =
      load_edge_list(args.edges, args.common.directed);
  const std::size_t workers = effective_workers(args.common.workers);

  json config{{"command", "stats"},
              {"edges", args.edges.string()},
              {"directed", args.common.directed},
              {"workers", workers}};
  if (args.sample_pairs || args.sample_sources || args.knn_null > 0) {
    config["seed"] = args.common.resolve_seed();
    config["seed_generated"] = args.common.seed_generated;
  }
  if (args.sample_pairs) config["sample_pairs"] = *args.sample_pairs;
  if (args.sample_sources) config["sample_sources"] = *args.sample_sources;
  if (args.knn_null > 0) config["knn_null"] = args.knn_null;

  json report{{"version", kVersion}, {"config", config}};
  json warnings = json::array();

  report["network"] = {{"name", g.name()},
                       {"directed", g.directed()},
                       {"weighted", g.weighted()},
                       {"nodes", g.num_nodes()},
                       {"edges", g.num_edges()},
                       {"density", g.density()},
                       {"self_loops_dropped", g.self_loops_dropped()}};

  const SccResult scc = strongly_connected_components(g);
  report["scc"] = {{"count", scc.count}, {"largest", scc.largest_size}};

  const BowTie bt = bowtie_decompose(g);
  report["bowtie"] = {{"scc", bt.scc_nodes.size()},
                      {"in", bt.in_nodes.size()},
                      {"out", bt.out_nodes.size()},
                      {"misc", bt.misc_nodes.size()},
                      {"wcc_star", bt.wcc_star_size}};

  try {
    report["symmetric_link_fraction"] = symmetric_link_fraction(g);
  } catch (const std::exception& e) {
    report["symmetric_link_fraction"] = nullptr;
    warnings.push_back(e.what());
  }

  try {
    std::optional<PairSample> ps;
    if (args.sample_pairs)
      ps = PairSample{*args.sample_pairs, args.common.resolve_seed()};
    const KrackhardtResult kh = krackhardt_hierarchy(g, ps, workers);
    report["krackhardt"] = {{"value", kh.value},
                            {"connected_pairs", kh.connected_pairs},
                            {"sampled", kh.sampled}};
  } catch (const std::exception& e) {
    report["krackhardt"] = nullptr;
    warnings.push_back(e.what());
  }

  std::optional<PathStats> paths;
  try {
    std::optional<SourceSample> ss;
    if (args.sample_sources)
      ss = SourceSample{*args.sample_sources, args.common.resolve_seed()};
    paths = path_length_stats(
        g, g.directed() ? PathMode::Directed : PathMode::Undirected, ss,
        workers);
    report["paths"] = {
        {"diameter", paths->diameter},
        {"apl", paths->apl},
        {"sampled", paths->sampled},
        {"sources", paths->source_count},
        {"mode", paths->mode == PathMode::Directed ? "directed"
                                                   : "undirected"}};
  } catch (const std::exception& e) {
    report["paths"] = nullptr;
    warnings.push_back(e.what());
  }

  try {
    report["transitivity"] = transitivity(g);
  } catch (const std::exception& e) {
    report["transitivity"] = nullptr;
    warnings.push_back(e.what());
  }

  // sidecars: degree CCDF, path-length histogram, knn profile
  {
    std::vector<std::string> rows;
    for (auto [mode, label] :
         {std::pair{DegreeMode::In, "in"}, {DegreeMode::Out, "out"},
          {DegreeMode::Total, "total"}}) {
      for (const CcdfPoint& p : degree_ccdf(g, mode))
        rows.push_back(std::to_string(p.degree) + "," + fmt(p.fraction) +
                       "," + label);
    }
    write_csv(sidecar(args.out, "degree_ccdf.csv"), config,
              "k,fraction_ge,mode", rows);
  }
  if (paths) {
    std::vector<std::string> rows;
    for (const auto& [len, count] : paths->length_histogram)
      rows.push_back(std::to_string(len) + "," + std::to_string(count));
    write_csv(sidecar(args.out, "path_hist.csv"), config, "length,count",
              rows);
  }
  try {
    std::vector<std::string> rows;
    const KnnProfile knn = knn_profile(g, DegreeMode::Total);
    for (const KnnPoint& p : knn.points)
      rows.push_back(std::to_string(p.degree) + "," +
                     fmt(p.mean_neighbor_degree) + "," +
                     std::to_string(p.node_count) + "," + g.name() + ",0");
    if (args.knn_null > 0) {
      // degree-preserving null; relabeling alone cannot move <k_nn>
      std::map<std::size_t, std::pair<double, std::size_t>> agg;
      for (std::size_t r = 0; r < args.knn_null; ++r) {
        auto [rewired, rep] = rewire_degree_preserving(
            g, RewirePlan{0, derive_seed(args.common.resolve_seed(), r)});
        (void)rep;
        for (const KnnPoint& p : knn_profile(rewired, DegreeMode::Total).points) {
          auto& [sum, count] = agg[p.degree];
          sum += p.mean_neighbor_degree * static_cast<double>(p.node_count);
          count += p.node_count;
        }
      }
      for (const auto& [k, sums] : agg)
        rows.push_back(std::to_string(k) + "," +
                       fmt(sums.first / static_cast<double>(sums.second)) +
                       "," + std::to_string(sums.second) + "," + g.name() +
                       ",1");
    }
    write_csv(sidecar(args.out, "knn.csv"), config,
              "k,mean_nn_degree,count,source,null_flag", rows);
  } catch (const std::exception& e) {
    warnings.push_back(e.what());
  }

  report["warnings"] = warnings;
  write_json(args.out, report);
  return 0;
}

int run_simprofile(SimProfileArgs args) {
  const EvidenceNetwork g = load_edge_list(args.edges, args.common.directed);
  const FeatureProfileTable profiles = load_feature_table(args.tags);

  SimilarityProfileOptions options;
  options.max_distance = args.max_distance;
  options.shuffles = args.shuffles;
  options.seed = args.common.resolve_seed();
  options.distance_mode =
      path_mode(args.directed_distances, g);
  options.workers = args.common.workers;
  if (args.sample_sources)
    options.source_sample = SourceSample{*args.sample_sources, options.seed};

  const DistanceSimilarityProfile profile =
      distance_similarity_profile(g, profiles, options);

  json config{{"command", "simprofile"},
              {"edges", args.edges.string()},
              {"tags", args.tags.string()},
              {"directed", args.common.directed},
              {"max_distance", args.max_distance},
              {"shuffles", args.shuffles},
              {"seed", options.seed},
              {"seed_generated", args.common.seed_generated},
              {"distance_mode",
               options.distance_mode == PathMode::Directed ? "directed"
                                                           : "undirected"},
              {"global_mean_population",
               "sampled pairs at finite distance <= max_distance"},
              {"global_mean", profile.global_mean},
              {"excluded_users", profile.excluded_users}};

  std::vector<std::string> rows;
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    const ProfilePoint& p = profile.points[i];
    const double null_mean = profile.null_points.empty()
                                 ? 0.0
                                 : profile.null_points[i].mean_cosine;
    rows.push_back(std::to_string(p.distance) + "," + fmt(p.mean_cosine) +
                   "," + std::to_string(p.pair_count) + "," +
                   (profile.null_points.empty() ? "" : fmt(null_mean)) + "," +
                   fmt(profile.global_mean));
  }
  write_csv(args.out, config,
            "distance,mean_cosine,pair_count,null_mean_cosine,global_mean",
            rows);
  return 0;
}

int run_overlap(OverlapArgs args) {
  const EvidenceNetwork g1 = load_edge_list(args.g1, args.common.directed);
  const EvidenceNetwork g2 = load_edge_list(args.g2, args.common.directed);
  const RestrictedPair pair = restrict_to_common(g1, g2);
  const OverlapMeasure measure = overlap_measure_from_name(args.measure);

  const std::uint64_t seed =
      args.null_replicas > 0 ? args.common.resolve_seed() : 0;
  const OverlapProfile profile =
      overlap_degree_profile(pair, measure, args.null_replicas, seed);

  json config{{"command", "overlap"},
              {"g1", args.g1.string()},
              {"g2", args.g2.string()},
              {"directed", args.common.directed},
              {"measure", args.measure},
              {"null_replicas", args.null_replicas},
              {"common_nodes", pair.num_common()},
              {"skipped_nodes", profile.skipped}};
  if (args.null_replicas > 0) {
    config["seed"] = seed;
    config["seed_generated"] = args.common.seed_generated;
  }

  std::map<std::size_t, const OverlapNullPoint*> null_by_degree;
  for (const OverlapNullPoint& p : profile.null_points)
    null_by_degree[p.degree] = &p;

  std::vector<std::string> rows;
  for (const OverlapPoint& p : profile.points) {
    std::string null_mean, null_stderr;
    if (auto it = null_by_degree.find(p.degree); it != null_by_degree.end()) {
      null_mean = fmt(it->second->mean);
      null_stderr = fmt(it->second->stderr_);
    }
    rows.push_back(std::to_string(p.degree) + "," + fmt(p.mean) + "," +
                   std::to_string(p.node_count) + "," + null_mean + "," +
                   null_stderr);
  }
  write_csv(args.out, config, "k,mean,node_count,null_mean,null_stderr",
            rows);
  return 0;
}

int run_qap(QapArgs args) {
  const EvidenceNetwork g1 = load_edge_list(args.g1, args.common.directed);
  const EvidenceNetwork g2 = load_edge_list(args.g2, args.common.directed);
  const RestrictedPair pair = restrict_to_common(g1, g2);

  QapOptions options;
  options.weighted = !args.binary;
  options.include_diagonal = !args.exclude_diagonal;

  const std::uint64_t seed = args.common.resolve_seed();
  const QapResult result =
      qap_test(pair, args.permutations, seed, options, args.common.workers);

  json config{{"command", "qap"},
              {"g1", args.g1.string()},
              {"g2", args.g2.string()},
              {"directed", args.common.directed},
              {"permutations", args.permutations},
              {"seed", seed},
              {"seed_generated", args.common.seed_generated},
              {"weighted", options.weighted},
              {"diagonal_included", options.include_diagonal},
              {"common_nodes", pair.num_common()}};

  // histogram of the null distribution for plotting
  double lo = result.rho_observed, hi = result.rho_observed;
  for (double r : result.rho_null_samples) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (hi == lo) hi = lo + 1e-12;
  const std::size_t bins = args.histogram_bins;
  std::vector<std::size_t> counts(bins, 0);
  for (double r : result.rho_null_samples) {
    std::size_t b = static_cast<std::size_t>((r - lo) / (hi - lo) *
                                             static_cast<double>(bins));
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }
  json hist{{"lo", lo}, {"hi", hi}, {"counts", counts}};

  write_json(args.out, json{{"version", kVersion},
                            {"config", config},
                            {"rho_observed", result.rho_observed},
                            {"p_value", result.p_value},
                            {"permutations", result.permutations},
                            {"histogram", hist}});

  std::vector<std::string> rows;
  for (std::size_t b = 0; b < bins; ++b) {
    const double width = (hi - lo) / static_cast<double>(bins);
    rows.push_back(fmt(lo + static_cast<double>(b) * width) + "," +
                   fmt(lo + static_cast<double>(b + 1) * width) + "," +
                   std::to_string(counts[b]));
  }
  write_csv(sidecar(args.out, "hist.csv"), config, "rho_lo,rho_hi,count",
            rows);
  return 0;
}

int run_quality(QualityArgs args) {
  std::vector<EvidenceNetwork> networks;
  for (const fs::path& p : args.networks)
    networks.push_back(load_edge_list(p, args.common.directed));
  const std::vector<CommunityAllocation> allocs =
      load_allocation_dir(args.allocs_dir);

  std::vector<QualityFunction> functions;
  for (const std::string& f : args.functions)
    functions.push_back(quality_function_from_name(f));

  CutMethod method = CutMethod::Auto;
  if (args.cut_method == "brute") method = CutMethod::Brute;
  else if (args.cut_method == "sweep") method = CutMethod::Sweep;
  else if (args.cut_method != "auto")
    throw InputError("unknown cut method '" + args.cut_method + "'");

  const QualityScoreTable table =
      rate_allocations(allocs, networks, functions, method,
                       args.common.workers);

  json network_names = json::array();
  for (const auto& n : networks) network_names.push_back(n.name());
  json config{{"command", "quality"},
              {"networks", network_names},
              {"allocations", allocs.size()},
              {"functions", args.functions},
              {"directed", args.common.directed},
              {"cut_method", args.cut_method}};

  write_score_table(table, args.out, echo_comments(config));
  return 0;
}

int run_rank_compare(RankCompareArgs args) {
  const QualityScoreTable table = load_score_table(args.scores);

  // every (network, function) with scores induces one ranking
  std::vector<std::pair<std::string, QualityFunction>> sources;
  for (const QualityScore& row : table.rows) {
    const auto key = std::make_pair(row.network_id, row.function);
    if (std::find(sources.begin(), sources.end(), key) == sources.end())
      sources.push_back(key);
  }

  json config{{"command", "rank-compare"},
              {"scores", args.scores.string()},
              {"ks", args.ks}};

  std::vector<std::string> tau_rows, curve_rows;
  for (std::size_t a = 0; a < sources.size(); ++a) {
    for (std::size_t b = a + 1; b < sources.size(); ++b) {
      if (sources[a].second != sources[b].second) continue;  // same function
      const Ranking r1 =
          make_ranking(table, sources[a].first, sources[a].second);
      const Ranking r2 =
          make_ranking(table, sources[b].first, sources[b].second);
      const char* fn = quality_function_name(sources[a].second);

      const KendallResult kr = kendall_tau(r1, r2);
      tau_rows.push_back(std::string(fn) + "," + sources[a].first + "," +
                         sources[b].first + "," + fmt(kr.tau) + "," +
                         fmt(kr.p_value) + "," + std::to_string(kr.n));

      if (r1.ids.size() == r2.ids.size()) {
        std::vector<std::size_t> ks;
        for (std::size_t k : args.ks)
          if (k <= r1.ids.size()) ks.push_back(k);
        if (!ks.empty()) {
          const OverlapCurve curve = topk_overlap_curve(r1, r2, ks);
          for (const OverlapCurvePoint& p : curve.points)
            curve_rows.push_back(std::string(fn) + "," + sources[a].first +
                                 "," + sources[b].first + "," +
                                 std::to_string(p.k) + "," +
                                 std::to_string(p.observed) + "," +
                                 fmt(p.expected) + "," + std::to_string(p.k));
        }
      }
    }
  }

  write_csv(args.out, config,
            "function,network_a,network_b,k,observed,expected,max",
            curve_rows);
  write_csv(sidecar(args.out, "tau.csv"), config,
            "function,network_a,network_b,tau,p_value,n_common", tau_rows);
  return 0;
}

int run_rewire(RewireArgs args) {
  const EvidenceNetwork g = load_edge_list(args.edges, args.common.directed);
  const std::uint64_t seed = args.common.resolve_seed();

  RewirePlan plan;
  plan.seed = seed;
  plan.swap_attempts =
      args.attempts ? *args.attempts : args.attempts_factor * g.num_edges();

  auto [rewired, report] = rewire_degree_preserving(g, plan);

  json config{{"command", "rewire"},
              {"edges", args.edges.string()},
              {"directed", args.common.directed},
              {"seed", seed},
              {"seed_generated", args.common.seed_generated},
              {"attempts", report.attempts},
              {"achieved_swaps", report.achieved},
              {"rejected_swaps", report.rejected}};

  write_edge_list(rewired, args.out, echo_comments(config));
  return 0;
}

namespace {

PlantedWorldSpec parse_world_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }

  PlantedWorldSpec spec;
  try {
    spec.num_users = j.at("num_users").get<std::size_t>();
    spec.group_sizes = j.at("group_sizes").get<std::vector<std::size_t>>();
    spec.p_in = j.at("p_in").get<double>();
    spec.p_out = j.at("p_out").get<double>();
    for (const json& n : j.at("networks")) {
      NetworkSpec ns;
      ns.noise_epsilon = n.at("epsilon").get<double>();
      ns.keep_probability = n.at("rho").get<double>();
      ns.directed = n.value("directed", false);
      spec.networks.push_back(ns);
    }
    if (j.contains("features")) {
      const json& f = j["features"];
      spec.features.tags_per_group =
          f.value("tags_per_group", spec.features.tags_per_group);
      spec.features.tag_use_rate =
          f.value("tag_use_rate", spec.features.tag_use_rate);
      spec.features.noise_tag_rate =
          f.value("noise_tag_rate", spec.features.noise_tag_rate);
    }
    spec.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  spec.validate();
  return spec;
}

json world_spec_to_json(const PlantedWorldSpec& spec) {
  json networks = json::array();
  for (const NetworkSpec& n : spec.networks)
    networks.push_back({{"epsilon", n.noise_epsilon},
                        {"rho", n.keep_probability},
                        {"directed", n.directed}});
  return json{{"num_users", spec.num_users},
              {"group_sizes", spec.group_sizes},
              {"p_in", spec.p_in},
              {"p_out", spec.p_out},
              {"networks", networks},
              {"features",
               {{"tags_per_group", spec.features.tags_per_group},
                {"tag_use_rate", spec.features.tag_use_rate},
                {"noise_tag_rate", spec.features.noise_tag_rate}}},
              {"seed", spec.seed}};
}

}  // namespace

int run_synth(SynthArgs args) {
  PlantedWorldSpec spec = parse_world_spec(args.spec);
  if (spec.seed == 0) {
    spec.seed = args.common.resolve_seed();
  }

  const GeneratedWorld world = generate_world(spec);
  fs::create_directories(args.out_dir);

  json config{{"command", "synth"},
              {"spec", world_spec_to_json(spec)},
              {"seed_generated", args.common.seed_generated}};
  const auto comments = echo_comments(config);

  for (std::size_t i = 0; i < world.networks.size(); ++i)
    write_edge_list(world.networks[i],
                    args.out_dir / ("network_" + std::to_string(i) + ".tsv"),
                    comments);
  write_feature_table(world.profiles, args.out_dir / "tags.tsv", comments);
  write_allocation(world.truth, args.out_dir / "truth.tsv", comments);
  write_json(args.out_dir / "world_config.json",
             json{{"version", kVersion}, {"config", config}});
  return 0;
}

int run_pipeline_cmd(PipelineArgs args) {
  PipelineConfig config;
  if (args.spec) {
    config.world = parse_world_spec(*args.spec);
  } else {
    config.world.num_users = 200;
    config.world.group_sizes = {50, 50, 50, 50};
    config.world.p_in = 0.2;
    config.world.p_out = 0.01;
    config.world.networks = {{0.2, 0.6, false}, {0.2, 0.6, false}};
  }
  config.perturbation_levels = args.levels;
  config.allocations_per_level = args.allocs_per_level;
  config.functions.clear();
  for (const std::string& f : args.functions)
    config.functions.push_back(quality_function_from_name(f));
  config.null_replicas = args.null_replicas;
  config.overlap_ks = args.ks;
  config.seed = args.common.resolve_seed();
  config.workers = args.common.workers;

  const PipelineResult result = run_pipeline(config);

  fs::create_directories(args.out_dir);
  json function_names = json::array();
  for (QualityFunction f : config.functions)
    function_names.push_back(quality_function_name(f));
  json config_echo{{"command", "pipeline"},
                   {"world", world_spec_to_json(config.world)},
                   {"levels", args.levels},
                   {"allocs_per_level", args.allocs_per_level},
                   {"functions", function_names},
                   {"null_replicas", args.null_replicas},
                   {"ks", args.ks},
                   {"seed", config.seed},
                   {"seed_generated", args.common.seed_generated}};
  const auto comments = echo_comments(config_echo);

  // inputs for reproduction
  for (std::size_t i = 0; i < result.world.networks.size(); ++i)
    write_edge_list(result.world.networks[i],
                    args.out_dir / ("network_" + std::to_string(i) + ".tsv"),
                    comments);
  write_feature_table(result.world.profiles, args.out_dir / "tags.tsv",
                      comments);
  fs::create_directories(args.out_dir / "allocations");
  write_allocation(result.world.truth,
                   args.out_dir / "allocations" / "truth.tsv", comments);
  for (const CommunityAllocation& a : result.allocations)
    write_allocation(a,
                     args.out_dir / "allocations" / (a.allocation_id + ".tsv"),
                     comments);

  write_score_table(result.scores, args.out_dir / "scores.csv", comments);
  write_score_table(result.null_scores, args.out_dir / "null_scores.csv",
                    comments);

  // tau matrices: upper triangle original-vs-original, lower triangle
  // and diagonal against the null-model rankings
  for (const TauMatrix& m : result.tau_matrices) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < m.network_ids.size(); ++i) {
      std::string row = m.network_ids[i];
      for (std::size_t j = 0; j < m.network_ids.size(); ++j)
        row += "," + fmt(m.tau[i][j]);
      rows.push_back(row);
    }
    std::string header = "network";
    for (const auto& id : m.network_ids) header += "," + id;
    write_csv(args.out_dir / ("tau_" + m.function + ".csv"), config_echo,
              header, rows);
  }

  {
    std::vector<std::string> rows;
    for (const PipelineOverlapCurve& c : result.overlap_curves) {
      for (std::size_t pi = 0; pi < c.observed.points.size(); ++pi) {
        const OverlapCurvePoint& p = c.observed.points[pi];
        const std::string null_col =
            pi < c.null_observed.size()
                ? std::to_string(c.null_observed[pi])
                : std::string();
        rows.push_back(c.function + "," + c.network_a + "," + c.network_b +
                       "," + std::to_string(p.k) + "," +
                       std::to_string(p.observed) + "," + fmt(p.expected) +
                       "," + std::to_string(p.k) + "," + null_col);
      }
    }
    write_csv(args.out_dir / "overlap_curves.csv", config_echo,
              "function,network_a,network_b,k,observed,expected,max,null",
              rows);
  }

  // quality score histogram per (network, function), 20 bins
  {
    std::vector<std::string> rows;
    for (QualityFunction f : config.functions) {
      for (const EvidenceNetwork& net : result.world.networks) {
        std::vector<double> scores;
        for (const QualityScore& row : result.scores.rows)
          if (row.network_id == net.name() && row.function == f)
            scores.push_back(row.score);
        if (scores.empty()) continue;
        double lo = scores[0], hi = scores[0];
        for (double s : scores) {
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        if (hi == lo) hi = lo + 1e-12;
        constexpr std::size_t kBins = 20;
        std::vector<std::size_t> counts(kBins, 0);
        for (double s : scores) {
          std::size_t b = static_cast<std::size_t>(
              (s - lo) / (hi - lo) * static_cast<double>(kBins));
          if (b >= kBins) b = kBins - 1;
          ++counts[b];
        }
        for (std::size_t b = 0; b < kBins; ++b) {
          const double width = (hi - lo) / static_cast<double>(kBins);
          rows.push_back(std::string(quality_function_name(f)) + "," +
                         net.name() + "," +
                         fmt(lo + static_cast<double>(b) * width) + "," +
                         fmt(lo + static_cast<double>(b + 1) * width) + "," +
                         std::to_string(counts[b]));
        }
      }
    }
    write_csv(args.out_dir / "quality_hist.csv", config_echo,
              "function,network,bin_lo,bin_hi,count", rows);
  }

  write_json(args.out_dir / "run_config.json",
             json{{"version", kVersion}, {"config", config_echo}});
  return 0;
}

}  // namespace evinet::cli
