#include "evinet/community.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/Dense>

#include "evinet/parallel.hpp"

namespace evinet {

namespace {

constexpr std::uint32_t kNoCommunity = 0xffffffffu;

std::vector<std::vector<NodeId>> undirected_view(const EvidenceNetwork& g) {
  std::vector<std::vector<NodeId>> nbr(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto& v = nbr[u];
    for (const HalfEdge& e : g.out_neighbors(u)) v.push_back(e.node);
    for (const HalfEdge& e : g.in_neighbors(u)) v.push_back(e.node);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return nbr;
}

std::vector<std::uint32_t> community_of(const EvidenceNetwork& g,
                                        const RestrictedAllocation& alloc) {
  std::vector<std::uint32_t> comm(g.num_nodes(), kNoCommunity);
  for (std::size_t c = 0; c < alloc.communities.size(); ++c)
    for (NodeId u : alloc.communities[c])
      comm[u] = static_cast<std::uint32_t>(c);
  return comm;
}

// Unweighted total degree: in+out for directed graphs, neighbor count
// for undirected ones (binary adjacency either way; arcs are unique).
std::size_t total_degree(const EvidenceNetwork& g, NodeId u) {
  return g.directed() ? g.in_degree(u) + g.out_degree(u) : g.out_degree(u);
}

}  // namespace

void CommunityAllocation::validate() const {
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < communities.size(); ++c) {
    if (communities[c].empty())
      throw InputError("allocation '" + allocation_id + "': community " +
                       std::to_string(c) + " is empty");
    for (const std::string& node : communities[c])
      if (!seen.insert(node).second)
        throw InputError("allocation '" + allocation_id + "': node '" + node +
                         "' appears in more than one community");
  }
}

std::size_t CommunityAllocation::covered_nodes() const {
  std::size_t n = 0;
  for (const auto& c : communities) n += c.size();
  return n;
}

RestrictedAllocation restrict_allocation(const CommunityAllocation& alloc,
                                         const EvidenceNetwork& g) {
  RestrictedAllocation out;
  out.allocation_id = alloc.allocation_id;
  for (const auto& community : alloc.communities) {
    std::vector<NodeId> members;
    for (const std::string& label : community) {
      if (auto id = g.nodes().find(label))
        members.push_back(*id);
      else
        ++out.dropped_nodes;
    }
    if (members.empty()) {
      ++out.dropped_communities;
      continue;
    }
    std::sort(members.begin(), members.end());
    out.communities.push_back(std::move(members));
  }
  if (out.communities.empty())
    throw InputError("allocation '" + alloc.allocation_id +
                     "' shares no users with network '" + g.name() + "'");
  return out;
}

double modularity(const EvidenceNetwork& g, const RestrictedAllocation& alloc,
                  ModularityMode mode) {
  if (mode == ModularityMode::Auto)
    mode = g.directed() ? ModularityMode::Directed : ModularityMode::Undirected;

  const auto comm = community_of(g, alloc);
  double total = 0.0;

  if (mode == ModularityMode::Undirected) {
    const auto nbr = undirected_view(g);
    std::size_t arc_sum = 0;  // 2m
    for (const auto& v : nbr) arc_sum += v.size();
    if (arc_sum == 0)
      throw InputError("modularity: network '" + g.name() + "' has no edges");
    const double two_m = static_cast<double>(arc_sum);

    for (std::size_t c = 0; c < alloc.communities.size(); ++c) {
      std::size_t internal = 0;  // ordered pairs
      std::size_t volume = 0;
      for (NodeId u : alloc.communities[c]) {
        volume += nbr[u].size();
        for (NodeId v : nbr[u])
          if (comm[v] == c) ++internal;
      }
      const double frac = static_cast<double>(internal) / two_m;
      const double expected = static_cast<double>(volume) / two_m;
      total += frac - expected * expected;
    }
    return total;
  }

  const std::size_t m = g.num_arcs();
  if (m == 0)
    throw InputError("modularity: network '" + g.name() + "' has no edges");
  const double md = static_cast<double>(m);
  for (std::size_t c = 0; c < alloc.communities.size(); ++c) {
    std::size_t internal = 0;
    std::size_t in_volume = 0, out_volume = 0;
    for (NodeId u : alloc.communities[c]) {
      in_volume += g.in_degree(u);
      out_volume += g.out_degree(u);
      for (const HalfEdge& e : g.out_neighbors(u))
        if (comm[e.node] == c) ++internal;
    }
    total += static_cast<double>(internal) / md -
             (static_cast<double>(in_volume) / md) *
                 (static_cast<double>(out_volume) / md);
  }
  return total;
}

SegregationResult segregation_index(const EvidenceNetwork& g,
                                    const RestrictedAllocation& alloc) {
  const std::size_t n = g.num_nodes();

  // Boundary orientation and dyad count match the graph's direction
  // semantics: out-going arcs over ordered dyads when directed, crossing
  // edges over unordered dyads otherwise.
  const double m = static_cast<double>(g.num_edges());
  const double dyads = g.directed()
                           ? static_cast<double>(n) * (n - 1)
                           : static_cast<double>(n) * (n - 1) / 2.0;
  const double density = dyads > 0 ? m / dyads : 0.0;

  SegregationResult result;
  std::vector<bool> in_c(n, false);
  for (const auto& community : alloc.communities) {
    for (NodeId u : community) in_c[u] = true;
    std::size_t boundary = 0;
    for (NodeId u : community)
      for (const HalfEdge& e : g.out_neighbors(u))
        if (!in_c[e.node]) ++boundary;

    const double cross_dyads =
        static_cast<double>(community.size()) * (n - community.size());
    const double expected = density * cross_dyads;

    double score = 0.0;
    if (expected <= 0) {
      ++result.zero_expectation_warnings;
    } else if (expected > static_cast<double>(boundary)) {
      score = (expected - static_cast<double>(boundary)) / expected;
    }
    result.per_community.push_back(score);
    for (NodeId u : community) in_c[u] = false;
  }

  double sum = 0;
  for (double s : result.per_community) sum += s;
  result.score = result.per_community.empty()
                     ? 0.0
                     : sum / static_cast<double>(result.per_community.size());
  return result;
}

double conductance_of_set(const EvidenceNetwork& g,
                          std::span<const NodeId> community) {
  const std::size_t n = g.num_nodes();
  if (community.empty() || community.size() == n) return 1.0;

  std::vector<bool> in_c(n, false);
  for (NodeId u : community) in_c[u] = true;

  std::size_t boundary = 0;
  std::size_t volume_c = 0;
  for (NodeId u : community) {
    volume_c += total_degree(g, u);
    for (const HalfEdge& e : g.out_neighbors(u))
      if (!in_c[e.node]) ++boundary;
  }
  if (boundary == 0) return 0.0;

  std::size_t volume_total = 0;
  for (NodeId u = 0; u < n; ++u) volume_total += total_degree(g, u);
  const std::size_t denom = std::min(volume_c, volume_total - volume_c);
  return static_cast<double>(boundary) / static_cast<double>(denom);
}

namespace {

// Induced subgraph in local 0..n'-1 ids, binary adjacency.
struct Induced {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::vector<std::uint32_t>> in;
  std::vector<std::size_t> degree;  // total (induced)
  std::size_t total_volume = 0;
  bool directed = true;
};

Induced make_induced(const EvidenceNetwork& g,
                     std::span<const NodeId> subset) {
  Induced ind;
  ind.directed = g.directed();
  const std::size_t n = subset.size();
  std::unordered_map<NodeId, std::uint32_t> local;
  local.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!local.emplace(subset[i], static_cast<std::uint32_t>(i)).second)
      throw InputError("min_conductance_cut: duplicate node in subset");

  ind.out.resize(n);
  ind.in.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const HalfEdge& e : g.out_neighbors(subset[i])) {
      auto it = local.find(e.node);
      if (it == local.end()) continue;
      ind.out[i].push_back(it->second);
      ind.in[it->second].push_back(static_cast<std::uint32_t>(i));
    }
  }
  ind.degree.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // undirected storage is symmetric, so out alone is the neighbor count
    ind.degree[i] = ind.directed ? ind.out[i].size() + ind.in[i].size()
                                 : ind.out[i].size();
    ind.total_volume += ind.degree[i];
  }
  return ind;
}

double phi_from_counts(std::size_t boundary, std::size_t volume_side,
                       std::size_t total_volume) {
  if (boundary == 0) return 0.0;
  const std::size_t denom =
      std::min(volume_side, total_volume - volume_side);
  return static_cast<double>(boundary) / static_cast<double>(denom);
}

CutResult brute_cut(const Induced& ind, std::span<const NodeId> subset) {
  const std::size_t n = subset.size();
  if (n > 25)
    throw InputError("min_conductance_cut: brute force limited to 25 nodes, "
                     "got " + std::to_string(n));

  std::vector<std::uint32_t> out_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : ind.out[i]) out_mask[i] |= 1u << j;

  double best_phi = 2.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t full = (1u << n) - 1;

  // Node n-1 is pinned to the complement, so each unordered nontrivial
  // split appears exactly once.
  const std::uint32_t limit = 1u << (n - 1);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::size_t volume_c = 0;
    std::size_t boundary_c = 0;     // arcs C -> complement
    std::size_t boundary_comp = 0;  // arcs complement -> C
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        volume_c += ind.degree[i];
        boundary_c += std::popcount(out_mask[i] & (full & ~mask));
      } else if (ind.directed) {
        boundary_comp += std::popcount(out_mask[i] & mask);
      }
    }
    const double phi_c = phi_from_counts(boundary_c, volume_c,
                                         ind.total_volume);
    if (phi_c < best_phi) {
      best_phi = phi_c;
      best_mask = mask;
    }
    if (ind.directed) {
      const double phi_comp = phi_from_counts(
          boundary_comp, ind.total_volume - volume_c, ind.total_volume);
      if (phi_comp < best_phi) {
        best_phi = phi_comp;
        best_mask = full & ~mask;
      }
    }
  }

  CutResult result;
  result.phi = best_phi;
  result.method_used = CutMethod::Brute;
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask >> i & 1) result.cut.push_back(subset[i]);
  return result;
}

CutResult sweep_cut(const Induced& ind, std::span<const NodeId> subset) {
  const std::size_t n = subset.size();

  // Fiedler vector of the symmetrized Laplacian.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : ind.out[i]) {
      if (lap(i, j) == 0.0) {
        lap(i, j) = -1.0;
        lap(j, i) = -1.0;
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) row -= lap(i, j);
    lap(i, i) = row;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const Eigen::VectorXd fiedler = solver.eigenvectors().col(1);

  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return fiedler[a] != fiedler[b] ? fiedler[a] < fiedler[b] : a < b;
  });

  std::vector<bool> in_c(n, false);
  std::size_t volume_c = 0;
  std::size_t boundary_c = 0;     // arcs C -> complement
  std::size_t boundary_comp = 0;  // arcs complement -> C

  double best_phi = 2.0;
  std::size_t best_prefix = 1;
  bool best_is_complement = false;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    const std::uint32_t x = order[step];
    in_c[x] = true;
    volume_c += ind.degree[x];
    for (std::uint32_t y : ind.out[x]) {
      if (in_c[y]) --boundary_comp;  // was complement -> C
      else ++boundary_c;             // now C -> complement
    }
    for (std::uint32_t u : ind.in[x]) {
      if (in_c[u]) --boundary_c;     // was C -> complement
      else ++boundary_comp;          // now complement -> C
    }

    const double phi_c =
        phi_from_counts(boundary_c, volume_c, ind.total_volume);
    if (phi_c < best_phi) {
      best_phi = phi_c;
      best_prefix = step + 1;
      best_is_complement = false;
    }
    if (ind.directed) {
      const double phi_comp = phi_from_counts(
          boundary_comp, ind.total_volume - volume_c, ind.total_volume);
      if (phi_comp < best_phi) {
        best_phi = phi_comp;
        best_prefix = step + 1;
        best_is_complement = true;
      }
    }
  }

  CutResult result;
  result.phi = best_phi;
  result.method_used = CutMethod::Sweep;
  if (best_is_complement) {
    for (std::size_t i = best_prefix; i < n; ++i)
      result.cut.push_back(subset[order[i]]);
  } else {
    for (std::size_t i = 0; i < best_prefix; ++i)
      result.cut.push_back(subset[order[i]]);
  }
  std::sort(result.cut.begin(), result.cut.end());
  return result;
}

}  // namespace

CutResult min_conductance_cut(const EvidenceNetwork& g,
                              std::span<const NodeId> subset,
                              CutMethod method) {
  if (subset.size() < 2)
    throw InputError("min_conductance_cut: need at least 2 nodes");
  const Induced ind = make_induced(g, subset);
  if (method == CutMethod::Auto)
    method = subset.size() <= 20 ? CutMethod::Brute : CutMethod::Sweep;
  return method == CutMethod::Brute ? brute_cut(ind, subset)
                                    : sweep_cut(ind, subset);
}

IntraConductanceResult intra_cluster_conductance(
    const EvidenceNetwork& g, const RestrictedAllocation& alloc,
    CutMethod method) {
  IntraConductanceResult result;
  result.score = 2.0;
  for (const auto& community : alloc.communities) {
    if (community.size() < 2) {
      ++result.skipped_singletons;
      continue;
    }
    const CutResult cut = min_conductance_cut(g, community, method);
    result.per_community.push_back(cut.phi);
    result.score = std::min(result.score, cut.phi);
  }
  if (result.per_community.empty())
    throw InputError("intra_cluster_conductance: allocation '" +
                     alloc.allocation_id + "' has no community with >= 2 nodes");
  return result;
}

InterConductanceResult inter_cluster_conductance(
    const EvidenceNetwork& g, const RestrictedAllocation& alloc) {
  InterConductanceResult result;
  double worst = 0.0;
  for (const auto& community : alloc.communities) {
    const double phi = conductance_of_set(g, community);
    result.per_community_phi.push_back(phi);
    worst = std::max(worst, phi);
  }
  result.score = 1.0 - worst;
  return result;
}

const char* quality_function_name(QualityFunction f) {
  switch (f) {
    case QualityFunction::Modularity: return "modularity";
    case QualityFunction::Segregation: return "segregation";
    case QualityFunction::IntraConductance: return "intra_conductance";
    case QualityFunction::InterConductance: return "inter_conductance";
  }
  return "?";
}

QualityFunction quality_function_from_name(const std::string& name) {
  if (name == "modularity") return QualityFunction::Modularity;
  if (name == "segregation") return QualityFunction::Segregation;
  if (name == "intra_conductance") return QualityFunction::IntraConductance;
  if (name == "inter_conductance") return QualityFunction::InterConductance;
  throw InputError("unknown quality function '" + name + "'");
}

QualityScoreTable rate_allocations(
    std::span<const CommunityAllocation> allocations,
    std::span<const EvidenceNetwork> networks,
    std::span<const QualityFunction> functions, CutMethod cut_method,
    std::size_t workers) {
  if (allocations.empty())
    throw InputError("rate_allocations: no allocations given");
  if (networks.empty()) throw InputError("rate_allocations: no networks given");
  if (functions.empty())
    throw InputError("rate_allocations: no quality functions given");

  struct Cell {
    std::vector<QualityScore> rows;
    std::vector<MissingEntry> missing;
  };
  const std::size_t cells = allocations.size() * networks.size();
  std::vector<Cell> results(cells);

  parallel_for(cells, effective_workers(workers), [&](std::size_t idx) {
    const CommunityAllocation& alloc = allocations[idx / networks.size()];
    const EvidenceNetwork& net = networks[idx % networks.size()];
    Cell& cell = results[idx];

    RestrictedAllocation restricted;
    try {
      restricted = restrict_allocation(alloc, net);
    } catch (const std::exception& e) {
      cell.missing.push_back({alloc.allocation_id, net.name(), e.what()});
      return;
    }

    for (QualityFunction f : functions) {
      QualityScore row{alloc.allocation_id, net.name(), f, 0.0, {}};
      try {
        switch (f) {
          case QualityFunction::Modularity:
            row.score = modularity(net, restricted);
            break;
          case QualityFunction::Segregation: {
            auto r = segregation_index(net, restricted);
            row.score = r.score;
            row.detail = std::move(r.per_community);
            break;
          }
          case QualityFunction::IntraConductance: {
            auto r = intra_cluster_conductance(net, restricted, cut_method);
            row.score = r.score;
            row.detail = std::move(r.per_community);
            break;
          }
          case QualityFunction::InterConductance: {
            auto r = inter_cluster_conductance(net, restricted);
            row.score = r.score;
            row.detail = std::move(r.per_community_phi);
            break;
          }
        }
        cell.rows.push_back(std::move(row));
      } catch (const std::exception& e) {
        cell.missing.push_back(
            {alloc.allocation_id,
             net.name() + std::string(":") + quality_function_name(f),
             e.what()});
      }
    }
  });

  QualityScoreTable table;
  for (Cell& cell : results) {
    for (auto& row : cell.rows) table.rows.push_back(std::move(row));
    for (auto& entry : cell.missing)
      table.missing.push_back(std::move(entry));
  }
  return table;
}

}  // namespace evinet
