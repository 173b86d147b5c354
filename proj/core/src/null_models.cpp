#include "evinet/null_models.hpp"

#include <algorithm>
#include <unordered_set>

#include "evinet/rng.hpp"

namespace evinet {

namespace {

std::uint64_t arc_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

std::pair<EvidenceNetwork, RewireReport> rewire_degree_preserving(
    const EvidenceNetwork& g, RewirePlan plan) {
  // Work on logical edges: arcs for directed graphs, canonical (u<v)
  // endpoint pairs for undirected ones.
  std::vector<Arc> edges;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (const HalfEdge& e : g.out_neighbors(u)) {
      if (!g.directed() && e.node < u) continue;
      edges.push_back({u, e.node, e.weight});
    }
  if (edges.size() < 2)
    throw InputError("rewire: network '" + g.name() +
                     "' needs at least 2 edges");

  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const Arc& a : edges) present.insert(arc_key(a.src, a.dst));

  auto exists = [&](NodeId u, NodeId v) {
    if (g.directed()) return present.count(arc_key(u, v)) > 0;
    return present.count(arc_key(std::min(u, v), std::max(u, v))) > 0;
  };
  auto erase_edge = [&](const Arc& a) { present.erase(arc_key(a.src, a.dst)); };
  auto insert_edge = [&](Arc& slot, NodeId u, NodeId v, double w) {
    if (!g.directed() && v < u) std::swap(u, v);
    slot = {u, v, w};
    present.insert(arc_key(u, v));
  };

  RewireReport report;
  report.attempts = plan.swap_attempts ? plan.swap_attempts
                                       : 10 * edges.size();
  Rng rng(plan.seed);

  for (std::size_t attempt = 0; attempt < report.attempts; ++attempt) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform(edges.size()));
    const std::size_t j = static_cast<std::size_t>(rng.uniform(edges.size()));
    if (i == j) {
      ++report.rejected;
      continue;
    }
    const Arc a = edges[i];
    const Arc b = edges[j];

    NodeId a_src = a.src, a_dst, b_src = b.src, b_dst;
    if (g.directed()) {
      // (u,v),(x,y) -> (u,y),(x,v): out- and in-degrees both preserved
      a_dst = b.dst;
      b_dst = a.dst;
    } else {
      // pick one of the two legal re-pairings at random
      if (rng.next_u64() & 1) {
        a_dst = b.dst;
        b_dst = a.dst;
      } else {
        a_dst = b.src;
        b_src = a.dst;
        b_dst = b.dst;
      }
    }

    if (a_src == a_dst || b_src == b_dst ||  // self-loops
        exists(a_src, a_dst) || exists(b_src, b_dst)) {
      ++report.rejected;
      continue;
    }

    erase_edge(edges[i]);
    erase_edge(edges[j]);
    insert_edge(edges[i], a_src, a_dst, a.weight);
    insert_edge(edges[j], b_src, b_dst, b.weight);
    ++report.achieved;
  }

  EvidenceNetwork rewired = EvidenceNetwork::from_arcs(
      g.node_table(), edges, g.directed(), g.kind(), g.name() + "#rewired");
  return {std::move(rewired), report};
}

EvidenceNetwork shuffle_vertex_labels(const EvidenceNetwork& g,
                                      std::uint64_t seed) {
  Rng rng(seed);
  const auto pi = rng.permutation(g.num_nodes());
  std::vector<Arc> arcs;
  arcs.reserve(g.num_arcs());
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (const HalfEdge& e : g.out_neighbors(u)) {
      if (!g.directed() && e.node < u) continue;
      arcs.push_back({pi[u], pi[e.node], e.weight});
    }
  return EvidenceNetwork::from_arcs(g.node_table(), std::move(arcs),
                                    g.directed(), g.kind(),
                                    g.name() + "#shuffled");
}

FeatureProfileTable shuffle_feature_assignment(
    const FeatureProfileTable& profiles, std::uint64_t seed) {
  if (profiles.num_users() < 2)
    throw InputError("shuffle_feature_assignment: need at least 2 users");
  Rng rng(seed);
  const auto perm = rng.permutation(profiles.num_users());
  return profiles.with_permuted_rows(perm);
}

CommunityAllocation shuffle_allocation_sizes(
    const CommunityAllocation& alloc, std::span<const std::string> population,
    std::uint64_t seed) {
  const std::size_t needed = alloc.covered_nodes();
  if (population.size() < needed)
    throw InputError("shuffle_allocation_sizes: population of " +
                     std::to_string(population.size()) +
                     " is smaller than the " + std::to_string(needed) +
                     " allocated nodes");

  std::vector<std::string> pool(population.begin(), population.end());
  Rng rng(seed);
  rng.shuffle(pool);

  CommunityAllocation out;
  out.allocation_id = alloc.allocation_id;
  out.provenance = alloc.provenance + "; size-preserving shuffle";
  std::size_t next = 0;
  for (const auto& community : alloc.communities) {
    out.communities.emplace_back(pool.begin() + next,
                                 pool.begin() + next + community.size());
    next += community.size();
  }
  return out;
}

}  // namespace evinet
