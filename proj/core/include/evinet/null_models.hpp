#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "evinet/community.hpp"
#include "evinet/graph.hpp"
#include "evinet/semantics.hpp"

namespace evinet {

struct RewirePlan {
  std::size_t swap_attempts = 0;  // 0 -> 10 * m
  std::uint64_t seed = 0;
};

struct RewireReport {
  std::size_t attempts = 0;
  std::size_t achieved = 0;
  std::size_t rejected = 0;  // achieved + rejected = attempts
};

// Maslov-Sneppen double-edge swaps (u,v),(x,y) -> (u,y),(x,v); swaps that
// would create self-loops or duplicate edges are rejected. In- and
// out-degree sequences are preserved exactly; weights travel with the
// first endpoint's original edge. Throws on m < 2.
std::pair<EvidenceNetwork, RewireReport> rewire_degree_preserving(
    const EvidenceNetwork& g, RewirePlan plan);

// Uniformly random node relabeling; the result is isomorphic to the input.
EvidenceNetwork shuffle_vertex_labels(const EvidenceNetwork& g,
                                      std::uint64_t seed);

// Permutes the user -> row assignment uniformly; row contents untouched.
// Throws on < 2 users.
FeatureProfileTable shuffle_feature_assignment(
    const FeatureProfileTable& profiles, std::uint64_t seed);

// Random allocation with the same community-size multiset, drawn without
// replacement from the population. Throws when the population is smaller
// than the allocated node count.
CommunityAllocation shuffle_allocation_sizes(
    const CommunityAllocation& alloc, std::span<const std::string> population,
    std::uint64_t seed);

}  // namespace evinet
