#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evinet/community.hpp"
#include "evinet/graph.hpp"
#include "evinet/semantics.hpp"

namespace evinet {

// One evidence network sampled from the latent graph.
struct NetworkSpec {
  double noise_epsilon = 0.0;    // fraction of kept edges rewired randomly
  double keep_probability = 1.0; // edge subsample rate rho
  bool directed = false;
};

struct FeatureSpec {
  std::size_t tags_per_group = 10;
  double tag_use_rate = 3.0;   // mean uses per group tag
  double noise_tag_rate = 1.0; // mean noise-tag assignments per user
};

// Planted "social population": one latent planted-partition graph from
// which each evidence network is an independent noisy sample.
struct PlantedWorldSpec {
  std::size_t num_users = 0;
  std::vector<std::size_t> group_sizes;  // sum to num_users
  double p_in = 0.0;
  double p_out = 0.0;
  std::vector<NetworkSpec> networks;
  FeatureSpec features;
  std::uint64_t seed = 0;

  void validate() const;  // throws InputError
};

struct GeneratedWorld {
  std::vector<EvidenceNetwork> networks;
  FeatureProfileTable profiles;
  CommunityAllocation truth;
};

// Throws InputError on invalid specs or parameters that produce an empty
// network.
GeneratedWorld generate_world(const PlantedWorldSpec& spec);

// Reassigns round(f * covered) nodes to uniformly random communities.
// The community-size multiset is NOT preserved (reassignment, not swap).
CommunityAllocation perturb_allocation(const CommunityAllocation& truth,
                                       double swap_fraction,
                                       std::uint64_t seed);

}  // namespace evinet
