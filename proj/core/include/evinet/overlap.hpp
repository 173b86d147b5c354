#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evinet/graph.hpp"

namespace evinet {

enum class OverlapMeasure { Jaccard, Precision, Cosine };

const char* overlap_measure_name(OverlapMeasure m);
OverlapMeasure overlap_measure_from_name(const std::string& name);

struct NeighborhoodScores {
  std::vector<std::pair<NodeId, double>> scores;  // sorted by node id
  std::size_t skipped = 0;  // nodes failing the measure's precondition
};

// Out-neighborhood agreement per common node: Jaccard |I|/|U|, Precision
// |I|/|N1(u)|, Cosine of the (weighted when both networks carry weights)
// restricted adjacency rows. Throws when every node is skipped.
NeighborhoodScores neighborhood_scores(const RestrictedPair& pair,
                                       OverlapMeasure measure);

struct OverlapPoint {
  std::size_t degree;  // out-degree of the node in the first network
  double mean;
  std::size_t node_count;
};

struct OverlapNullPoint {
  std::size_t degree;
  double mean;     // across replicas
  double stderr_;  // standard error of the replica means
  std::size_t replicas;  // replicas contributing this degree
};

struct OverlapProfile {
  OverlapMeasure measure;
  std::vector<OverlapPoint> points;
  std::vector<OverlapNullPoint> null_points;
  std::size_t null_replicas = 0;
  std::uint64_t seed = 0;
  std::size_t skipped = 0;
};

// Scores averaged per first-network out-degree; the null curve recomputes
// the profile against degree-preserving rewirings of the second network
// (null_replicas = 0 skips it).
OverlapProfile overlap_degree_profile(const RestrictedPair& pair,
                                      OverlapMeasure measure,
                                      std::size_t null_replicas,
                                      std::uint64_t seed);

}  // namespace evinet
