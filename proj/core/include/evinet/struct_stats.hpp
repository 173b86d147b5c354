#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "evinet/graph.hpp"
#include "evinet/semantics.hpp"  // SourceSample, PathMode

namespace evinet {

struct SccResult {
  std::vector<std::uint32_t> component_of;  // node -> component id
  std::size_t count = 0;
  std::size_t largest_size = 0;
  std::uint32_t largest_component = 0;  // ties: smallest contained node index
};

SccResult strongly_connected_components(const EvidenceNetwork& g);

struct BowTie {
  std::vector<NodeId> scc_nodes;
  std::vector<NodeId> in_nodes;    // reach into the SCC
  std::vector<NodeId> out_nodes;   // reachable from the SCC
  std::vector<NodeId> misc_nodes;  // remainder
  std::size_t wcc_star_size = 0;   // largest weakly connected component
};

BowTie bowtie_decompose(const EvidenceNetwork& g);

// Fraction of arcs (u,v) with (v,u) also present. Throws on m = 0.
double symmetric_link_fraction(const EvidenceNetwork& g);

struct PairSample {
  std::size_t count;
  std::uint64_t seed;
};

struct KrackhardtResult {
  double value = 0.0;  // fraction of connected pairs reachable one way only
  std::size_t connected_pairs = 0;  // evaluated
  bool sampled = false;
  std::size_t sample_draws = 0;
  std::uint64_t seed = 0;
};

// Exact mode enumerates reachability over all ordered pairs; sample mode
// draws unordered node pairs uniformly, skipping unconnected ones.
// Throws when the transitive closure has no connected pair.
KrackhardtResult krackhardt_hierarchy(
    const EvidenceNetwork& g, std::optional<PairSample> sample = {},
    std::size_t workers = 0);

struct PathStats {
  std::size_t diameter = 0;
  double apl = 0.0;  // mean shortest-path length over reachable pairs
  std::map<std::size_t, std::size_t> length_histogram;
  bool sampled = false;
  std::size_t source_count = 0;
  std::uint64_t seed = 0;
  PathMode mode = PathMode::Directed;
};

// BFS from every (or every sampled) source. In exact undirected mode the
// histogram counts unordered pairs; otherwise ordered (source, target)
// pairs. Throws when no pair is reachable.
PathStats path_length_stats(const EvidenceNetwork& g, PathMode mode,
                            std::optional<SourceSample> sample = {},
                            std::size_t workers = 0);

// 3 * triangles / connected triples on the undirected, unweighted
// simplification. Throws when the graph has no connected triple.
double transitivity(const EvidenceNetwork& g);

struct CcdfPoint {
  std::size_t degree;
  double fraction;  // of nodes with degree >= this
};

std::vector<CcdfPoint> degree_ccdf(const EvidenceNetwork& g, DegreeMode mode);

struct KnnPoint {
  std::size_t degree;
  double mean_neighbor_degree;
  std::size_t node_count;
};

struct KnnProfile {
  std::vector<KnnPoint> points;
  DegreeMode mode = DegreeMode::Total;
};

// <k_nn>: per-node mean neighbor degree, averaged per node degree k.
// Total mode works on the undirected simplification; In/Out use the
// corresponding neighbor lists. Degree-0 nodes are excluded; throws when
// every node is isolated in the chosen mode.
KnnProfile knn_profile(const EvidenceNetwork& g,
                       DegreeMode mode = DegreeMode::Total);

}  // namespace evinet
