#pragma once

#include <span>
#include <string>
#include <vector>

#include "evinet/graph.hpp"

namespace evinet {

// Disjoint, non-empty node groups; union may cover only part of the
// population.
struct CommunityAllocation {
  std::string allocation_id;
  std::vector<std::vector<std::string>> communities;
  std::string provenance;

  // Throws InputError on empty or overlapping communities.
  void validate() const;
  std::size_t covered_nodes() const;
};

// Allocation intersected with a network's vertex set; emptied communities
// removed and counted.
struct RestrictedAllocation {
  std::string allocation_id;
  std::vector<std::vector<NodeId>> communities;  // sorted ids
  std::size_t dropped_nodes = 0;
  std::size_t dropped_communities = 0;
};

// Throws InputError when the allocation and network share no users.
RestrictedAllocation restrict_allocation(const CommunityAllocation& alloc,
                                         const EvidenceNetwork& g);

enum class ModularityMode { Auto, Undirected, Directed };

// Binary-adjacency modularity. Auto picks the directed formula for
// directed networks. Nodes outside every community contribute only
// through m and the degree terms.
double modularity(const EvidenceNetwork& g, const RestrictedAllocation& alloc,
                  ModularityMode mode = ModularityMode::Auto);

struct SegregationResult {
  double score = 0.0;                 // unweighted mean over communities
  std::vector<double> per_community;
  std::size_t zero_expectation_warnings = 0;
};

// Density-based expected boundary: E = (m / #dyads) * #cross-boundary
// dyads, with dyads n(n-1) directed / n(n-1)/2 undirected; per-community
// score is (E - observed)/E clamped at 0, averaged over communities.
SegregationResult segregation_index(const EvidenceNetwork& g,
                                    const RestrictedAllocation& alloc);

// phi(C): 1 for C in {empty, V}; 0 when the boundary is empty; otherwise
// boundary / min(total degree mass of C, of V\C). Boundary counts
// out-going arcs for directed graphs, crossing edges for undirected.
double conductance_of_set(const EvidenceNetwork& g,
                          std::span<const NodeId> community);

enum class CutMethod { Brute, Sweep, Auto };

struct CutResult {
  std::vector<NodeId> cut;  // best C, original node ids
  double phi = 1.0;
  CutMethod method_used = CutMethod::Brute;
};

// min over cuts C of the induced subgraph's phi(C). Brute enumerates all
// nontrivial cuts (exact, required for |subset| <= 20); sweep orders nodes
// by the Fiedler vector of the symmetrized Laplacian and takes the best
// prefix cut. Auto: brute when |subset| <= 20 else sweep.
CutResult min_conductance_cut(const EvidenceNetwork& g,
                              std::span<const NodeId> subset,
                              CutMethod method = CutMethod::Auto);

struct IntraConductanceResult {
  double score = 0.0;  // min over communities
  std::vector<double> per_community;
  std::size_t skipped_singletons = 0;
};

// alpha = min_i phi(G|C_i); singleton communities skipped with a count.
IntraConductanceResult intra_cluster_conductance(
    const EvidenceNetwork& g, const RestrictedAllocation& alloc,
    CutMethod method = CutMethod::Auto);

struct InterConductanceResult {
  double score = 0.0;  // 1 - max_i phi(C_i)
  std::vector<double> per_community_phi;
};

InterConductanceResult inter_cluster_conductance(
    const EvidenceNetwork& g, const RestrictedAllocation& alloc);

enum class QualityFunction {
  Modularity,
  Segregation,
  IntraConductance,
  InterConductance
};

const char* quality_function_name(QualityFunction f);
QualityFunction quality_function_from_name(const std::string& name);

struct QualityScore {
  std::string allocation_id;
  std::string network_id;
  QualityFunction function;
  double score;
  std::vector<double> detail;  // per-community scores where defined
};

struct MissingEntry {
  std::string allocation_id;
  std::string network_id;
  std::string reason;
};

struct QualityScoreTable {
  std::vector<QualityScore> rows;
  // cells that could not be scored (failed restriction or a function
  // precondition); recorded, never scored as 0
  std::vector<MissingEntry> missing;
};

// Full (allocation x network x function) cross product; pairs failing
// restrict_allocation are recorded as missing, not scored as 0.
QualityScoreTable rate_allocations(
    std::span<const CommunityAllocation> allocations,
    std::span<const EvidenceNetwork> networks,
    std::span<const QualityFunction> functions,
    CutMethod cut_method = CutMethod::Auto, std::size_t workers = 0);

}  // namespace evinet
