#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evinet/error.hpp"

namespace evinet {

// Dense node index; contiguous 0..n-1 within one network.
using NodeId = std::uint32_t;

enum class DegreeMode { In, Out, Total };
enum class NetworkKind { Explicit, Implicit };

// Bijective label <-> index map, indices assigned in first-seen order.
class NodeTable {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct EdgeRecord {
  std::string src;
  std::string dst;
  double weight = 1.0;
};

// Neighbor entry; weight is 1.0 for unweighted sources.
struct HalfEdge {
  NodeId node;
  double weight;
};

// Index-based arc used when assembling networks from already-interned ids.
struct Arc {
  NodeId src;
  NodeId dst;
  double weight;
};

// Directed, optionally weighted user-interaction graph. Immutable after
// construction; undirected graphs are stored as symmetric arc pairs.
// In-adjacency is always the exact transpose of out-adjacency.
class EvidenceNetwork {
 public:
  struct BuildStats {
    std::size_t self_loops_dropped = 0;
    std::size_t records_aggregated = 0;
  };

  // Interns labels in first-seen order over accepted records, aggregates
  // duplicate (src,dst) weights by sum, drops self-loops with a count.
  // Weight 0 is read as 1.0 (unweighted source). Throws InputError on
  // empty input or negative weights.
  static EvidenceNetwork build(const std::vector<EdgeRecord>& records,
                               bool directed,
                               NetworkKind kind = NetworkKind::Implicit,
                               std::string name = "g");

  // Assembles from interned ids. Arcs are aggregated like build();
  // for undirected networks pass each edge once in either orientation.
  static EvidenceNetwork from_arcs(std::shared_ptr<const NodeTable> nodes,
                                   std::vector<Arc> arcs, bool directed,
                                   NetworkKind kind = NetworkKind::Implicit,
                                   std::string name = "g");

  std::size_t num_nodes() const { return out_.size(); }
  std::size_t num_arcs() const { return arc_count_; }
  // Logical edge count: arcs for directed graphs, arcs/2 for undirected.
  std::size_t num_edges() const {
    return directed_ ? arc_count_ : arc_count_ / 2;
  }

  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }
  NetworkKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const NodeTable& nodes() const { return *nodes_; }
  std::shared_ptr<const NodeTable> node_table() const { return nodes_; }

  std::span<const HalfEdge> out_neighbors(NodeId u) const {
    return {out_[u].data(), out_[u].size()};
  }
  std::span<const HalfEdge> in_neighbors(NodeId u) const {
    return {in_[u].data(), in_[u].size()};
  }

  std::size_t out_degree(NodeId u) const { return out_[u].size(); }
  std::size_t in_degree(NodeId u) const { return in_[u].size(); }

  // Unweighted degree; Total is in+out for directed graphs and the plain
  // neighbor count for undirected ones. Throws on unknown node.
  std::size_t degree(NodeId u, DegreeMode mode) const;

  bool has_arc(NodeId u, NodeId v) const;
  double arc_weight(NodeId u, NodeId v) const;  // 0 when absent

  std::size_t self_loops_dropped() const { return stats_.self_loops_dropped; }
  const BuildStats& build_stats() const { return stats_; }

  // One record per logical edge (undirected edges emitted once, lower
  // index first); round-trips through build().
  std::vector<EdgeRecord> to_edge_records() const;

  double density() const;

 private:
  EvidenceNetwork() = default;

  static EvidenceNetwork from_arcs_impl(std::shared_ptr<const NodeTable> nodes,
                                        std::vector<Arc> arcs, bool directed,
                                        NetworkKind kind, std::string name,
                                        BuildStats stats);

  bool directed_ = true;
  bool weighted_ = false;
  NetworkKind kind_ = NetworkKind::Implicit;
  std::string name_;
  std::shared_ptr<const NodeTable> nodes_;
  std::vector<std::vector<HalfEdge>> out_;
  std::vector<std::vector<HalfEdge>> in_;
  std::size_t arc_count_ = 0;
  BuildStats stats_;
};

// Two networks reduced to their common vertex set, sharing one NodeTable.
struct RestrictedPair {
  EvidenceNetwork first;
  EvidenceNetwork second;

  std::size_t num_common() const { return first.num_nodes(); }
};

// Keeps exactly the edges whose endpoints both lie in the label
// intersection; indices re-interned consistently across both outputs.
// Throws InputError when the intersection is empty.
RestrictedPair restrict_to_common(const EvidenceNetwork& g1,
                                  const EvidenceNetwork& g2);

}  // namespace evinet
