#include "evinet/graph.hpp"

#include <algorithm>
#include <cmath>

namespace evinet {

NodeId NodeTable::intern(std::string_view label) {
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  const NodeId id = static_cast<NodeId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<NodeId> NodeTable::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& NodeTable::label(NodeId id) const {
  if (id >= labels_.size())
    throw InputError("unknown node id " + std::to_string(id));
  return labels_[id];
}

namespace {

// Sorted, aggregated arc list -> adjacency + transpose.
void fill_adjacency(const std::vector<Arc>& arcs, std::size_t n,
                    std::vector<std::vector<HalfEdge>>& out,
                    std::vector<std::vector<HalfEdge>>& in) {
  out.assign(n, {});
  in.assign(n, {});
  for (const Arc& a : arcs) {
    out[a.src].push_back({a.dst, a.weight});
    in[a.dst].push_back({a.src, a.weight});
  }
  auto by_node = [](const HalfEdge& a, const HalfEdge& b) {
    return a.node < b.node;
  };
  for (auto& v : out) std::sort(v.begin(), v.end(), by_node);
  for (auto& v : in) std::sort(v.begin(), v.end(), by_node);
}

// Aggregate duplicates by weight sum; input need not be sorted.
std::vector<Arc> aggregate_arcs(std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  std::vector<Arc> merged;
  merged.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!merged.empty() && merged.back().src == a.src &&
        merged.back().dst == a.dst) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

}  // namespace

EvidenceNetwork EvidenceNetwork::build(const std::vector<EdgeRecord>& records,
                                       bool directed, NetworkKind kind,
                                       std::string name) {
  if (records.empty())
    throw InputError("network '" + name + "': empty edge record list");

  auto table = std::make_shared<NodeTable>();
  BuildStats stats;
  std::vector<Arc> arcs;
  arcs.reserve(records.size());

  for (const EdgeRecord& r : records) {
    if (r.src == r.dst) {
      ++stats.self_loops_dropped;
      continue;
    }
    if (r.weight < 0)
      throw InputError("network '" + name + "': negative weight on edge " +
                       r.src + " -> " + r.dst);
    const double w = r.weight == 0 ? 1.0 : r.weight;
    const NodeId u = table->intern(r.src);
    const NodeId v = table->intern(r.dst);
    if (directed) {
      arcs.push_back({u, v, w});
    } else {
      // canonical orientation so duplicate records in either order merge
      arcs.push_back({std::min(u, v), std::max(u, v), w});
    }
  }
  if (arcs.empty())
    throw InputError("network '" + name +
                     "': no valid edge records (all self-loops?)");

  return from_arcs_impl(std::move(table), std::move(arcs), directed, kind,
                        std::move(name), stats);
}

EvidenceNetwork EvidenceNetwork::from_arcs(
    std::shared_ptr<const NodeTable> nodes, std::vector<Arc> arcs,
    bool directed, NetworkKind kind, std::string name) {
  BuildStats stats;
  std::vector<Arc> kept;
  kept.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (a.src == a.dst) {
      ++stats.self_loops_dropped;
      continue;
    }
    if (a.src >= nodes->size() || a.dst >= nodes->size())
      throw InputError("network '" + name + "': arc endpoint out of range");
    if (directed)
      kept.push_back(a);
    else
      kept.push_back({std::min(a.src, a.dst), std::max(a.src, a.dst), a.weight});
  }
  return from_arcs_impl(std::move(nodes), std::move(kept), directed, kind,
                        std::move(name), stats);
}

EvidenceNetwork EvidenceNetwork::from_arcs_impl(
    std::shared_ptr<const NodeTable> nodes, std::vector<Arc> arcs,
    bool directed, NetworkKind kind, std::string name, BuildStats stats) {
  const std::size_t raw = arcs.size();
  arcs = aggregate_arcs(std::move(arcs));
  stats.records_aggregated = raw - arcs.size();

  EvidenceNetwork g;
  g.directed_ = directed;
  g.kind_ = kind;
  g.name_ = std::move(name);
  g.nodes_ = std::move(nodes);

  std::vector<Arc> full = arcs;
  if (!directed) {
    full.reserve(arcs.size() * 2);
    for (const Arc& a : arcs) full.push_back({a.dst, a.src, a.weight});
  }
  fill_adjacency(full, g.nodes_->size(), g.out_, g.in_);
  g.arc_count_ = full.size();
  g.weighted_ = std::any_of(arcs.begin(), arcs.end(),
                            [](const Arc& a) { return a.weight != 1.0; });
  g.stats_ = stats;
  return g;
}

std::size_t EvidenceNetwork::degree(NodeId u, DegreeMode mode) const {
  if (u >= num_nodes())
    throw InputError("unknown node id " + std::to_string(u) + " in network '" +
                     name_ + "'");
  switch (mode) {
    case DegreeMode::In:
      return in_degree(u);
    case DegreeMode::Out:
      return out_degree(u);
    case DegreeMode::Total:
      return directed_ ? in_degree(u) + out_degree(u) : out_degree(u);
  }
  return 0;
}

bool EvidenceNetwork::has_arc(NodeId u, NodeId v) const {
  const auto& vec = out_[u];
  auto it = std::lower_bound(
      vec.begin(), vec.end(), v,
      [](const HalfEdge& e, NodeId node) { return e.node < node; });
  return it != vec.end() && it->node == v;
}

double EvidenceNetwork::arc_weight(NodeId u, NodeId v) const {
  const auto& vec = out_[u];
  auto it = std::lower_bound(
      vec.begin(), vec.end(), v,
      [](const HalfEdge& e, NodeId node) { return e.node < node; });
  return (it != vec.end() && it->node == v) ? it->weight : 0.0;
}

std::vector<EdgeRecord> EvidenceNetwork::to_edge_records() const {
  std::vector<EdgeRecord> records;
  records.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (const HalfEdge& e : out_[u]) {
      if (!directed_ && e.node < u) continue;  // emit undirected edges once
      records.push_back({nodes_->label(u), nodes_->label(e.node), e.weight});
    }
  }
  return records;
}

double EvidenceNetwork::density() const {
  const double n = static_cast<double>(num_nodes());
  if (n < 2) return 0.0;
  const double dyads = directed_ ? n * (n - 1) : n * (n - 1) / 2.0;
  return static_cast<double>(num_edges()) / dyads;
}

RestrictedPair restrict_to_common(const EvidenceNetwork& g1,
                                  const EvidenceNetwork& g2) {
  auto common = std::make_shared<NodeTable>();
  std::vector<NodeId> map1(g1.num_nodes());  // old id in g1 -> common id
  std::vector<bool> in_common1(g1.num_nodes(), false);

  for (NodeId u = 0; u < g1.num_nodes(); ++u) {
    const std::string& label = g1.nodes().label(u);
    if (g2.nodes().find(label)) {
      map1[u] = common->intern(label);
      in_common1[u] = true;
    }
  }
  if (common->size() == 0)
    throw InputError("networks '" + g1.name() + "' and '" + g2.name() +
                     "' share no nodes");

  auto project = [&common](const EvidenceNetwork& g) {
    std::vector<Arc> arcs;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      auto cu = common->find(g.nodes().label(u));
      if (!cu) continue;
      for (const HalfEdge& e : g.out_neighbors(u)) {
        auto cv = common->find(g.nodes().label(e.node));
        if (!cv) continue;
        if (!g.directed() && *cv < *cu) continue;  // once per undirected edge
        arcs.push_back({*cu, *cv, e.weight});
      }
    }
    return arcs;
  };

  RestrictedPair pair{
      EvidenceNetwork::from_arcs(common, project(g1), g1.directed(), g1.kind(),
                                 g1.name()),
      EvidenceNetwork::from_arcs(common, project(g2), g2.directed(), g2.kind(),
                                 g2.name())};
  return pair;
}

}  // namespace evinet
