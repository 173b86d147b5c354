#pragma once

#include <memory>
#include <string>
#include <vector>

#include "evinet/graph.hpp"
#include "evinet/rng.hpp"

namespace evinet::bench {

inline EvidenceNetwork er_graph(std::size_t n, std::size_t arcs,
                                std::uint64_t seed, bool directed) {
  Rng rng(seed);
  auto table = std::make_shared<NodeTable>();
  for (std::size_t i = 0; i < n; ++i) table->intern("v" + std::to_string(i));
  std::vector<Arc> list;
  list.reserve(arcs);
  for (std::size_t i = 0; i < arcs; ++i) {
    const NodeId u = static_cast<NodeId>(rng.uniform(n));
    NodeId v = static_cast<NodeId>(rng.uniform(n - 1));
    if (v >= u) ++v;
    list.push_back({u, v, 1.0});
  }
  return EvidenceNetwork::from_arcs(table, list, directed);
}

}  // namespace evinet::bench
