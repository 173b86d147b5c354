#include "evinet/struct_stats.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "evinet/parallel.hpp"
#include "evinet/rng.hpp"

namespace evinet {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

// Deduplicated undirected neighbor lists (in + out, sorted, no weights).
std::vector<std::vector<NodeId>> undirected_neighbors(
    const EvidenceNetwork& g) {
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

// BFS distances from src over the given adjacency; kUnset = unreachable.
template <typename Neighbors>
void bfs(NodeId src, std::size_t n, Neighbors&& neighbors,
         std::vector<std::uint32_t>& dist) {
  dist.assign(n, kUnset);
  dist[src] = 0;
  std::vector<NodeId> frontier{src}, next;
  std::uint32_t d = 0;
  while (!frontier.empty()) {
    ++d;
    next.clear();
    for (NodeId u : frontier)
      for (NodeId v : neighbors(u))
        if (dist[v] == kUnset) {
          dist[v] = d;
          next.push_back(v);
        }
    frontier.swap(next);
  }
}

struct OutAdj {
  const EvidenceNetwork& g;
  std::vector<NodeId> buf;
  std::span<const NodeId> operator()(NodeId u) {
    buf.clear();
    for (const HalfEdge& e : g.out_neighbors(u)) buf.push_back(e.node);
    return buf;
  }
};

}  // namespace

SccResult strongly_connected_components(const EvidenceNetwork& g) {
  const std::size_t n = g.num_nodes();
  SccResult result;
  result.component_of.assign(n, kUnset);

  // Iterative Tarjan.
  std::vector<std::uint32_t> index(n, kUnset), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::uint32_t next_index = 0;

  struct Frame {
    NodeId node;
    std::size_t edge;
  };
  std::vector<Frame> call_stack;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call_stack.push_back({root, 0});
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const NodeId u = frame.node;
      if (frame.edge == 0) {
        index[u] = lowlink[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      const auto out = g.out_neighbors(u);
      bool descended = false;
      while (frame.edge < out.size()) {
        const NodeId v = out[frame.edge].node;
        ++frame.edge;
        if (index[v] == kUnset) {
          call_stack.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
      }
      if (descended) continue;
      if (lowlink[u] == index[u]) {
        const std::uint32_t comp = static_cast<std::uint32_t>(result.count++);
        for (;;) {
          const NodeId w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component_of[w] = comp;
          if (w == u) break;
        }
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        Frame& parent = call_stack.back();
        lowlink[parent.node] = std::min(lowlink[parent.node], lowlink[u]);
      }
    }
  }

  // Largest component; ties broken by the smallest contained node index.
  std::vector<std::size_t> sizes(result.count, 0);
  for (std::uint32_t c : result.component_of) ++sizes[c];
  std::vector<NodeId> min_node(result.count, kUnset);
  for (NodeId u = 0; u < n; ++u)
    min_node[result.component_of[u]] =
        std::min(min_node[result.component_of[u]], u);
  for (std::uint32_t c = 0; c < result.count; ++c) {
    if (sizes[c] > result.largest_size ||
        (sizes[c] == result.largest_size &&
         min_node[c] < min_node[result.largest_component])) {
      result.largest_size = sizes[c];
      result.largest_component = c;
    }
  }
  return result;
}

BowTie bowtie_decompose(const EvidenceNetwork& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InputError("bowtie: empty network");
  const SccResult scc = strongly_connected_components(g);

  enum : std::uint8_t { kMisc = 0, kScc, kIn, kOut };
  std::vector<std::uint8_t> cls(n, kMisc);
  std::vector<NodeId> frontier;
  for (NodeId u = 0; u < n; ++u)
    if (scc.component_of[u] == scc.largest_component) {
      cls[u] = kScc;
      frontier.push_back(u);
    }

  // forward reach -> OUT
  std::vector<NodeId> queue = frontier;
  std::vector<bool> seen(n, false);
  for (NodeId u : queue) seen[u] = true;
  while (!queue.empty()) {
    const NodeId u = queue.back();
    queue.pop_back();
    for (const HalfEdge& e : g.out_neighbors(u))
      if (!seen[e.node]) {
        seen[e.node] = true;
        if (cls[e.node] == kMisc) cls[e.node] = kOut;
        queue.push_back(e.node);
      }
  }
  // backward reach -> IN
  queue = frontier;
  seen.assign(n, false);
  for (NodeId u : queue) seen[u] = true;
  while (!queue.empty()) {
    const NodeId u = queue.back();
    queue.pop_back();
    for (const HalfEdge& e : g.in_neighbors(u))
      if (!seen[e.node]) {
        seen[e.node] = true;
        if (cls[e.node] == kMisc) cls[e.node] = kIn;
        queue.push_back(e.node);
      }
  }

  BowTie bt;
  for (NodeId u = 0; u < n; ++u) {
    switch (cls[u]) {
      case kScc: bt.scc_nodes.push_back(u); break;
      case kIn: bt.in_nodes.push_back(u); break;
      case kOut: bt.out_nodes.push_back(u); break;
      default: bt.misc_nodes.push_back(u); break;
    }
  }

  // largest weakly connected component via union-find
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (NodeId u = 0; u < n; ++u)
    for (const HalfEdge& e : g.out_neighbors(u)) {
      const NodeId a = find(u), b = find(e.node);
      if (a != b) parent[a] = b;
    }
  std::vector<std::size_t> wcc_size(n, 0);
  for (NodeId u = 0; u < n; ++u) ++wcc_size[find(u)];
  bt.wcc_star_size = *std::max_element(wcc_size.begin(), wcc_size.end());
  return bt;
}

double symmetric_link_fraction(const EvidenceNetwork& g) {
  if (g.num_arcs() == 0)
    throw InputError("symmetric_link_fraction: network '" + g.name() +
                     "' has no edges");
  std::size_t symmetric = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (const HalfEdge& e : g.out_neighbors(u))
      if (g.has_arc(e.node, u)) ++symmetric;
  return static_cast<double>(symmetric) / static_cast<double>(g.num_arcs());
}

KrackhardtResult krackhardt_hierarchy(const EvidenceNetwork& g,
                                      std::optional<PairSample> sample,
                                      std::size_t workers) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw InputError("krackhardt_hierarchy: need at least 2 nodes");

  KrackhardtResult result;

  if (!sample) {
    // One BFS per node; reach matrix as packed bitset rows.
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> reach(n * words, 0);
    parallel_for(n, effective_workers(workers), [&](std::size_t src) {
      OutAdj adj{g, {}};
      std::vector<std::uint32_t> dist;
      bfs(static_cast<NodeId>(src), n, adj, dist);
      std::uint64_t* row = &reach[src * words];
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] != kUnset && v != src) row[v / 64] |= 1ULL << (v % 64);
    });

    std::size_t connected = 0, one_way = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        const bool uv = reach[u * words + v / 64] >> (v % 64) & 1;
        const bool vu = reach[v * words + u / 64] >> (u % 64) & 1;
        if (uv || vu) {
          ++connected;
          if (uv != vu) ++one_way;
        }
      }
    if (connected == 0)
      throw InputError("krackhardt_hierarchy: no connected node pairs");
    result.value = static_cast<double>(one_way) / connected;
    result.connected_pairs = connected;
    return result;
  }

  // Sampled estimate: uniform unordered pairs, unconnected ones skipped.
  result.sampled = true;
  result.seed = sample->seed;
  result.sample_draws = sample->count;

  std::vector<std::uint8_t> one_way_flag(sample->count, 0);
  std::vector<std::uint8_t> connected_flag(sample->count, 0);
  parallel_for(sample->count, effective_workers(workers), [&](std::size_t i) {
    Rng rng(derive_seed(sample->seed, i));
    const NodeId u = static_cast<NodeId>(rng.uniform(n));
    NodeId v = static_cast<NodeId>(rng.uniform(n - 1));
    if (v >= u) ++v;

    // directed reachability in both directions, early exit
    auto reaches = [&](NodeId from, NodeId to) {
      std::vector<bool> seen(n, false);
      std::vector<NodeId> queue{from};
      seen[from] = true;
      while (!queue.empty()) {
        const NodeId x = queue.back();
        queue.pop_back();
        for (const HalfEdge& e : g.out_neighbors(x)) {
          if (e.node == to) return true;
          if (!seen[e.node]) {
            seen[e.node] = true;
            queue.push_back(e.node);
          }
        }
      }
      return false;
    };
    const bool uv = reaches(u, v);
    const bool vu = reaches(v, u);
    if (uv || vu) {
      connected_flag[i] = 1;
      one_way_flag[i] = uv != vu;
    }
  });

  std::size_t connected = 0, one_way = 0;
  for (std::size_t i = 0; i < sample->count; ++i) {
    connected += connected_flag[i];
    one_way += one_way_flag[i];
  }
  if (connected == 0)
    throw InputError("krackhardt_hierarchy: no connected pairs in sample");
  result.value = static_cast<double>(one_way) / connected;
  result.connected_pairs = connected;
  return result;
}

PathStats path_length_stats(const EvidenceNetwork& g, PathMode mode,
                            std::optional<SourceSample> sample,
                            std::size_t workers) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw InputError("path_length_stats: need at least 2 nodes");

  const bool undirected_view =
      mode == PathMode::Undirected || !g.directed();
  std::vector<std::vector<NodeId>> und;
  if (undirected_view) und = undirected_neighbors(g);

  std::vector<NodeId> sources;
  PathStats stats;
  stats.mode = undirected_view ? PathMode::Undirected : PathMode::Directed;
  if (sample) {
    stats.sampled = true;
    stats.seed = sample->seed;
    Rng rng(sample->seed);
    auto perm = rng.permutation(n);
    const std::size_t take = std::min(sample->count, n);
    sources.assign(perm.begin(), perm.begin() + take);
  } else {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0);
  }
  stats.source_count = sources.size();

  // Per-source histograms merge by summation, so worker order is
  // irrelevant.
  const std::size_t nw = effective_workers(workers);
  std::vector<std::vector<std::size_t>> partial(sources.size());
  parallel_for(sources.size(), nw, [&](std::size_t si) {
    const NodeId src = sources[si];
    std::vector<std::uint32_t> dist;
    if (undirected_view) {
      bfs(src, n, [&](NodeId u) -> std::span<const NodeId> {
        return {und[u].data(), und[u].size()};
      }, dist);
    } else {
      OutAdj adj{g, {}};
      bfs(src, n, adj, dist);
    }
    auto& hist = partial[si];
    for (std::size_t v = 0; v < n; ++v) {
      if (v == src || dist[v] == kUnset) continue;
      if (dist[v] >= hist.size()) hist.resize(dist[v] + 1, 0);
      ++hist[dist[v]];
    }
  });

  std::vector<std::size_t> hist;
  for (const auto& p : partial) {
    if (p.size() > hist.size()) hist.resize(p.size(), 0);
    for (std::size_t d = 0; d < p.size(); ++d) hist[d] += p[d];
  }

  // exact undirected mode: each unordered pair was seen from both ends
  if (undirected_view && !stats.sampled)
    for (auto& c : hist) c /= 2;

  std::size_t pairs = 0, length_sum = 0;
  for (std::size_t d = 1; d < hist.size(); ++d) {
    if (hist[d] == 0) continue;
    stats.length_histogram[d] = hist[d];
    pairs += hist[d];
    length_sum += d * hist[d];
    stats.diameter = d;
  }
  if (pairs == 0)
    throw InputError("path_length_stats: no reachable pair of nodes");
  stats.apl = static_cast<double>(length_sum) / static_cast<double>(pairs);
  return stats;
}

double transitivity(const EvidenceNetwork& g) {
  const auto nbr = undirected_neighbors(g);
  const std::size_t n = g.num_nodes();

  std::size_t triples = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t d = nbr[u].size();
    triples += d * (d - 1) / 2;
  }
  if (triples == 0)
    throw InputError("transitivity: network '" + g.name() +
                     "' has no connected triple");

  // closed triples = sum over undirected edges of |N(u) & N(v)|;
  // every triangle is counted once per incident edge (3x).
  auto intersection_size = [](const std::vector<NodeId>& a,
                              const std::vector<NodeId>& b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else { ++count; ++i; ++j; }
    }
    return count;
  };
  std::size_t closed = 0;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : nbr[u]) {
      if (v <= u) continue;
      closed += intersection_size(nbr[u], nbr[v]);
    }
  return static_cast<double>(closed) / static_cast<double>(triples);
}

std::vector<CcdfPoint> degree_ccdf(const EvidenceNetwork& g, DegreeMode mode) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InputError("degree_ccdf: empty network");
  std::vector<std::size_t> degrees(n);
  for (NodeId u = 0; u < n; ++u) degrees[u] = g.degree(u, mode);
  std::sort(degrees.begin(), degrees.end());

  std::vector<CcdfPoint> points;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && degrees[j] == degrees[i]) ++j;
    points.push_back({degrees[i],
                      static_cast<double>(n - i) / static_cast<double>(n)});
    i = j;
  }
  return points;
}

KnnProfile knn_profile(const EvidenceNetwork& g, DegreeMode mode) {
  const std::size_t n = g.num_nodes();
  KnnProfile profile;
  profile.mode = mode;

  // Total mode runs on the undirected simplification.
  std::vector<std::vector<NodeId>> und;
  if (mode == DegreeMode::Total) und = undirected_neighbors(g);

  auto deg = [&](NodeId u) -> std::size_t {
    if (mode == DegreeMode::Total) return und[u].size();
    return mode == DegreeMode::In ? g.in_degree(u) : g.out_degree(u);
  };
  auto for_each_neighbor = [&](NodeId u, auto&& fn) {
    if (mode == DegreeMode::Total) {
      for (NodeId v : und[u]) fn(v);
    } else if (mode == DegreeMode::In) {
      for (const HalfEdge& e : g.in_neighbors(u)) fn(e.node);
    } else {
      for (const HalfEdge& e : g.out_neighbors(u)) fn(e.node);
    }
  };

  std::map<std::size_t, std::pair<double, std::size_t>> by_degree;
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t k = deg(u);
    if (k == 0) continue;
    double sum = 0;
    for_each_neighbor(u, [&](NodeId v) { sum += static_cast<double>(deg(v)); });
    auto& [acc, cnt] = by_degree[k];
    acc += sum / static_cast<double>(k);
    ++cnt;
  }
  if (by_degree.empty())
    throw InputError("knn_profile: all nodes isolated in the chosen mode");

  for (const auto& [k, agg] : by_degree)
    profile.points.push_back(
        {k, agg.first / static_cast<double>(agg.second), agg.second});
  return profile;
}

}  // namespace evinet
