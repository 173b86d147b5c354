#include "evinet/qap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evinet/parallel.hpp"
#include "evinet/rng.hpp"

namespace evinet {

namespace {

// Restricted adjacency as a flat arc list plus a hashable lookup; the
// covariance only needs sums, squared sums and the cellwise product.
struct CellView {
  std::vector<Arc> arcs;             // weights per options.weighted
  std::vector<std::vector<HalfEdge>> rows;  // sorted, same weights
  double sum = 0;
  double sum_sq = 0;

  double weight_at(NodeId u, NodeId v) const {
    const auto& row = rows[u];
    auto it = std::lower_bound(
        row.begin(), row.end(), v,
        [](const HalfEdge& e, NodeId node) { return e.node < node; });
    return (it != row.end() && it->node == v) ? it->weight : 0.0;
  }
};

CellView make_view(const EvidenceNetwork& g, bool weighted) {
  CellView view;
  view.rows.resize(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (const HalfEdge& e : g.out_neighbors(u)) {
      const double w = weighted ? e.weight : 1.0;
      view.arcs.push_back({u, e.node, w});
      view.rows[u].push_back({e.node, w});
      view.sum += w;
      view.sum_sq += w * w;
    }
  }
  return view;
}

struct Moments {
  double cells;
  double mu1, mu2;
  double var1, var2;
  double denom;  // cells - 1
};

Moments moments(const RestrictedPair& pair, const CellView& v1,
                const CellView& v2, const QapOptions& options) {
  const double n = static_cast<double>(pair.num_common());
  if (n < 2) throw InputError("graph_covariance: need at least 2 common nodes");
  Moments m;
  // Self-loops are rejected at load, so both diagonals are zero and the
  // flag only changes the cell count.
  m.cells = options.include_diagonal ? n * n : n * n - n;
  m.denom = m.cells - 1;
  m.mu1 = v1.sum / m.cells;
  m.mu2 = v2.sum / m.cells;
  m.var1 = (v1.sum_sq - m.cells * m.mu1 * m.mu1) / m.denom;
  m.var2 = (v2.sum_sq - m.cells * m.mu2 * m.mu2) / m.denom;
  return m;
}

// sum over cells of A1[i,j] * A2[i,j], optionally with A2 relabeled by pi.
double cell_product(const CellView& v1, const CellView& v2,
                    const std::uint32_t* pi) {
  double s = 0;
  for (const Arc& a : v1.arcs) {
    const NodeId u = pi ? pi[a.src] : a.src;
    const NodeId v = pi ? pi[a.dst] : a.dst;
    s += a.weight * v2.weight_at(u, v);
  }
  return s;
}

double rho_from_product(double s12, const Moments& m) {
  const double cov = (s12 - m.cells * m.mu1 * m.mu2) / m.denom;
  return cov / std::sqrt(m.var1 * m.var2);
}

void require_variance(const Moments& m, const RestrictedPair& pair) {
  if (m.var1 <= 0)
    throw InputError("graph_correlation: network '" + pair.first.name() +
                     "' has zero variance on the common vertex set");
  if (m.var2 <= 0)
    throw InputError("graph_correlation: network '" + pair.second.name() +
                     "' has zero variance on the common vertex set");
}

}  // namespace

double graph_covariance(const RestrictedPair& pair, QapOptions options) {
  const CellView v1 = make_view(pair.first, options.weighted);
  const CellView v2 = make_view(pair.second, options.weighted);
  const Moments m = moments(pair, v1, v2, options);
  const double s12 = cell_product(v1, v2, nullptr);
  return (s12 - m.cells * m.mu1 * m.mu2) / m.denom;
}

double graph_correlation(const RestrictedPair& pair, QapOptions options) {
  const CellView v1 = make_view(pair.first, options.weighted);
  const CellView v2 = make_view(pair.second, options.weighted);
  const Moments m = moments(pair, v1, v2, options);
  require_variance(m, pair);
  return rho_from_product(cell_product(v1, v2, nullptr), m);
}

QapResult qap_test(const RestrictedPair& pair, std::size_t permutations,
                   std::uint64_t seed, QapOptions options,
                   std::size_t workers) {
  if (permutations < 1)
    throw InputError("qap_test: permutations must be >= 1");

  const CellView v1 = make_view(pair.first, options.weighted);
  const CellView v2 = make_view(pair.second, options.weighted);
  const Moments m = moments(pair, v1, v2, options);
  require_variance(m, pair);

  QapResult result;
  result.seed = seed;
  result.permutations = permutations;
  result.diagonal_included = options.include_diagonal;
  result.rho_observed = rho_from_product(cell_product(v1, v2, nullptr), m);
  result.rho_null_samples.resize(permutations);

  const std::size_t n = pair.num_common();
  // Per-permutation RNG streams derived from (seed, index): the draw is
  // identical whatever the worker count.
  parallel_for(permutations, effective_workers(workers), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const auto pi = rng.permutation(n);
    result.rho_null_samples[i] = rho_from_product(
        cell_product(v1, v2, pi.data()), m);
  });

  std::size_t at_least = 0;
  for (double rho : result.rho_null_samples)
    if (rho >= result.rho_observed) ++at_least;
  result.p_value =
      static_cast<double>(at_least) / static_cast<double>(permutations);
  return result;
}

QapResult qap_test_exhaustive(const RestrictedPair& pair, QapOptions options) {
  const std::size_t n = pair.num_common();
  if (n > 10)
    throw InputError("qap_test_exhaustive: n = " + std::to_string(n) +
                     " is too large to enumerate");

  const CellView v1 = make_view(pair.first, options.weighted);
  const CellView v2 = make_view(pair.second, options.weighted);
  const Moments m = moments(pair, v1, v2, options);
  require_variance(m, pair);

  QapResult result;
  result.diagonal_included = options.include_diagonal;
  result.exhaustive = true;
  result.rho_observed = rho_from_product(cell_product(v1, v2, nullptr), m);

  std::vector<std::uint32_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::size_t at_least = 0;
  do {
    const double rho = rho_from_product(cell_product(v1, v2, pi.data()), m);
    result.rho_null_samples.push_back(rho);
    if (rho >= result.rho_observed) ++at_least;
  } while (std::next_permutation(pi.begin(), pi.end()));

  result.permutations = result.rho_null_samples.size();
  result.p_value = static_cast<double>(at_least) /
                   static_cast<double>(result.permutations);
  return result;
}

}  // namespace evinet
