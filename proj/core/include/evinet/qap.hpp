#pragma once

#include <cstdint>
#include <vector>

#include "evinet/graph.hpp"

namespace evinet {

struct QapOptions {
  bool weighted = true;           // use edge weights; false -> 0/1 cells
  bool include_diagonal = true;   // sums range over all n^2 cells as written
};

// cov(G1,G2) = 1/(cells-1) * sum over cells (A1 - mu1)(A2 - mu2), with
// cells = n^2 (or n^2 - n when the diagonal is excluded). Throws on n < 2.
double graph_covariance(const RestrictedPair& pair, QapOptions options = {});

// cov / sqrt(var1 var2); throws (naming the network) when a variance is 0.
double graph_correlation(const RestrictedPair& pair, QapOptions options = {});

struct QapResult {
  double rho_observed = 0.0;
  std::size_t permutations = 0;
  std::vector<double> rho_null_samples;
  double p_value = 1.0;  // #(rho_pi >= rho_observed) / permutations
  std::uint64_t seed = 0;
  bool diagonal_included = true;
  bool exhaustive = false;
};

// QAP significance test: uniform random simultaneous row/column
// relabelings of the second network. Throws on permutations < 1.
QapResult qap_test(const RestrictedPair& pair, std::size_t permutations,
                   std::uint64_t seed, QapOptions options = {},
                   std::size_t workers = 0);

// Enumerates all n! permutations (guarded to n <= 10).
QapResult qap_test_exhaustive(const RestrictedPair& pair,
                              QapOptions options = {});

}  // namespace evinet
