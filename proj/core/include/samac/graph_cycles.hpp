#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "samac/distribution.hpp"

namespace samac {

/// Complete graph on k vertices with non-negative weights on the
/// n_k = k(k-1)/2 edges, indexed canonically by pairs (i,j), i < j.
struct WeightedCompleteGraph {
  int k = 0;
  std::vector<double> weights;

  WeightedCompleteGraph(int vertex_count, std::vector<double> edge_weights);

  std::size_t edge_count() const { return weights.size(); }
  static std::size_t edge_index(int i, int j, int k);
  double weight(int i, int j) const;
};

/// Undirected cycle stored in canonical vertex order: smallest vertex
/// first, then the smaller of its two cycle neighbors.
struct Cycle {
  std::vector<int> vertices;

  static Cycle canonical(std::vector<int> vertices);
  int length() const { return static_cast<int>(vertices.size()); }
  bool operator==(const Cycle&) const = default;
};

/// Number of length-r cycles in K_k: C(k,r)(r-1)!/2 for r >= 3, and one
/// 2-cycle per vertex pair (C(k,2)) so that pairwise swap events count once.
std::uint64_t count_cycles(int k, int r);

/// All canonical length-r cycles of K_k. Guarded at k <= 12.
std::vector<Cycle> enumerate_cycles(int k, int r);

/// Product of the edge weights along the cycle. A 2-cycle traverses its
/// single edge twice, so its gain is the squared edge weight.
double cycle_gain(const WeightedCompleteGraph& g, const Cycle& c);

struct Lemma1Result {
  double lhs_mean = 0.0;  // average cycle gain over all length-r cycles
  double rhs = 0.0;       // ((sum of squared weights) / n_k)^(r/2)
  bool holds = false;
};

/// Checks the cycle-mean bound: mean gain <= ((sum a_i^2)/n_k)^(r/2),
/// by exhaustive enumeration. Guarded at k <= 10.
Lemma1Result lemma1_check(const WeightedCompleteGraph& g, int r);

/// Confusability graph for an identification instance: edge (i,j) carries
/// exp(-n B(P_i, P_j)). Identical distributions get weight zero instead of
/// one, so indistinguishable pairs never contribute gain.
WeightedCompleteGraph identification_graph(std::span<const Distribution> dists, int n);

}  // namespace samac
