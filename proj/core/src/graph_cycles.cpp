#include "samac/graph_cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "samac/errors.hpp"
#include "samac/info.hpp"

namespace samac {

namespace {
constexpr int kEnumGuard = 12;
constexpr int kLemmaGuard = 10;

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t res = 1;
  for (int i = 1; i <= r; ++i) res = res * static_cast<std::uint64_t>(n - r + i) / i;
  return res;
}
}  // namespace

WeightedCompleteGraph::WeightedCompleteGraph(int vertex_count, std::vector<double> edge_weights)
    : k(vertex_count), weights(std::move(edge_weights)) {
  if (k < 2) throw std::invalid_argument("WeightedCompleteGraph: need k >= 2");
  const std::size_t n_k = static_cast<std::size_t>(k) * (k - 1) / 2;
  if (weights.size() != n_k)
    throw std::invalid_argument("WeightedCompleteGraph: expected k(k-1)/2 weights");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("WeightedCompleteGraph: negative weight");
}

std::size_t WeightedCompleteGraph::edge_index(int i, int j, int k) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= k || i == j) throw std::invalid_argument("edge_index: bad vertex pair");
  // edges (0,1),(0,2),...,(0,k-1),(1,2),...
  return static_cast<std::size_t>(i) * k - static_cast<std::size_t>(i) * (i + 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

double WeightedCompleteGraph::weight(int i, int j) const {
  return weights[edge_index(i, j, k)];
}

Cycle Cycle::canonical(std::vector<int> v) {
  const std::size_t r = v.size();
  if (r < 2) throw std::invalid_argument("Cycle: need at least 2 vertices");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (v[i] == v[j]) throw std::invalid_argument("Cycle: repeated vertex");
  const auto min_it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), min_it, v.end());
  if (r > 2 && v[1] > v[r - 1]) std::reverse(v.begin() + 1, v.end());
  return Cycle{std::move(v)};
}

std::uint64_t count_cycles(int k, int r) {
  if (r < 2 || r > k) throw std::invalid_argument("count_cycles: need 2 <= r <= k");
  if (r == 2) return binomial(k, 2);
  std::uint64_t perms = 1;  // (r-1)!/2
  for (int i = 2; i < r; ++i) perms *= static_cast<std::uint64_t>(i);
  return binomial(k, r) * perms / 2;
}

std::vector<Cycle> enumerate_cycles(int k, int r) {
  if (r < 2 || r > k) throw std::invalid_argument("enumerate_cycles: need 2 <= r <= k");
  if (k > kEnumGuard) throw guard_error("enumerate_cycles: k beyond desk-scale guard (12)");
  std::vector<Cycle> cycles;
  cycles.reserve(count_cycles(k, r));
  // choose the r-vertex subset in lexicographic order, then distinct
  // cyclic orders within each subset
  std::vector<int> subset(r);
  std::vector<int> comb(r);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = comb[i];
    if (r == 2) {
      cycles.push_back(Cycle{{subset[0], subset[1]}});
    } else {
      // fix subset[0] first; permute the rest, keeping one direction
      std::vector<int> rest(subset.begin() + 1, subset.end());
      std::sort(rest.begin(), rest.end());
      do {
        if (rest.front() > rest.back()) continue;  // reflection representative
        std::vector<int> verts;
        verts.reserve(r);
        verts.push_back(subset[0]);
        verts.insert(verts.end(), rest.begin(), rest.end());
        cycles.push_back(Cycle{std::move(verts)});
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    // advance combination
    int i = r - 1;
    while (i >= 0 && comb[i] == k - r + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  return cycles;
}

double cycle_gain(const WeightedCompleteGraph& g, const Cycle& c) {
  const int r = c.length();
  for (int v : c.vertices)
    if (v < 0 || v >= g.k) throw std::invalid_argument("cycle_gain: vertex out of range");
  if (r == 2) {
    const double w = g.weight(c.vertices[0], c.vertices[1]);
    return w * w;
  }
  double gain = 1.0;
  for (int i = 0; i < r; ++i) gain *= g.weight(c.vertices[i], c.vertices[(i + 1) % r]);
  return gain;
}

Lemma1Result lemma1_check(const WeightedCompleteGraph& g, int r) {
  if (g.k > kLemmaGuard) throw guard_error("lemma1_check: k beyond desk-scale guard (10)");
  const auto cycles = enumerate_cycles(g.k, r);
  double sum = 0.0;
  for (const auto& c : cycles) sum += cycle_gain(g, c);
  const double lhs_mean = sum / static_cast<double>(cycles.size());
  double sq = 0.0;
  for (double w : g.weights) sq += w * w;
  const double rhs = std::pow(sq / static_cast<double>(g.edge_count()), 0.5 * r);
  return Lemma1Result{lhs_mean, rhs, lhs_mean <= rhs * (1.0 + 1e-12)};
}

WeightedCompleteGraph identification_graph(std::span<const Distribution> dists, int n) {
  if (dists.size() < 2) throw std::invalid_argument("identification_graph: need >= 2 distributions");
  const int k = static_cast<int>(dists.size());
  const std::size_t alphabet = dists[0].alphabet_size();
  for (const auto& d : dists)
    if (d.alphabet_size() != alphabet)
      throw std::invalid_argument("identification_graph: alphabet mismatch");
  std::vector<double> weights(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double b = bhattacharyya_dist(dists[i], dists[j]);
      double w;
      if (b <= 1e-12) {
        w = 0.0;  // indistinguishable pair, never a usable confusion edge
      } else if (n == 0) {
        w = 1.0;
      } else {
        w = std::exp(-static_cast<double>(n) * b);
      }
      weights[WeightedCompleteGraph::edge_index(i, j, k)] = w;
    }
  }
  return WeightedCompleteGraph(k, std::move(weights));
}

}  // namespace samac
