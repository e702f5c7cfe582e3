#include "samac/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace samac {

namespace {

void check_probs(std::span<const double> probs, const char* what) {
  if (probs.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(sum));
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_probs(probs_, "Distribution");
}

Distribution Distribution::uniform(std::size_t alphabet_size) {
  if (alphabet_size == 0) throw std::invalid_argument("Distribution::uniform: empty alphabet");
  return Distribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

Distribution Distribution::point_mass(std::size_t alphabet_size, std::size_t at) {
  if (at >= alphabet_size) throw std::invalid_argument("Distribution::point_mass: index out of range");
  std::vector<double> p(alphabet_size, 0.0);
  p[at] = 1.0;
  return Distribution(std::move(p));
}

Distribution Distribution::bernoulli(double p_one) {
  if (!(p_one >= 0.0 && p_one <= 1.0))
    throw std::invalid_argument("Distribution::bernoulli: p outside [0,1]");
  return Distribution({1.0 - p_one, p_one});
}

Channel::Channel(std::size_t inputs, std::size_t outputs, std::vector<double> row_major,
                 std::size_t idle_symbol)
    : inputs_(inputs), outputs_(outputs), idle_(idle_symbol), rows_(std::move(row_major)) {
  if (inputs_ == 0 || outputs_ == 0) throw std::invalid_argument("Channel: empty alphabet");
  if (rows_.size() != inputs_ * outputs_) throw std::invalid_argument("Channel: matrix size mismatch");
  if (idle_ >= inputs_) throw std::invalid_argument("Channel: idle symbol out of range");
  for (std::size_t x = 0; x < inputs_; ++x) check_probs(row_span(x), "Channel row");
}

Channel Channel::bsc(double delta, std::size_t idle_symbol) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("Channel::bsc: delta outside [0,1]");
  return Channel(2, 2, {1.0 - delta, delta, delta, 1.0 - delta}, idle_symbol);
}

Channel Channel::bec(double erasure, std::size_t idle_symbol) {
  if (!(erasure >= 0.0 && erasure <= 1.0))
    throw std::invalid_argument("Channel::bec: erasure outside [0,1]");
  return Channel(2, 3,
                 {1.0 - erasure, 0.0, erasure,  //
                  0.0, 1.0 - erasure, erasure},
                 idle_symbol);
}

Channel Channel::identity(std::size_t size, std::size_t idle_symbol) {
  std::vector<double> rows(size * size, 0.0);
  for (std::size_t x = 0; x < size; ++x) rows[x * size + x] = 1.0;
  return Channel(size, size, std::move(rows), idle_symbol);
}

Distribution Channel::row(std::size_t x) const {
  if (x >= inputs_) throw std::invalid_argument("Channel::row: input out of range");
  auto s = row_span(x);
  return Distribution(std::vector<double>(s.begin(), s.end()));
}

Distribution output_marginal(const Distribution& p, const Channel& q) {
  if (p.alphabet_size() != q.input_size())
    throw std::invalid_argument("output_marginal: alphabet mismatch");
  std::vector<double> out(q.output_size(), 0.0);
  for (std::size_t x = 0; x < q.input_size(); ++x) {
    const double px = p[x];
    if (px == 0.0) continue;
    for (std::size_t y = 0; y < q.output_size(); ++y) out[y] += px * q.at(x, y);
  }
  return Distribution(std::move(out));
}

Distribution empirical_dist(std::span<const Symbol> seq, std::size_t alphabet_size) {
  if (seq.empty()) throw std::invalid_argument("empirical_dist: empty sequence");
  std::vector<double> counts(alphabet_size, 0.0);
  for (Symbol s : seq) {
    if (s >= alphabet_size) throw std::invalid_argument("empirical_dist: symbol out of alphabet");
    counts[s] += 1.0;
  }
  const double n = static_cast<double>(seq.size());
  for (double& c : counts) c /= n;
  return Distribution(std::move(counts));
}

TypeComposition round_to_type(const Distribution& p, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("round_to_type: n must be >= 1");
  const std::size_t k = p.alphabet_size();
  std::vector<std::int64_t> counts(k);
  std::vector<double> remainders(k);
  std::int64_t assigned = 0;
  for (std::size_t a = 0; a < k; ++a) {
    const double target = static_cast<double>(n) * p[a];
    counts[a] = static_cast<std::int64_t>(std::floor(target));
    remainders[a] = target - static_cast<double>(counts[a]);
    assigned += counts[a];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
    return a < b;
  });
  for (std::int64_t left = n - assigned, i = 0; left > 0; --left, ++i)
    counts[order[static_cast<std::size_t>(i) % k]] += 1;
  return TypeComposition{std::move(counts), n};
}

}  // namespace samac
