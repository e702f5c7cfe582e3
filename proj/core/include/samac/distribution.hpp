#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace samac {

/// Channel-use symbol. Alphabets are validated to fit on construction.
using Symbol = std::uint8_t;

inline constexpr double kProbSumTol = 1e-12;

/// Probability vector on a finite alphabet [0, alphabet_size).
/// Immutable after construction; entries are non-negative and sum to one
/// within kProbSumTol.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t alphabet_size);
  static Distribution point_mass(std::size_t alphabet_size, std::size_t at);
  /// Alphabet {0,1} with P(1) = p_one.
  static Distribution bernoulli(double p_one);

  std::size_t alphabet_size() const { return probs_.size(); }
  double operator[](std::size_t a) const { return probs_[a]; }
  std::span<const double> probs() const { return probs_; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> probs_;
};

/// Row-stochastic transition matrix Q(y|x) with a designated idle input
/// symbol; the idle row is the pure-noise output distribution.
class Channel {
 public:
  Channel(std::size_t inputs, std::size_t outputs, std::vector<double> row_major,
          std::size_t idle_symbol);

  /// Binary symmetric channel with crossover delta.
  static Channel bsc(double delta, std::size_t idle_symbol = 0);
  /// Binary erasure channel; output 2 is the erasure.
  static Channel bec(double erasure, std::size_t idle_symbol = 0);
  /// Noiseless channel: output equals input.
  static Channel identity(std::size_t size, std::size_t idle_symbol = 0);

  std::size_t input_size() const { return inputs_; }
  std::size_t output_size() const { return outputs_; }
  std::size_t idle_symbol() const { return idle_; }

  /// Q(y|x)
  double at(std::size_t x, std::size_t y) const { return rows_[x * outputs_ + y]; }
  std::span<const double> row_span(std::size_t x) const {
    return {rows_.data() + x * outputs_, outputs_};
  }
  Distribution row(std::size_t x) const;
  Distribution idle_row() const { return row(idle_); }

  bool operator==(const Channel&) const = default;

 private:
  std::size_t inputs_;
  std::size_t outputs_;
  std::size_t idle_;
  std::vector<double> rows_;
};

/// Integer symbol counts of a length-n sequence (a type class).
struct TypeComposition {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;
};

/// [PQ](y) = sum_x P(x) Q(y|x)
Distribution output_marginal(const Distribution& p, const Channel& q);

/// Empirical distribution of a sequence over [0, alphabet_size).
Distribution empirical_dist(std::span<const Symbol> seq, std::size_t alphabet_size);

/// Largest-remainder rounding of n*P to integer counts summing to n;
/// remainder ties broken toward the lowest symbol index.
TypeComposition round_to_type(const Distribution& p, std::int64_t n);

}  // namespace samac
