#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "samac/distribution.hpp"

namespace samac {

/// A candidate distributions on a shared alphabet, with per-sequence
/// sample length n. Duplicate distributions are legal; the pairwise
/// machinery treats them as zero-weight (unconfusable-by-design) pairs.
struct IdentificationInstance {
  std::vector<Distribution> dists;
  int n = 1;
};

/// sigma[i] = index of the distribution assigned to sequence i.
struct PermutationAssignment {
  std::vector<int> sigma;
};

inline constexpr int kMaxExhaustivePermutations = 8;  // 8! = 40320

/// loglik[i][j] = log P_j(x_i^n); -inf on support violations.
std::vector<std::vector<double>> log_likelihood_matrix(
    std::span<const std::vector<Symbol>> samples, std::span<const Distribution> dists);

/// Exhaustive ML decode over all permutations, maximizing
/// sum_i log P_{sigma_i}(x_i^n). Ties broken toward the lexicographically
/// smallest permutation. Guarded at A <= 8.
PermutationAssignment ml_permutation_decode(std::span<const std::vector<Symbol>> samples,
                                            const IdentificationInstance& inst);

/// Same objective via the assignment-problem route (no size guard).
/// Must agree with the exhaustive decoder on the optimal value.
PermutationAssignment ml_permutation_decode_assignment(
    std::span<const std::vector<Symbol>> samples, const IdentificationInstance& inst);

/// S = sum_{i<j} exp(-2 n B(P_i, P_j)).
double identifiability_sum(const IdentificationInstance& inst);

/// 16 S / (1 - 4 sqrt(S)) when 4 sqrt(S) < 1, else +inf (vacuous).
double pe_upper_bound(const IdentificationInstance& inst);

/// sqrt(S) / (8 + sqrt(S)); monotone in S, always in [0, 1).
double pe_lower_bound(const IdentificationInstance& inst);

struct McIdentResult {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  /// r_histogram[r] = number of error trials with exactly r misassigned
  /// sequences; indices 0 and 1 stay zero (a permutation cannot move
  /// exactly one element).
  std::vector<std::int64_t> r_histogram;
};

/// Monte Carlo estimate of the identification error under the identity
/// assignment (sufficient by hypothesis symmetry). Likelihood ties are
/// broken uniformly at random from the per-trial RNG so symmetric
/// instances behave like fair coin flips. Deterministic given the seed,
/// independent of thread count.
McIdentResult mc_identification_error(const IdentificationInstance& inst, std::int64_t trials,
                                      std::uint64_t seed, int threads = 1);

/// Histogram over r (misassigned count) among error trials; same trial
/// stream as mc_identification_error for the same seed.
std::vector<std::int64_t> dominant_error_profile(const IdentificationInstance& inst,
                                                 std::int64_t trials, std::uint64_t seed,
                                                 int threads = 1);

}  // namespace samac
