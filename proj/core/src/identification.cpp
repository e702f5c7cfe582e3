#include "samac/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "samac/assignment.hpp"
#include "samac/errors.hpp"
#include "samac/info.hpp"
#include "samac/parallel.hpp"
#include "samac/rng.hpp"

namespace samac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kStreamIdentTrial = 0x1d3a;

void check_instance(const IdentificationInstance& inst) {
  if (inst.dists.size() < 2)
    throw std::invalid_argument("IdentificationInstance: need at least 2 distributions");
  const std::size_t alphabet = inst.dists[0].alphabet_size();
  for (const auto& d : inst.dists)
    if (d.alphabet_size() != alphabet)
      throw std::invalid_argument("IdentificationInstance: alphabet mismatch");
  if (inst.n < 0) throw std::invalid_argument("IdentificationInstance: negative n");
}

void check_exhaustive_guard(std::size_t a) {
  if (a > kMaxExhaustivePermutations)
    throw guard_error("ml_permutation_decode: A > 8 exceeds the exhaustive-search guard");
}

// Exhaustive argmax over permutations. When tie_rng is null, the first
// (lexicographically smallest) argmax wins; otherwise exact ties are
// resolved uniformly at random by reservoir sampling.
std::vector<int> exhaustive_argmax(const std::vector<std::vector<double>>& loglik, Rng* tie_rng) {
  const std::size_t a = loglik.size();
  std::vector<int> perm(a);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_value = -kInf;
  std::uint64_t tie_count = 0;
  do {
    double value = 0.0;
    for (std::size_t i = 0; i < a; ++i) value += loglik[i][perm[i]];
    if (value > best_value || (best_value == -kInf && value == -kInf && tie_count == 0)) {
      best_value = value;
      best = perm;
      tie_count = 1;
    } else if (tie_rng != nullptr && value == best_value) {
      ++tie_count;
      if (tie_rng->uniform_below(tie_count) == 0) best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct TrialOutcome {
  std::uint8_t misassigned = 0;  // 0 = decoded correctly
};

}  // namespace

std::vector<std::vector<double>> log_likelihood_matrix(std::span<const std::vector<Symbol>> samples,
                                                       std::span<const Distribution> dists) {
  const std::size_t alphabet = dists.empty() ? 0 : dists[0].alphabet_size();
  std::vector<std::vector<double>> loglik(samples.size(),
                                          std::vector<double>(dists.size(), 0.0));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (Symbol s : samples[i])
      if (s >= alphabet)
        throw std::invalid_argument("log_likelihood_matrix: symbol out of alphabet");
    for (std::size_t j = 0; j < dists.size(); ++j) {
      double sum = 0.0;
      for (Symbol s : samples[i]) {
        const double p = dists[j][s];
        if (p == 0.0) {
          sum = -kInf;
          break;
        }
        sum += std::log(p);
      }
      loglik[i][j] = sum;
    }
  }
  return loglik;
}

PermutationAssignment ml_permutation_decode(std::span<const std::vector<Symbol>> samples,
                                            const IdentificationInstance& inst) {
  check_instance(inst);
  if (samples.size() != inst.dists.size())
    throw std::invalid_argument("ml_permutation_decode: sample/distribution count mismatch");
  check_exhaustive_guard(inst.dists.size());
  const auto loglik = log_likelihood_matrix(samples, inst.dists);
  return PermutationAssignment{exhaustive_argmax(loglik, nullptr)};
}

PermutationAssignment ml_permutation_decode_assignment(std::span<const std::vector<Symbol>> samples,
                                                       const IdentificationInstance& inst) {
  check_instance(inst);
  if (samples.size() != inst.dists.size())
    throw std::invalid_argument("ml_permutation_decode_assignment: count mismatch");
  const auto loglik = log_likelihood_matrix(samples, inst.dists);
  return PermutationAssignment{max_assignment(loglik)};
}

double identifiability_sum(const IdentificationInstance& inst) {
  check_instance(inst);
  const std::size_t a = inst.dists.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = i + 1; j < a; ++j) {
      const double b = bhattacharyya_dist(inst.dists[i], inst.dists[j]);
      if (b == kInf) {
        sum += inst.n > 0 ? 0.0 : 1.0;
      } else {
        sum += std::exp(-2.0 * static_cast<double>(inst.n) * b);
      }
    }
  }
  return sum;
}

double pe_upper_bound(const IdentificationInstance& inst) {
  const double s = identifiability_sum(inst);
  if (s == 0.0) return 0.0;
  const double root = 4.0 * std::sqrt(s);
  if (root >= 1.0) return kInf;
  return 16.0 * s / (1.0 - root);
}

double pe_lower_bound(const IdentificationInstance& inst) {
  const double s = identifiability_sum(inst);
  const double root = std::sqrt(s);
  return root / (8.0 + root);
}

McIdentResult mc_identification_error(const IdentificationInstance& inst, std::int64_t trials,
                                      std::uint64_t seed, int threads) {
  check_instance(inst);
  check_exhaustive_guard(inst.dists.size());
  if (trials < 1) throw std::invalid_argument("mc_identification_error: trials must be >= 1");
  const std::size_t a = inst.dists.size();
  const int n = inst.n;

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    Rng rng = Rng::derive(seed, kStreamIdentTrial, t);
    std::vector<std::vector<Symbol>> samples(a, std::vector<Symbol>(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < a; ++i) {
      const auto probs = inst.dists[i].probs();
      for (int u = 0; u < n; ++u)
        samples[i][static_cast<std::size_t>(u)] = static_cast<Symbol>(rng.sample(probs));
    }
    const auto loglik = log_likelihood_matrix(samples, inst.dists);
    const auto sigma = exhaustive_argmax(loglik, &rng);
    std::uint8_t mis = 0;
    for (std::size_t i = 0; i < a; ++i)
      if (sigma[i] != static_cast<int>(i)) ++mis;
    outcomes[t].misassigned = mis;
  });

  McIdentResult res;
  res.trials = trials;
  res.r_histogram.assign(a + 1, 0);
  for (const auto& o : outcomes) {
    if (o.misassigned > 0) {
      ++res.errors;
      ++res.r_histogram[o.misassigned];
    }
  }
  res.p_hat = static_cast<double>(res.errors) / static_cast<double>(trials);
  res.std_err = std::sqrt(res.p_hat * (1.0 - res.p_hat) / static_cast<double>(trials));
  return res;
}

std::vector<std::int64_t> dominant_error_profile(const IdentificationInstance& inst,
                                                 std::int64_t trials, std::uint64_t seed,
                                                 int threads) {
  return mc_identification_error(inst, trials, seed, threads).r_histogram;
}

}  // namespace samac
