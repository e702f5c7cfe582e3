#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "samac/codebook.hpp"
#include "samac/distribution.hpp"
#include "samac/rng.hpp"

namespace samac {

/// Per-user slot and message choices for one trial.
struct TransmissionPlan {
  std::vector<int> slots;     // t_i in [0, A)
  std::vector<int> messages;  // m_i in [0, M)
  int block_count = 0;
  int block_length = 0;

  bool collision() const;
};

TransmissionPlan draw_plan(int users, int blocks, int messages, int n, Rng& rng);

/// Received window: `blocks` blocks of `length` output symbols each.
struct OutputGrid {
  int blocks = 0;
  int length = 0;
  std::vector<Symbol> data;  // row-major, block-by-block

  std::span<const Symbol> block(int j) const {
    return {data.data() + static_cast<std::size_t>(j) * length, static_cast<std::size_t>(length)};
  }
};

/// Sends each user's chosen codeword in its slot through that user's
/// channel; all other blocks carry idle symbols through the shared noise
/// row. Throws on colliding plans (collision semantics are not modeled;
/// callers count colliding trials as global errors without decoding).
OutputGrid transmit(std::span<const Codebook> codebooks, const TransmissionPlan& plan,
                    std::span<const Channel> channels, std::uint64_t seed);

struct SyncInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Valid threshold range [-D(Qstar||Q|P), D(Q||Qstar|P)] for the
/// codeword-LLR synchronizer.
SyncInterval sync_threshold_interval(const Channel& q, const Distribution& p);

/// Block j is declared active iff some (user, message) codeword clears
/// (1/n) log Q(y_j|x) / Qstar(y_j) >= threshold. Identical-channel
/// (two-stage) pipeline. Returns ascending block indices.
std::vector<int> sync_threshold_decode(const OutputGrid& y, std::span<const Codebook> codebooks,
                                       const Channel& q, double threshold);

/// Valid threshold range [-D(Qstar||M), D(M||Qstar)] for a marginal M.
SyncInterval sync_marginal_interval(const Distribution& marginal, const Distribution& q_star);

/// Block j is declared active iff some class marginal clears its own
/// threshold: (1/n) log M_c(y_j) / Qstar(y_j) >= threshold_c. Classes
/// whose marginal equals the noise row are degenerate (LLR identically 0)
/// and reported through `degenerate`.
std::vector<int> sync_marginal_decode(const OutputGrid& y,
                                      std::span<const Distribution> marginals,
                                      const Distribution& q_star,
                                      std::span<const double> thresholds,
                                      std::vector<int>* degenerate = nullptr);

struct IdentifyResult {
  std::vector<int> block_class;  // per active block
  bool count_mismatch = false;   // active count != sum of class counts
};

/// ML assignment of active blocks to channel classes with known class
/// multiplicities; exhaustive over distinct class-label arrangements
/// (guarded at 8 active blocks). Users within a class are interchangeable
/// here, so correctness is up to within-class relabeling by construction.
IdentifyResult identify_users(const OutputGrid& y, std::span<const int> active_blocks,
                              std::span<const Distribution> class_marginals,
                              std::span<const int> class_counts);

/// (user_index, message) per active block; user_index refers into the
/// codebooks span.
struct SuperblockDecode {
  std::vector<std::pair<int, int>> block_assignment;
};

/// Exact ML over user-permutation x message tuples on the concatenated
/// active blocks, one block per user. Ties resolved toward the
/// lexicographically smallest (user, message) assignment. Guarded at
/// K! M^K <= 1e5.
SuperblockDecode decode_superblock_ml(const OutputGrid& y, std::span<const int> active_blocks,
                                      std::span<const Codebook> codebooks, const Channel& q);

struct BlockDecision {
  bool idle = true;
  int user = -1;
  int message = -1;
};

/// Per-block argmax over the idle hypothesis and every (user, message)
/// pair, each user scored by its own channel. Ties prefer idle, then the
/// smallest (user, message).
std::vector<BlockDecision> block_ml_decode(const OutputGrid& y,
                                           std::span<const Codebook> codebooks,
                                           std::span<const Channel> channels);

struct TrialReport {
  bool collision = false;
  int sync_missed = 0;
  int sync_false = 0;
  bool ident_correct = false;
  bool messages_correct = false;
  bool global_error = true;
};

enum class Pipeline { thm2, thm3, thm4 };

struct ThresholdPolicy {
  enum class Kind {
    balanced,      // equates the missed-detection and false-alarm exponents
    fixed_value,   // explicit T (thm2) or per-class T_j (thm3)
    fixed_lambda,  // T derived from a given tilt parameter
  };
  Kind kind = Kind::balanced;
  std::vector<double> values;  // fixed_value: T per class; fixed_lambda: lambda per class
};

struct ExperimentConfig {
  Pipeline pipeline = Pipeline::thm2;
  int n = 0;
  int blocks = 0;    // A
  int users = 0;     // K
  int messages = 0;  // M
  /// One entry for thm2; classes for thm3; per-user (or one shared) for thm4.
  std::vector<Channel> channels;
  std::vector<Distribution> inputs;
  /// Class of each user (thm3); defaulted to all zeros when empty.
  std::vector<int> user_class;
  ThresholdPolicy threshold;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ExperimentReport {
  std::int64_t trials = 0;
  std::int64_t collisions = 0;
  std::int64_t sync_error_trials = 0;
  std::int64_t ident_error_trials = 0;
  std::int64_t message_error_trials = 0;
  std::int64_t global_errors = 0;
  double global_error_rate = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;  // 95% normal interval
  double ci_hi = 0.0;
  std::vector<double> thresholds_used;  // per class
  std::vector<double> lambdas_used;     // per class (balanced / fixed_lambda)
  std::vector<TrialReport> trial_reports;
};

/// Runs the full trial loop: plan draw, transmit, pipeline decode, report.
/// Colliding trials are counted as global errors without decoding.
/// Deterministic given (config, seed) for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct ArrangementResult {
  std::vector<int> occupancy;          // argmax occupancy vector (t_1..t_A)
  std::vector<std::vector<int>> ties;  // all occupancy vectors achieving the max
  bool swap_verified = false;          // every unbalanced vector loses to its swap
};

/// Exhaustive multinomial-probability argmax over occupancy vectors of K
/// users in A blocks, plus verification that any vector with
/// t_a - t_b > 1 is strictly beaten by moving one user from a to b.
/// Guarded at K, A <= 8.
ArrangementResult arrangement_argmax(int users, int blocks);

}  // namespace samac
