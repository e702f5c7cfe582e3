#include "samac/sasmac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "samac/errors.hpp"
#include "samac/info.hpp"
#include "samac/chernoff.hpp"
#include "samac/parallel.hpp"

namespace samac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kStreamCodebook = 0xc0de;
constexpr std::uint64_t kStreamPlan = 0x91a7;
constexpr std::uint64_t kStreamNoise = 0x7019;
constexpr double kSuperblockGuard = 1e5;

double log_prob_iid(std::span<const Symbol> y, const Distribution& d) {
  double sum = 0.0;
  for (Symbol s : y) {
    const double p = d[s];
    if (p == 0.0) return -kInf;
    sum += std::log(p);
  }
  return sum;
}

double log_prob_channel(std::span<const Symbol> y, const Channel& q, std::span<const Symbol> x) {
  double sum = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double p = q.at(x[t], y[t]);
    if (p == 0.0) return -kInf;
    sum += std::log(p);
  }
  return sum;
}

// Normalized LLR with the codeword-likelihood term deciding impossible
// cases first: an impossible codeword scores -inf even against impossible
// noise, an impossible noise row otherwise scores +inf.
double normalized_llr(double log_num, double log_den, int n) {
  if (log_num == -kInf) return -kInf;
  if (log_den == -kInf) return kInf;
  return (log_num - log_den) / static_cast<double>(n);
}

void check_common_idle_row(std::span<const Channel> channels) {
  const Distribution star = channels[0].idle_row();
  for (const auto& q : channels) {
    if (q.output_size() != channels[0].output_size())
      throw std::invalid_argument("sasmac: output alphabet mismatch across channels");
    for (std::size_t y = 0; y < star.alphabet_size(); ++y)
      if (std::abs(q.at(q.idle_symbol(), y) - star[y]) > kProbSumTol)
        throw std::invalid_argument("sasmac: channels do not share an idle row");
  }
}

}  // namespace

bool TransmissionPlan::collision() const {
  std::vector<int> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

TransmissionPlan draw_plan(int users, int blocks, int messages, int n, Rng& rng) {
  if (users < 1 || blocks < 1 || messages < 1 || n < 1)
    throw std::invalid_argument("draw_plan: bad arguments");
  TransmissionPlan plan;
  plan.block_count = blocks;
  plan.block_length = n;
  plan.slots.resize(static_cast<std::size_t>(users));
  plan.messages.resize(static_cast<std::size_t>(users));
  for (auto& t : plan.slots) t = static_cast<int>(rng.uniform_below(blocks));
  for (auto& m : plan.messages) m = static_cast<int>(rng.uniform_below(messages));
  return plan;
}

OutputGrid transmit(std::span<const Codebook> codebooks, const TransmissionPlan& plan,
                    std::span<const Channel> channels, std::uint64_t seed) {
  const std::size_t users = codebooks.size();
  if (users == 0 || plan.slots.size() != users || plan.messages.size() != users ||
      channels.size() != users)
    throw std::invalid_argument("transmit: size mismatch");
  if (plan.collision()) throw std::invalid_argument("transmit: colliding plan");
  check_common_idle_row(channels);
  if (channels[0].output_size() > 256) throw std::invalid_argument("transmit: output alphabet too large");

  const int a = plan.block_count;
  const int n = plan.block_length;
  for (std::size_t i = 0; i < users; ++i) {
    if (codebooks[i].block_length() != n) throw std::invalid_argument("transmit: codeword length != n");
    if (plan.messages[i] >= codebooks[i].message_count())
      throw std::invalid_argument("transmit: message out of range");
    if (plan.slots[i] >= a) throw std::invalid_argument("transmit: slot out of range");
  }

  std::vector<int> occupant(static_cast<std::size_t>(a), -1);
  for (std::size_t i = 0; i < users; ++i) occupant[static_cast<std::size_t>(plan.slots[i])] = static_cast<int>(i);

  const Distribution star = channels[0].idle_row();
  Rng rng(seed);
  OutputGrid grid;
  grid.blocks = a;
  grid.length = n;
  grid.data.resize(static_cast<std::size_t>(a) * n);
  for (int j = 0; j < a; ++j) {
    Symbol* out = grid.data.data() + static_cast<std::size_t>(j) * n;
    const int who = occupant[static_cast<std::size_t>(j)];
    if (who < 0) {
      for (int t = 0; t < n; ++t) out[t] = static_cast<Symbol>(rng.sample(star.probs()));
    } else {
      const auto& word = codebooks[static_cast<std::size_t>(who)]
                             .codewords[static_cast<std::size_t>(plan.messages[static_cast<std::size_t>(who)])];
      const Channel& q = channels[static_cast<std::size_t>(who)];
      for (int t = 0; t < n; ++t)
        out[t] = static_cast<Symbol>(rng.sample(q.row_span(word[static_cast<std::size_t>(t)])));
    }
  }
  return grid;
}

SyncInterval sync_threshold_interval(const Channel& q, const Distribution& p) {
  const Distribution star = q.idle_row();
  double lo = 0.0;  // D(Qstar||Q|P)
  for (std::size_t x = 0; x < q.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    lo += p[x] * kl_div(star, q.row(x));
  }
  return SyncInterval{-lo, cond_kl(q, star, p)};
}

std::vector<int> sync_threshold_decode(const OutputGrid& y, std::span<const Codebook> codebooks,
                                       const Channel& q, double threshold) {
  std::vector<int> active;
  const int n = y.length;
  for (int j = 0; j < y.blocks; ++j) {
    const auto block = y.block(j);
    const double log_star = log_prob_iid(block, q.idle_row());
    bool hit = false;
    for (const auto& book : codebooks) {
      for (const auto& word : book.codewords) {
        const double llr = normalized_llr(log_prob_channel(block, q, word), log_star, n);
        if (llr >= threshold) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) active.push_back(j);
  }
  return active;
}

SyncInterval sync_marginal_interval(const Distribution& marginal, const Distribution& q_star) {
  return SyncInterval{-kl_div(q_star, marginal), kl_div(marginal, q_star)};
}

std::vector<int> sync_marginal_decode(const OutputGrid& y,
                                      std::span<const Distribution> marginals,
                                      const Distribution& q_star,
                                      std::span<const double> thresholds,
                                      std::vector<int>* degenerate) {
  if (marginals.size() != thresholds.size())
    throw std::invalid_argument("sync_marginal_decode: marginal/threshold count mismatch");
  if (degenerate != nullptr) {
    degenerate->clear();
    for (std::size_t c = 0; c < marginals.size(); ++c)
      if (marginals[c] == q_star) degenerate->push_back(static_cast<int>(c));
  }
  std::vector<int> active;
  const int n = y.length;
  for (int j = 0; j < y.blocks; ++j) {
    const auto block = y.block(j);
    const double log_star = log_prob_iid(block, q_star);
    bool hit = false;
    for (std::size_t c = 0; c < marginals.size() && !hit; ++c) {
      const double llr = normalized_llr(log_prob_iid(block, marginals[c]), log_star, n);
      if (llr >= thresholds[c]) hit = true;
    }
    if (hit) active.push_back(j);
  }
  return active;
}

IdentifyResult identify_users(const OutputGrid& y, std::span<const int> active_blocks,
                              std::span<const Distribution> class_marginals,
                              std::span<const int> class_counts) {
  if (class_marginals.size() != class_counts.size())
    throw std::invalid_argument("identify_users: class list mismatch");
  if (active_blocks.size() > 8)
    throw guard_error("identify_users: more than 8 active blocks for exhaustive ML");
  IdentifyResult res;
  const std::int64_t expected =
      std::accumulate(class_counts.begin(), class_counts.end(), std::int64_t{0});
  if (expected != static_cast<std::int64_t>(active_blocks.size())) {
    res.count_mismatch = true;
    return res;
  }

  std::vector<int> labels;
  for (std::size_t c = 0; c < class_counts.size(); ++c)
    labels.insert(labels.end(), static_cast<std::size_t>(class_counts[c]), static_cast<int>(c));

  const std::size_t b_count = active_blocks.size();
  std::vector<std::vector<double>> loglik(b_count,
                                          std::vector<double>(class_marginals.size(), 0.0));
  for (std::size_t b = 0; b < b_count; ++b)
    for (std::size_t c = 0; c < class_marginals.size(); ++c)
      loglik[b][c] = log_prob_iid(y.block(active_blocks[b]), class_marginals[c]);

  std::vector<int> best = labels;
  double best_value = -kInf;
  bool first = true;
  do {
    double value = 0.0;
    for (std::size_t b = 0; b < b_count; ++b) value += loglik[b][static_cast<std::size_t>(labels[b])];
    if (first || value > best_value) {
      best_value = value;
      best = labels;
      first = false;
    }
  } while (std::next_permutation(labels.begin(), labels.end()));
  res.block_class = std::move(best);
  return res;
}

SuperblockDecode decode_superblock_ml(const OutputGrid& y, std::span<const int> active_blocks,
                                      std::span<const Codebook> codebooks, const Channel& q) {
  const std::size_t k = codebooks.size();
  if (active_blocks.size() != k)
    throw std::invalid_argument("decode_superblock_ml: one active block per user required");
  if (k == 0) return {};
  double volume = 1.0;
  for (std::size_t i = 1; i <= k; ++i) volume *= static_cast<double>(i);
  for (std::size_t i = 0; i < k; ++i) volume *= static_cast<double>(codebooks[i].message_count());
  // volume = K! * prod M_i, the hypothesis count of the joint decoder
  if (volume > kSuperblockGuard)
    throw guard_error("decode_superblock_ml: K! M^K exceeds the 1e5 guard");

  // best message (smallest index on ties) per (block, user)
  std::vector<std::vector<std::pair<int, double>>> best_msg(
      k, std::vector<std::pair<int, double>>(k, {0, -kInf}));
  for (std::size_t b = 0; b < k; ++b) {
    const auto block = y.block(active_blocks[b]);
    for (std::size_t u = 0; u < k; ++u) {
      int arg = 0;
      double best = -kInf;
      bool first = true;
      for (int m = 0; m < codebooks[u].message_count(); ++m) {
        const double v = log_prob_channel(block, q, codebooks[u].codewords[static_cast<std::size_t>(m)]);
        if (first || v > best) {
          best = v;
          arg = m;
          first = false;
        }
      }
      best_msg[b][u] = {arg, best};
    }
  }

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  double best_value = -kInf;
  bool first = true;
  do {
    double value = 0.0;
    for (std::size_t b = 0; b < k; ++b) value += best_msg[b][static_cast<std::size_t>(perm[b])].second;
    if (first || value > best_value) {
      best_value = value;
      best_perm = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  SuperblockDecode out;
  out.block_assignment.resize(k);
  for (std::size_t b = 0; b < k; ++b) {
    const int u = best_perm[b];
    out.block_assignment[b] = {u, best_msg[b][static_cast<std::size_t>(u)].first};
  }
  return out;
}

std::vector<BlockDecision> block_ml_decode(const OutputGrid& y,
                                           std::span<const Codebook> codebooks,
                                           std::span<const Channel> channels) {
  if (codebooks.size() != channels.size())
    throw std::invalid_argument("block_ml_decode: codebook/channel count mismatch");
  check_common_idle_row(channels);
  const Distribution star = channels[0].idle_row();
  std::vector<BlockDecision> decisions(static_cast<std::size_t>(y.blocks));
  for (int j = 0; j < y.blocks; ++j) {
    const auto block = y.block(j);
    BlockDecision best;  // idle hypothesis first; ties keep it
    double best_value = log_prob_iid(block, star);
    for (std::size_t u = 0; u < codebooks.size(); ++u) {
      for (int m = 0; m < codebooks[u].message_count(); ++m) {
        const double v =
            log_prob_channel(block, channels[u], codebooks[u].codewords[static_cast<std::size_t>(m)]);
        if (v > best_value) {
          best_value = v;
          best = BlockDecision{false, static_cast<int>(u), m};
        }
      }
    }
    decisions[static_cast<std::size_t>(j)] = best;
  }
  return decisions;
}

namespace {

// Pipeline-independent context resolved once per experiment.
struct ExperimentSetup {
  std::vector<int> user_channel;       // class index per user
  std::vector<Channel> per_user;       // channel per user
  std::vector<Codebook> codebooks;     // per user
  std::vector<Distribution> marginals; // per class (thm3)
  std::vector<int> class_counts;       // per class (thm3)
  std::vector<double> thresholds;      // per class (thm2: single)
  std::vector<double> lambdas;         // per class when resolvable
  Distribution star{std::vector<double>{1.0}};
};

// T(lambda) for the codeword-LLR test, increasing in lambda.
double thm2_t_of_lambda(const Channel& q, const Distribution& p, double lambda) {
  const Channel tilted = tilt_conditional(q, lambda);
  return cond_kl(tilted, q.idle_row(), p) - cond_kl(tilted, q, p);
}

double thm3_t_of_lambda(const Distribution& marginal, const Distribution& star, double lambda) {
  const Distribution tilted = tilt_output(marginal, star, lambda);
  return kl_div(tilted, star) - kl_div(tilted, marginal);
}

// Solves T(lambda) = target by bisection; returns NaN when the tilt is not
// evaluable in the interior (disjoint-support channels).
template <typename TF>
double solve_lambda(TF&& t_of, double target) {
  try {
    double lo = 1e-9, hi = 1.0 - 1e-9;
    double t_lo = t_of(lo), t_hi = t_of(hi);
    if (target <= t_lo) return lo;
    if (target >= t_hi) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (t_of(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void resolve_thresholds(const ExperimentConfig& cfg, ExperimentSetup& setup) {
  const double alpha = std::log(static_cast<double>(cfg.blocks)) / cfg.n;
  const double rate = std::log(static_cast<double>(cfg.messages)) / cfg.n;
  const std::size_t s = cfg.channels.size();

  if (cfg.pipeline == Pipeline::thm2) {
    const Channel& q = cfg.channels[0];
    const Distribution& p = cfg.inputs[0];
    switch (cfg.threshold.kind) {
      case ThresholdPolicy::Kind::fixed_value:
        setup.thresholds = {cfg.threshold.values.at(0)};
        break;
      case ThresholdPolicy::Kind::fixed_lambda: {
        const double l = cfg.threshold.values.at(0);
        setup.thresholds = {thm2_t_of_lambda(q, p, l)};
        setup.lambdas = {l};
        break;
      }
      case ThresholdPolicy::Kind::balanced: {
        // balance missed-detection and false-alarm exponents net of their
        // multiplicities: D1 - nu = D2 - (alpha+nu+R), i.e. T = alpha + R
        const double target = alpha + rate;
        const double lambda = solve_lambda(
            [&](double l) { return thm2_t_of_lambda(q, p, l); }, target);
        double t = target;
        if (!std::isnan(lambda)) {
          t = thm2_t_of_lambda(q, p, lambda);
          setup.lambdas = {lambda};
        }
        setup.thresholds = {t};
        break;
      }
    }
    return;
  }
  if (cfg.pipeline == Pipeline::thm3) {
    setup.thresholds.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
      switch (cfg.threshold.kind) {
        case ThresholdPolicy::Kind::fixed_value:
          setup.thresholds[j] = cfg.threshold.values.at(j);
          break;
        case ThresholdPolicy::Kind::fixed_lambda: {
          const double l = cfg.threshold.values.at(j);
          setup.thresholds[j] = thm3_t_of_lambda(setup.marginals[j], setup.star, l);
          setup.lambdas.push_back(l);
          break;
        }
        case ThresholdPolicy::Kind::balanced: {
          const double nu_j =
              setup.class_counts[j] > 0 ? std::log(static_cast<double>(setup.class_counts[j])) / cfg.n : 0.0;
          const double target = alpha - nu_j;
          const double lambda = solve_lambda(
              [&](double l) { return thm3_t_of_lambda(setup.marginals[j], setup.star, l); }, target);
          double t = target;
          if (!std::isnan(lambda)) {
            t = thm3_t_of_lambda(setup.marginals[j], setup.star, lambda);
            setup.lambdas.push_back(lambda);
          }
          setup.thresholds[j] = t;
          break;
        }
      }
    }
  }
}

ExperimentSetup prepare_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.blocks < 1 || cfg.users < 1 || cfg.messages < 1 || cfg.trials < 1)
    throw validation_error("run_experiment: n, A, K, M, trials must all be >= 1");
  if (cfg.channels.empty() || cfg.channels.size() != cfg.inputs.size())
    throw validation_error("run_experiment: need matching channel and input lists");
  for (std::size_t c = 0; c < cfg.channels.size(); ++c)
    if (cfg.inputs[c].alphabet_size() != cfg.channels[c].input_size())
      throw validation_error("run_experiment: input distribution / channel alphabet mismatch");
  check_common_idle_row(cfg.channels);

  ExperimentSetup setup;
  setup.star = cfg.channels[0].idle_row();

  const std::size_t k = static_cast<std::size_t>(cfg.users);
  const std::size_t s = cfg.channels.size();
  setup.user_channel.assign(k, 0);
  if (!cfg.user_class.empty()) {
    if (cfg.user_class.size() != k)
      throw validation_error("run_experiment: user_class must list every user");
    for (std::size_t i = 0; i < k; ++i) {
      if (cfg.user_class[i] < 0 || static_cast<std::size_t>(cfg.user_class[i]) >= s)
        throw validation_error("run_experiment: user_class entry out of range");
      setup.user_channel[i] = cfg.user_class[i];
    }
  } else if (s > 1) {
    if (cfg.pipeline == Pipeline::thm4 && s == k) {
      for (std::size_t i = 0; i < k; ++i) setup.user_channel[i] = static_cast<int>(i);
    } else {
      throw validation_error("run_experiment: user_class required with several channels");
    }
  }

  if (cfg.pipeline == Pipeline::thm2 && s != 1)
    throw validation_error("run_experiment: thm2 pipeline requires a single shared channel");

  setup.class_counts.assign(s, 0);
  for (std::size_t i = 0; i < k; ++i) setup.class_counts[static_cast<std::size_t>(setup.user_channel[i])]++;

  setup.per_user.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    setup.per_user.push_back(cfg.channels[static_cast<std::size_t>(setup.user_channel[i])]);

  // pipeline-specific guards, enforced before any work
  if (cfg.pipeline == Pipeline::thm2) {
    double volume = 1.0;
    for (std::size_t i = 1; i <= k; ++i) volume *= static_cast<double>(i) * cfg.messages;
    if (volume > kSuperblockGuard)
      throw guard_error("run_experiment: thm2 superblock decoder guard K! M^K > 1e5");
  }
  if (cfg.pipeline == Pipeline::thm3) {
    if (k > 8) throw guard_error("run_experiment: thm3 identification guard K > 8");
    for (std::size_t j = 0; j < s; ++j) {
      double volume = 1.0;
      for (int i = 1; i <= setup.class_counts[j]; ++i) volume *= static_cast<double>(i) * cfg.messages;
      if (volume > kSuperblockGuard)
        throw guard_error("run_experiment: thm3 per-class superblock guard exceeded");
    }
    setup.marginals.reserve(s);
    for (std::size_t j = 0; j < s; ++j)
      setup.marginals.push_back(output_marginal(cfg.inputs[j], cfg.channels[j]));
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = cfg.inputs[static_cast<std::size_t>(setup.user_channel[i])];
    const Symbol idle =
        static_cast<Symbol>(cfg.channels[static_cast<std::size_t>(setup.user_channel[i])].idle_symbol());
    const std::uint64_t seed = Rng::derive(cfg.seed, kStreamCodebook, i).next_u64();
    setup.codebooks.push_back(cfg.pipeline == Pipeline::thm2
                                  ? gen_codebook_cc(p, cfg.n, cfg.messages, static_cast<int>(i), idle, seed)
                                  : gen_codebook_iid(p, cfg.n, cfg.messages, static_cast<int>(i), idle, seed));
  }

  resolve_thresholds(cfg, setup);
  return setup;
}

// sync comparison helper: sorted true slots vs declared active blocks
void sync_errors(const TransmissionPlan& plan, const std::vector<int>& active, TrialReport& rep) {
  std::vector<int> truth = plan.slots;
  std::sort(truth.begin(), truth.end());
  std::vector<int> missed, falsed;
  std::set_difference(truth.begin(), truth.end(), active.begin(), active.end(),
                      std::back_inserter(missed));
  std::set_difference(active.begin(), active.end(), truth.begin(), truth.end(),
                      std::back_inserter(falsed));
  rep.sync_missed = static_cast<int>(missed.size());
  rep.sync_false = static_cast<int>(falsed.size());
}

TrialReport run_trial(const ExperimentConfig& cfg, const ExperimentSetup& setup,
                      std::uint64_t trial) {
  TrialReport rep;
  Rng plan_rng = Rng::derive(cfg.seed, kStreamPlan, trial);
  const TransmissionPlan plan = draw_plan(cfg.users, cfg.blocks, cfg.messages, cfg.n, plan_rng);
  if (plan.collision()) {
    rep.collision = true;
    rep.global_error = true;
    return rep;
  }
  const std::uint64_t noise_seed = Rng::derive(cfg.seed, kStreamNoise, trial).next_u64();
  const OutputGrid y = transmit(setup.codebooks, plan, setup.per_user, noise_seed);

  // block -> user map for scoring the decode stages
  std::vector<int> occupant(static_cast<std::size_t>(cfg.blocks), -1);
  for (std::size_t i = 0; i < plan.slots.size(); ++i)
    occupant[static_cast<std::size_t>(plan.slots[i])] = static_cast<int>(i);

  if (cfg.pipeline == Pipeline::thm4) {
    const auto decisions = block_ml_decode(y, setup.codebooks, setup.per_user);
    rep.ident_correct = true;
    rep.messages_correct = true;
    for (int j = 0; j < cfg.blocks; ++j) {
      const auto& d = decisions[static_cast<std::size_t>(j)];
      const int who = occupant[static_cast<std::size_t>(j)];
      if (who < 0) {
        if (!d.idle) ++rep.sync_false;
      } else if (d.idle) {
        ++rep.sync_missed;
      }
      const bool user_ok = who < 0 ? d.idle : (!d.idle && d.user == who);
      const bool msg_ok = who < 0 ? d.idle
                                  : (user_ok && d.message == plan.messages[static_cast<std::size_t>(who)]);
      rep.ident_correct = rep.ident_correct && user_ok;
      rep.messages_correct = rep.messages_correct && msg_ok;
    }
    rep.global_error = !(rep.ident_correct && rep.messages_correct);
    return rep;
  }

  std::vector<int> active;
  if (cfg.pipeline == Pipeline::thm2) {
    active = sync_threshold_decode(y, setup.codebooks, cfg.channels[0], setup.thresholds[0]);
  } else {
    active = sync_marginal_decode(y, setup.marginals, setup.star, setup.thresholds);
  }
  sync_errors(plan, active, rep);
  if (rep.sync_missed > 0 || rep.sync_false > 0) {
    rep.global_error = true;
    return rep;
  }

  if (cfg.pipeline == Pipeline::thm2) {
    const auto decoded = decode_superblock_ml(y, active, setup.codebooks, cfg.channels[0]);
    rep.ident_correct = true;
    rep.messages_correct = true;
    for (std::size_t b = 0; b < active.size(); ++b) {
      const auto [user, message] = decoded.block_assignment[b];
      const int who = occupant[static_cast<std::size_t>(active[b])];
      rep.ident_correct = rep.ident_correct && user == who;
      rep.messages_correct =
          rep.messages_correct && user == who && message == plan.messages[static_cast<std::size_t>(who)];
    }
    rep.global_error = !(rep.ident_correct && rep.messages_correct);
    return rep;
  }

  // thm3: identification stage, then per-class superblock decoding
  const auto ident = identify_users(y, active, setup.marginals, setup.class_counts);
  rep.ident_correct = !ident.count_mismatch;
  if (rep.ident_correct) {
    for (std::size_t b = 0; b < active.size(); ++b) {
      const int who = occupant[static_cast<std::size_t>(active[b])];
      if (ident.block_class[b] != setup.user_channel[static_cast<std::size_t>(who)]) {
        rep.ident_correct = false;
        break;
      }
    }
  }
  if (!rep.ident_correct) {
    rep.global_error = true;
    return rep;
  }

  rep.messages_correct = true;
  for (std::size_t j = 0; j < cfg.channels.size(); ++j) {
    std::vector<int> class_blocks;
    std::vector<Codebook> class_books;
    std::vector<int> class_users;
    for (std::size_t b = 0; b < active.size(); ++b)
      if (ident.block_class[b] == static_cast<int>(j)) class_blocks.push_back(active[b]);
    for (std::size_t i = 0; i < setup.codebooks.size(); ++i) {
      if (setup.user_channel[i] == static_cast<int>(j)) {
        class_books.push_back(setup.codebooks[i]);
        class_users.push_back(static_cast<int>(i));
      }
    }
    if (class_blocks.empty()) continue;
    const auto decoded = decode_superblock_ml(y, class_blocks, class_books, cfg.channels[j]);
    for (std::size_t b = 0; b < class_blocks.size(); ++b) {
      const auto [local_user, message] = decoded.block_assignment[b];
      const int user = class_users[static_cast<std::size_t>(local_user)];
      const int who = occupant[static_cast<std::size_t>(class_blocks[b])];
      if (user != who || message != plan.messages[static_cast<std::size_t>(who)]) {
        rep.messages_correct = false;
      }
    }
  }
  rep.global_error = !rep.messages_correct;
  return rep;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const ExperimentSetup setup = prepare_experiment(cfg);

  ExperimentReport report;
  report.trials = cfg.trials;
  report.thresholds_used = setup.thresholds;
  report.lambdas_used = setup.lambdas;
  report.trial_reports.resize(static_cast<std::size_t>(cfg.trials));

  parallel_for(static_cast<std::size_t>(cfg.trials), cfg.threads,
               [&](std::size_t t) { report.trial_reports[t] = run_trial(cfg, setup, t); });

  for (const auto& rep : report.trial_reports) {
    if (rep.collision) {
      ++report.collisions;
    } else if (rep.sync_missed > 0 || rep.sync_false > 0) {
      ++report.sync_error_trials;
    } else if (!rep.ident_correct) {
      ++report.ident_error_trials;
    } else if (!rep.messages_correct) {
      ++report.message_error_trials;
    }
    if (rep.global_error) ++report.global_errors;
  }
  const double t = static_cast<double>(cfg.trials);
  report.global_error_rate = static_cast<double>(report.global_errors) / t;
  report.std_err = std::sqrt(report.global_error_rate * (1.0 - report.global_error_rate) / t);
  report.ci_lo = std::max(0.0, report.global_error_rate - 1.96 * report.std_err);
  report.ci_hi = std::min(1.0, report.global_error_rate + 1.96 * report.std_err);
  return report;
}

ArrangementResult arrangement_argmax(int users, int blocks) {
  if (users < 1 || blocks < 1) throw std::invalid_argument("arrangement_argmax: bad arguments");
  if (users > 8 || blocks > 8)
    throw guard_error("arrangement_argmax: exhaustive composition guard K, A <= 8");

  std::vector<std::uint64_t> factorial(static_cast<std::size_t>(users) + 1, 1);
  for (int i = 1; i <= users; ++i)
    factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  auto multinomial = [&](const std::vector<int>& t) {
    std::uint64_t denom = 1;
    for (int c : t) denom *= factorial[static_cast<std::size_t>(c)];
    return factorial[static_cast<std::size_t>(users)] / denom;
  };

  ArrangementResult res;
  std::uint64_t best = 0;
  bool swap_ok = true;
  std::vector<int> occ(static_cast<std::size_t>(blocks), 0);
  auto walk = [&](auto&& self, int level, int remaining) -> void {
    if (level + 1 == blocks) {
      occ[static_cast<std::size_t>(level)] = remaining;
      const std::uint64_t coef = multinomial(occ);
      if (coef > best) {
        best = coef;
        res.occupancy = occ;
        res.ties.clear();
        res.ties.push_back(occ);
      } else if (coef == best) {
        res.ties.push_back(occ);
      }
      // swap inequality: moving one user from an overfull block to a block
      // with at least two fewer users strictly increases the coefficient
      for (int a = 0; a < blocks && swap_ok; ++a) {
        for (int b = 0; b < blocks && swap_ok; ++b) {
          if (occ[static_cast<std::size_t>(a)] - occ[static_cast<std::size_t>(b)] > 1) {
            auto moved = occ;
            moved[static_cast<std::size_t>(a)] -= 1;
            moved[static_cast<std::size_t>(b)] += 1;
            if (multinomial(moved) <= coef) swap_ok = false;
          }
        }
      }
      occ[static_cast<std::size_t>(level)] = 0;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      occ[static_cast<std::size_t>(level)] = c;
      self(self, level + 1, remaining - c);
    }
    occ[static_cast<std::size_t>(level)] = 0;
  };
  walk(walk, 0, users);
  res.swap_verified = swap_ok;
  return res;
}

}  // namespace samac
