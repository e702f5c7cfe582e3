#pragma once

#include <span>

#include "samac/distribution.hpp"

namespace samac {

// All quantities are in nats (natural logarithms throughout).

/// h(p) = -p log p - (1-p) log(1-p), with h(0) = h(1) = 0.
double binary_entropy(double p);

/// Binary KL divergence d(p||q) between Bernoulli(p) and Bernoulli(q).
double binary_kl(double p, double q);

/// D(P1||P2); +inf when P1 is not absolutely continuous w.r.t. P2.
double kl_div(const Distribution& p1, const Distribution& p2);

/// D(Q1||Q2|P) = sum_x P(x) D(Q1(.|x)||Q2(.|x))
double cond_kl(const Channel& q1, const Channel& q2, const Distribution& p);

/// D(Q1||R|P) where the second argument is input-independent.
double cond_kl(const Channel& q1, const Distribution& r, const Distribution& p);

/// I(P,Q) = D(Q||[PQ]|P)
double mutual_info(const Distribution& p, const Channel& q);

/// B(P1,P2) = -log sum_x sqrt(P1(x) P2(x)); +inf for disjoint supports.
double bhattacharyya_dist(const Distribution& p1, const Distribution& p2);

/// Minimal error probability for picking the generating hypothesis from a
/// single observation, uniform prior: 1 - (1/N) sum_y max_theta H_theta(y).
/// This is the exact infimum over estimators, achieved by MAP selection.
double map_error(std::span<const Distribution> hypotheses);

}  // namespace samac
