#pragma once

#include "samac/distribution.hpp"

namespace samac {

/// Value and maximizing abscissa of a Chernoff-type supremum over t in [0,1].
struct ChernoffResult {
  double value = 0.0;
  double t = 0.0;
};

/// mu_{i,j}(t) = -log sum_{xi,xj,y} Pi(xi) Pj(xj) Qi(y|xi)^(1-t) Qj(y|xj)^t.
/// Concave in t with mu(0) = mu(1) = 0.
double chernoff_exponent(const Distribution& p_i, const Channel& q_i, const Distribution& p_j,
                         const Channel& q_j, double t);

/// C(Pi,Qi,Pj,Qj) = sup_{0<=t<=1} mu_{i,j}(t), solved by golden-section
/// search to 1e-10 in t (mu is concave, so unimodal search is exact up to
/// tolerance). A three-point concavity check falls back to a dense scan.
ChernoffResult chernoff_pair(const Distribution& p_i, const Channel& q_i, const Distribution& p_j,
                             const Channel& q_j);

/// C(., Qstar, Pj, Qj) = sup_t -log sum_{x,y} Pj(x) Qstar(y)^(1-t) Qj(y|x)^t;
/// the all-idle variant of the pairwise exponent.
ChernoffResult chernoff_idle(const Distribution& q_star, const Distribution& p_j,
                             const Channel& q_j);

/// B(P,Q) = C(P,Q,P,Q) = -log sum_{x,x',y} P(x)P(x') sqrt(Q(y|x)Q(y|x')),
/// evaluated directly at the midpoint t = 1/2 where the supremum sits.
double channel_bhattacharyya(const Distribution& p, const Channel& q);

/// Q_lambda(y|x) = Q(y|x)^lambda Qstar(y)^(1-lambda), row-normalized.
/// Exact copies of the endpoints are returned for lambda in {0,1}.
Channel tilt_conditional(const Channel& q, double lambda);

/// Normalized geometric mixture Pout^lambda Qstar^(1-lambda).
Distribution tilt_output(const Distribution& p_out, const Distribution& q_star, double lambda);

}  // namespace samac
