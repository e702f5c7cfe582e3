#include "samac/info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace samac {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double kl_span(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0.0) continue;  // 0 log 0 = 0
    if (q[a] == 0.0) return kInf;
    sum += p[a] * std::log(p[a] / q[a]);
  }
  return sum < 0.0 ? 0.0 : sum;  // clamp fp residue, D >= 0
}
}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

double binary_kl(double p, double q) {
  return kl_div(Distribution::bernoulli(p), Distribution::bernoulli(q));
}

double kl_div(const Distribution& p1, const Distribution& p2) {
  if (p1.alphabet_size() != p2.alphabet_size())
    throw std::invalid_argument("kl_div: alphabet mismatch");
  return kl_span(p1.probs(), p2.probs());
}

double cond_kl(const Channel& q1, const Channel& q2, const Distribution& p) {
  if (q1.input_size() != q2.input_size() || q1.output_size() != q2.output_size() ||
      p.alphabet_size() != q1.input_size())
    throw std::invalid_argument("cond_kl: dimension mismatch");
  double sum = 0.0;
  for (std::size_t x = 0; x < q1.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    const double d = kl_span(q1.row_span(x), q2.row_span(x));
    if (d == kInf) return kInf;
    sum += p[x] * d;
  }
  return sum;
}

double cond_kl(const Channel& q1, const Distribution& r, const Distribution& p) {
  if (q1.output_size() != r.alphabet_size() || p.alphabet_size() != q1.input_size())
    throw std::invalid_argument("cond_kl: dimension mismatch");
  double sum = 0.0;
  for (std::size_t x = 0; x < q1.input_size(); ++x) {
    if (p[x] == 0.0) continue;
    const double d = kl_span(q1.row_span(x), r.probs());
    if (d == kInf) return kInf;
    sum += p[x] * d;
  }
  return sum;
}

double mutual_info(const Distribution& p, const Channel& q) {
  return cond_kl(q, output_marginal(p, q), p);
}

double bhattacharyya_dist(const Distribution& p1, const Distribution& p2) {
  if (p1.alphabet_size() != p2.alphabet_size())
    throw std::invalid_argument("bhattacharyya_dist: alphabet mismatch");
  double coeff = 0.0;
  for (std::size_t a = 0; a < p1.alphabet_size(); ++a) coeff += std::sqrt(p1[a] * p2[a]);
  if (coeff <= 0.0) return kInf;
  const double b = -std::log(coeff);
  return b < 0.0 ? 0.0 : b;
}

double map_error(std::span<const Distribution> hypotheses) {
  if (hypotheses.size() < 2) throw std::invalid_argument("map_error: need at least 2 hypotheses");
  const std::size_t k = hypotheses[0].alphabet_size();
  for (const auto& h : hypotheses)
    if (h.alphabet_size() != k) throw std::invalid_argument("map_error: alphabet mismatch");
  double hit = 0.0;
  for (std::size_t y = 0; y < k; ++y) {
    double best = 0.0;
    for (const auto& h : hypotheses) best = std::max(best, h[y]);
    hit += best;
  }
  return 1.0 - hit / static_cast<double>(hypotheses.size());
}

}  // namespace samac
