#include "samac/chernoff.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace samac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenTol = 1e-10;

// a^(1-t) * b^t with the zero conventions 0^s = 0 for s > 0 and 0^0 = 0
// (zero-mass terms are excluded from geometric mixtures).
double geometric_term(double a, double b, double t) {
  if (a == b) return a;  // keeps fixed points of the tilt exact
  if (a <= 0.0) return t >= 1.0 ? b : 0.0;
  if (b <= 0.0) return t <= 0.0 ? a : 0.0;
  return std::exp((1.0 - t) * std::log(a) + t * std::log(b));
}

// Golden-section maximization of a concave function on [lo, hi].
ChernoffResult golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > kGoldenTol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {f(x), x};
}

ChernoffResult supremum_on_unit(const std::function<double(double)>& f) {
  // Three-point concavity check; on (numerical) violation fall back to a
  // dense scan before the local search.
  const double f25 = f(0.25), f50 = f(0.5), f75 = f(0.75);
  double lo = 0.0, hi = 1.0;
  if (!(f50 >= 0.5 * (f25 + f75) - 1e-9) && std::isfinite(f25 + f50 + f75)) {
    double best_t = 0.5, best_v = -kInf;
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      const double v = f(t);
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    lo = std::max(0.0, best_t - 1e-3);
    hi = std::min(1.0, best_t + 1e-3);
  }
  ChernoffResult res = golden_max(f, lo, hi);
  // sup over the closed interval; endpoints are 0 for shared supports
  const double f0 = f(0.0), f1 = f(1.0);
  if (f0 > res.value) res = {f0, 0.0};
  if (f1 > res.value) res = {f1, 1.0};
  return res;
}

}  // namespace

double chernoff_exponent(const Distribution& p_i, const Channel& q_i, const Distribution& p_j,
                         const Channel& q_j, double t) {
  if (q_i.output_size() != q_j.output_size() || p_i.alphabet_size() != q_i.input_size() ||
      p_j.alphabet_size() != q_j.input_size())
    throw std::invalid_argument("chernoff_exponent: dimension mismatch");
  double sum = 0.0;
  for (std::size_t xi = 0; xi < q_i.input_size(); ++xi) {
    if (p_i[xi] == 0.0) continue;
    for (std::size_t xj = 0; xj < q_j.input_size(); ++xj) {
      if (p_j[xj] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t y = 0; y < q_i.output_size(); ++y)
        inner += geometric_term(q_i.at(xi, y), q_j.at(xj, y), t);
      sum += p_i[xi] * p_j[xj] * inner;
    }
  }
  if (sum <= 0.0) return kInf;
  const double v = -std::log(sum);
  return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

ChernoffResult chernoff_pair(const Distribution& p_i, const Channel& q_i, const Distribution& p_j,
                             const Channel& q_j) {
  return supremum_on_unit([&](double t) { return chernoff_exponent(p_i, q_i, p_j, q_j, t); });
}

ChernoffResult chernoff_idle(const Distribution& q_star, const Distribution& p_j,
                             const Channel& q_j) {
  if (q_star.alphabet_size() != q_j.output_size() || p_j.alphabet_size() != q_j.input_size())
    throw std::invalid_argument("chernoff_idle: dimension mismatch");
  auto mu = [&](double t) {
    double sum = 0.0;
    for (std::size_t x = 0; x < q_j.input_size(); ++x) {
      if (p_j[x] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t y = 0; y < q_star.alphabet_size(); ++y)
        inner += geometric_term(q_star[y], q_j.at(x, y), t);
      sum += p_j[x] * inner;
    }
    if (sum <= 0.0) return kInf;
    const double v = -std::log(sum);
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
  };
  return supremum_on_unit(mu);
}

double channel_bhattacharyya(const Distribution& p, const Channel& q) {
  return chernoff_exponent(p, q, p, q, 0.5);
}

Channel tilt_conditional(const Channel& q, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("tilt_conditional: lambda outside [0,1]");
  if (lambda == 1.0) return q;
  const std::size_t ins = q.input_size(), outs = q.output_size();
  std::vector<double> rows(ins * outs);
  if (lambda == 0.0) {
    for (std::size_t x = 0; x < ins; ++x)
      for (std::size_t y = 0; y < outs; ++y) rows[x * outs + y] = q.at(q.idle_symbol(), y);
    return Channel(ins, outs, std::move(rows), q.idle_symbol());
  }
  for (std::size_t x = 0; x < ins; ++x) {
    double norm = 0.0;
    for (std::size_t y = 0; y < outs; ++y) {
      const double v = geometric_term(q.at(q.idle_symbol(), y), q.at(x, y), lambda);
      rows[x * outs + y] = v;
      norm += v;
    }
    if (norm <= 0.0) throw std::domain_error("tilt_conditional: tilted row has empty support");
    for (std::size_t y = 0; y < outs; ++y) rows[x * outs + y] /= norm;
  }
  return Channel(ins, outs, std::move(rows), q.idle_symbol());
}

Distribution tilt_output(const Distribution& p_out, const Distribution& q_star, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("tilt_output: lambda outside [0,1]");
  if (p_out.alphabet_size() != q_star.alphabet_size())
    throw std::invalid_argument("tilt_output: alphabet mismatch");
  if (lambda == 1.0) return p_out;
  if (lambda == 0.0) return q_star;
  std::vector<double> v(p_out.alphabet_size());
  double norm = 0.0;
  for (std::size_t y = 0; y < v.size(); ++y) {
    v[y] = geometric_term(q_star[y], p_out[y], lambda);
    norm += v[y];
  }
  if (norm <= 0.0) throw std::domain_error("tilt_output: tilted distribution has empty support");
  for (double& e : v) e /= norm;
  return Distribution(std::move(v));
}

}  // namespace samac
