#include "samac/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "samac/info.hpp"

namespace samac {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFrontierTol = 1e-6;

double collision_slack(double alpha, double nu) {
  // a single user (nu = 0 at exponent scale) cannot collide
  return nu == 0.0 ? kInf : 0.5 * alpha - nu;
}

void check_common_idle(std::span<const Channel> channels) {
  if (channels.empty()) throw std::invalid_argument("regions: no channels supplied");
  const Distribution star = channels[0].idle_row();
  for (const auto& q : channels) {
    if (q.output_size() != channels[0].output_size())
      throw std::invalid_argument("regions: output alphabet mismatch");
    const Distribution other = q.idle_row();
    for (std::size_t y = 0; y < star.alphabet_size(); ++y)
      if (std::abs(star[y] - other[y]) > kProbSumTol)
        throw std::invalid_argument("regions: channels do not share an idle row");
  }
}
}  // namespace

RegionClass classify_slacks(std::span<const ConstraintEval> constraints, int& binding) {
  binding = -1;
  double min_slack = kInf;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].slack < min_slack) {
      min_slack = constraints[i].slack;
      binding = static_cast<int>(i);
    }
  }
  if (min_slack > kRegionSlack) return RegionClass::inside;
  if (min_slack < -kRegionSlack) return RegionClass::outside;
  return RegionClass::boundary;
}

RegionTestResult thm2_region_test(const RegionPoint& pt, const Distribution& p, const Channel& q,
                                  double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("thm2_region_test: lambda outside [0,1]");
  const Channel tilted = tilt_conditional(q, lambda);
  const double d_code = cond_kl(tilted, q, p);
  const double d_noise = cond_kl(tilted, q.idle_row(), p);
  const double info = mutual_info(p, q);

  RegionTestResult res;
  res.constraints = {
      {"collision", collision_slack(pt.alpha, pt.nu)},
      {"missed_detection", d_code - pt.nu},
      {"false_alarm", d_noise - (pt.alpha + pt.rate + pt.nu)},
      {"rate", info - (pt.rate + pt.nu)},
  };
  res.cls = classify_slacks(res.constraints, res.binding);
  return res;
}

std::vector<Distribution> simplex_grid(std::size_t alphabet, int resolution) {
  if (alphabet == 0 || resolution < 1) throw std::invalid_argument("simplex_grid: bad arguments");
  std::vector<Distribution> grid;
  std::vector<int> counts(alphabet, 0);
  // enumerate compositions of `resolution` into `alphabet` parts
  auto walk = [&](auto&& self, std::size_t level, int remaining) -> void {
    if (level + 1 == alphabet) {
      counts[level] = remaining;
      std::vector<double> probs(alphabet);
      for (std::size_t a = 0; a < alphabet; ++a)
        probs[a] = static_cast<double>(counts[a]) / static_cast<double>(resolution);
      grid.push_back(Distribution(std::move(probs)));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[level] = c;
      self(self, level + 1, remaining - c);
    }
    counts[level] = 0;
  };
  walk(walk, 0, resolution);
  return grid;
}

namespace {

// Per-lambda row divergences let frontier sweeps price a (P, lambda) grid
// point in O(|X|).
struct TiltRows {
  std::vector<double> d_code;   // D(Q_l(.|x) || Q(.|x)) per input x
  std::vector<double> d_noise;  // D(Q_l(.|x) || Qstar)  per input x
};

TiltRows tilt_rows(const Channel& q, double lambda) {
  const Channel tilted = tilt_conditional(q, lambda);
  const Distribution star = q.idle_row();
  TiltRows rows;
  rows.d_code.resize(q.input_size());
  rows.d_noise.resize(q.input_size());
  for (std::size_t x = 0; x < q.input_size(); ++x) {
    rows.d_code[x] = kl_div(tilted.row(x), q.row(x));
    rows.d_noise[x] = kl_div(tilted.row(x), star);
  }
  return rows;
}

double dot(std::span<const double> p, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * v[i];
  return s;
}

struct GridPointEval {
  double d_code = 0.0;
  double d_noise = 0.0;
  double info = 0.0;
};

// Largest R classified strictly inside, or -1 when R = 0 already is not.
double max_feasible_rate(const GridPointEval& e, double alpha, double nu) {
  auto is_inside = [&](double rate) {
    ConstraintEval cs[4] = {
        {"", collision_slack(alpha, nu)},
        {"", e.d_code - nu},
        {"", e.d_noise - (alpha + rate + nu)},
        {"", e.info - (rate + nu)},
    };
    int binding = -1;
    return classify_slacks(cs, binding) == RegionClass::inside;
  };
  if (!is_inside(0.0)) return -1.0;
  double lo = 0.0;
  double hi = std::max(0.0, std::min(e.d_noise - alpha - nu, e.info - nu)) + 1.0;
  while (hi - lo > kFrontierTol) {
    const double mid = 0.5 * (lo + hi);
    if (is_inside(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::string thm2_binding_name(const GridPointEval& e, double r_star, double alpha, double nu) {
  const ConstraintEval cs[4] = {
      {"collision", collision_slack(alpha, nu)},
      {"missed_detection", e.d_code - nu},
      {"false_alarm", e.d_noise - (alpha + r_star + nu)},
      {"rate", e.info - (r_star + nu)},
  };
  int binding = -1;
  double min_slack = kInf;
  for (int i = 0; i < 4; ++i) {
    if (cs[i].slack < min_slack) {
      min_slack = cs[i].slack;
      binding = i;
    }
  }
  return cs[binding].name;
}

}  // namespace

FrontierPoint thm2_frontier(const Channel& q, double alpha, double nu,
                            std::span<const Distribution> p_grid,
                            std::span<const double> lambda_grid) {
  if (p_grid.size() < 2 || lambda_grid.size() < 2)
    throw std::invalid_argument("thm2_frontier: grids need at least 2 points each");
  std::vector<TiltRows> rows;
  rows.reserve(lambda_grid.size());
  for (double l : lambda_grid) rows.push_back(tilt_rows(q, l));

  FrontierPoint best;
  GridPointEval best_eval;
  for (const auto& p : p_grid) {
    const double info = mutual_info(p, q);
    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
      GridPointEval e{dot(p.probs(), rows[li].d_code), dot(p.probs(), rows[li].d_noise), info};
      const double r = max_feasible_rate(e, alpha, nu);
      if (r < 0.0) continue;
      if (!best.feasible || r > best.r_star) {
        best.feasible = true;
        best.r_star = r;
        best.p_opt = p;
        best.lambda_opt = lambda_grid[li];
        best_eval = e;
      }
    }
  }
  if (best.feasible) {
    best.binding = thm2_binding_name(best_eval, best.r_star, alpha, nu);
  } else {
    best.r_star = 0.0;
    best.binding = "infeasible";
  }
  return best;
}

FrontierPoint thm2_frontier_opt(const Channel& q, double alpha, double nu, int p_resolution,
                                int lambda_resolution) {
  if (p_resolution < 1 || lambda_resolution < 1)
    throw std::invalid_argument("thm2_frontier_opt: resolutions must be >= 1");
  std::vector<double> lambdas(static_cast<std::size_t>(lambda_resolution) + 1);
  for (int i = 0; i <= lambda_resolution; ++i)
    lambdas[static_cast<std::size_t>(i)] = static_cast<double>(i) / lambda_resolution;

  const std::size_t alphabet = q.input_size();
  if (alphabet <= 3) {
    const auto grid = simplex_grid(alphabet, p_resolution);
    return thm2_frontier(q, alpha, nu, grid, lambdas);
  }

  // coarse lattice, then pairwise mass-transfer descent around the best point
  const auto coarse = simplex_grid(alphabet, std::min(p_resolution, 8));
  FrontierPoint best = thm2_frontier(q, alpha, nu, coarse, lambdas);
  if (!best.feasible) return best;
  std::vector<double> probs(best.p_opt->probs().begin(), best.p_opt->probs().end());
  double step = 1.0 / 16.0;
  while (step > 0.5 / p_resolution) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t from = 0; from < alphabet; ++from) {
        for (std::size_t to = 0; to < alphabet; ++to) {
          if (from == to || probs[from] < step) continue;
          auto moved = probs;
          moved[from] -= step;
          moved[to] += step;
          const Distribution cand_dist{std::vector<double>(moved)};
          const Distribution single[] = {cand_dist, cand_dist};
          FrontierPoint cand = thm2_frontier(q, alpha, nu, single, lambdas);
          if (cand.feasible && cand.r_star > best.r_star + 1e-12) {
            best = cand;
            probs = moved;
            improved = true;
          }
        }
      }
    }
    step *= 0.5;
  }
  return best;
}

double ChannelAssignment::total_nu() const {
  if (nus.empty()) throw std::invalid_argument("ChannelAssignment: empty");
  return *std::max_element(nus.begin(), nus.end());
}

Thm3Result thm3_region_test(const RegionPoint& pt, const ChannelAssignment& asg,
                            std::span<const double> lambdas, int n) {
  const std::size_t s = asg.channels.size();
  if (s == 0 || asg.inputs.size() != s || asg.nus.size() != s || lambdas.size() != s)
    throw std::invalid_argument("thm3_region_test: list length mismatch");
  check_common_idle(asg.channels);
  if (std::abs(pt.nu - asg.total_nu()) > kRegionSlack)
    throw std::invalid_argument("thm3_region_test: point nu must equal max_j nu_j");
  for (double nu_j : asg.nus)
    if (nu_j < 0.0) throw std::invalid_argument("thm3_region_test: negative nu_j");

  const Distribution star = asg.channels[0].idle_row();
  Thm3Result res;
  res.per_channel.resize(s);
  std::vector<Distribution> marginals;
  marginals.reserve(s);
  for (std::size_t j = 0; j < s; ++j)
    marginals.push_back(output_marginal(asg.inputs[j], asg.channels[j]));

  double worst_slack = kInf;
  for (std::size_t j = 0; j < s; ++j) {
    if (!(lambdas[j] >= 0.0 && lambdas[j] <= 1.0))
      throw std::invalid_argument("thm3_region_test: lambda outside [0,1]");
    const Distribution tilted = tilt_output(marginals[j], star, lambdas[j]);
    RegionTestResult& r = res.per_channel[j];
    r.constraints = {
        {"collision", collision_slack(pt.alpha, asg.nus[j])},
        {"missed_detection", kl_div(tilted, marginals[j]) - asg.nus[j]},
        {"false_alarm", kl_div(tilted, star) - pt.alpha},
        {"rate", mutual_info(asg.inputs[j], asg.channels[j]) - (pt.rate + asg.nus[j])},
    };
    r.cls = classify_slacks(r.constraints, r.binding);
    const double min_slack = r.constraints[static_cast<std::size_t>(r.binding)].slack;
    if (min_slack < worst_slack) {
      worst_slack = min_slack;
      res.binding_channel = static_cast<int>(j);
    }
  }
  if (worst_slack > kRegionSlack) {
    res.cls = RegionClass::inside;
  } else if (worst_slack < -kRegionSlack) {
    res.cls = RegionClass::outside;
  } else {
    res.cls = RegionClass::boundary;
  }

  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const double b = bhattacharyya_dist(marginals[i], marginals[j]);
      if (b <= 1e-12) {
        res.indistinguishable_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      } else if (b == kInf) {
        res.ident_sum += n > 0 ? 0.0 : 1.0;
      } else {
        res.ident_sum += std::exp(-2.0 * static_cast<double>(n) * b);
      }
    }
  }
  return res;
}

Thm4Result thm4_region_test(const RegionPoint& pt, std::span<const Distribution> inputs,
                            std::span<const Channel> channels) {
  const std::size_t k = channels.size();
  if (k == 0 || inputs.size() != k)
    throw std::invalid_argument("thm4_region_test: list length mismatch");
  for (std::size_t i = 0; i < k; ++i)
    if (inputs[i].alphabet_size() != channels[i].input_size())
      throw std::invalid_argument("thm4_region_test: input alphabet mismatch");
  check_common_idle(channels);
  const Distribution star = channels[0].idle_row();

  Thm4Result res;
  res.constraints.push_back({"collision", collision_slack(pt.alpha, pt.nu)});
  std::vector<int> owners = {-1};
  for (std::size_t i = 0; i < k; ++i) {
    const double self = channel_bhattacharyya(inputs[i], channels[i]);
    double cross = kInf;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      cross = std::min(cross,
                       chernoff_pair(inputs[j], channels[j], inputs[i], channels[i]).value);
    }
    const double idle = chernoff_idle(star, inputs[i], channels[i]).value;
    const std::string tag = "[" + std::to_string(i) + "]";
    res.constraints.push_back({"message" + tag, self - (pt.nu + pt.rate)});
    owners.push_back(static_cast<int>(i));
    res.constraints.push_back({"cross_user" + tag, cross - (2.0 * pt.nu + pt.rate)});
    owners.push_back(static_cast<int>(i));
    res.constraints.push_back({"idle" + tag, idle - (pt.alpha + pt.nu + pt.rate)});
    owners.push_back(static_cast<int>(i));
  }
  res.cls = classify_slacks(res.constraints, res.binding);
  res.binding_user = owners[static_cast<std::size_t>(res.binding)];
  return res;
}

ConverseWitness thm5_impermissible_test(const RegionPoint& pt,
                                        std::span<const Distribution> inputs,
                                        std::span<const Channel> channels,
                                        std::span<const double> lambdas, double r_bar) {
  if (!(pt.nu < 0.5 * pt.alpha))
    throw std::invalid_argument("thm5_impermissible_test: requires nu < alpha/2");
  if (!(r_bar >= 0.0 && r_bar <= 1.0))
    throw std::invalid_argument("thm5_impermissible_test: r_bar outside [0,1]");
  const std::size_t k = channels.size();
  if (k == 0 || inputs.size() != k || lambdas.size() != k)
    throw std::invalid_argument("thm5_impermissible_test: list length mismatch");
  check_common_idle(channels);
  const Distribution star = channels[0].idle_row();

  ConverseWitness w;
  for (std::size_t i = 0; i < k; ++i) {
    const Channel tilted = tilt_conditional(channels[i], lambdas[i]);
    w.code_mean += cond_kl(tilted, channels[i], inputs[i]);
    w.noise_mean += cond_kl(tilted, star, inputs[i]);
    if (pt.rate > mutual_info(inputs[i], channels[i]) + kRegionSlack) w.via_rate = true;
  }
  w.code_mean /= static_cast<double>(k);
  w.noise_mean /= static_cast<double>(k);
  const bool nu_cond = pt.nu > w.code_mean + kRegionSlack;
  const bool alpha_cond =
      pt.alpha > w.noise_mean - (1.0 - r_bar) * (pt.nu + pt.rate) + kRegionSlack;
  w.via_sync = nu_cond && alpha_cond;
  w.impermissible = w.via_sync || w.via_rate;
  return w;
}

ConverseExponents converse_exponents(std::span<const Distribution> inputs,
                                     std::span<const Channel> channels,
                                     std::span<const double> lambdas, double rate, double nu,
                                     double r_bar, int n) {
  if (!(r_bar >= 0.0 && r_bar <= 1.0))
    throw std::invalid_argument("converse_exponents: r_bar outside [0,1]");
  if (n < 1) throw std::invalid_argument("converse_exponents: n must be >= 1");
  const std::size_t k = channels.size();
  if (k == 0 || inputs.size() != k || lambdas.size() != k)
    throw std::invalid_argument("converse_exponents: list length mismatch");
  check_common_idle(channels);
  const Distribution star = channels[0].idle_row();

  double code = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Channel tilted = tilt_conditional(channels[i], lambdas[i]);
    code += cond_kl(tilted, channels[i], inputs[i]);
    noise += cond_kl(tilted, star, inputs[i]);
  }
  code /= static_cast<double>(k);
  noise /= static_cast<double>(k);
  return ConverseExponents{
      noise - (rate + nu) * (1.0 - r_bar) + binary_entropy(r_bar) / static_cast<double>(n),
      code};
}

bool thm6_feasible(double alpha, double nu) {
  if (alpha < 0.0 || nu < 0.0) throw std::invalid_argument("thm6_feasible: negative exponent");
  return !(nu > alpha);
}

double BscForms::g(double a, double b) {
  return -std::log(1.0 - a + 2.0 * a * std::sqrt(b * (1.0 - b)));
}

double BscForms::eps_lambda(double lambda) const {
  const double num = std::pow(delta, lambda) * std::pow(1.0 - delta, 1.0 - lambda);
  const double den = num + std::pow(1.0 - delta, lambda) * std::pow(delta, 1.0 - lambda);
  return num / den;
}

BscForms::Thm2Bounds BscForms::thm2_bounds(double p, double lambda) const {
  const double eps = eps_lambda(lambda);
  const double convolved = p * (1.0 - delta) + (1.0 - p) * delta;
  return Thm2Bounds{
      p * binary_kl(eps, delta),
      p * binary_kl(eps, 1.0 - delta),
      binary_entropy(convolved) - binary_entropy(delta),
  };
}

BscForms bsc_closed_forms(double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("bsc_closed_forms: delta outside (0, 1/2)");
  BscForms f;
  f.delta = delta;
  f.g_half = -std::log(0.5 + std::sqrt(delta * (1.0 - delta)));
  return f;
}

}  // namespace samac
