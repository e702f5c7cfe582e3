#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "samac/chernoff.hpp"
#include "samac/distribution.hpp"

namespace samac {

/// An (R, alpha, nu) triple, all in nats per channel use.
struct RegionPoint {
  double rate = 0.0;
  double alpha = 0.0;
  double nu = 0.0;
};

/// Strict inequalities are tested with this slack; points within it of a
/// constraint surface are classified as boundary, neither in nor out.
inline constexpr double kRegionSlack = 1e-9;

enum class RegionClass { inside, boundary, outside };

struct ConstraintEval {
  std::string name;
  double slack = 0.0;  // bound minus left-hand side; positive means satisfied
};

struct RegionTestResult {
  RegionClass cls = RegionClass::outside;
  std::vector<ConstraintEval> constraints;
  int binding = -1;  // index of the minimum-slack constraint
  bool inside() const { return cls == RegionClass::inside; }
};

RegionClass classify_slacks(std::span<const ConstraintEval> constraints, int& binding);

/// Two-stage scheme for identical channels: constraints
///   nu < alpha/2,  nu < D(Q_l||Q|P),  alpha+R+nu < D(Q_l||Qstar|P),
///   R+nu < I(P,Q)
/// at tilt parameter lambda. The collision constraint is vacuous at nu = 0
/// (a lone user cannot collide).
RegionTestResult thm2_region_test(const RegionPoint& pt, const Distribution& p, const Channel& q,
                                  double lambda);

struct FrontierPoint {
  double r_star = 0.0;
  bool feasible = false;
  std::optional<Distribution> p_opt;
  double lambda_opt = 0.0;
  std::string binding;
};

/// Max achievable R at (alpha, nu) over the supplied grids, by binary
/// search on R (1e-6 nats) per grid point.
FrontierPoint thm2_frontier(const Channel& q, double alpha, double nu,
                            std::span<const Distribution> p_grid,
                            std::span<const double> lambda_grid);

/// All distributions on `alphabet` symbols with entries that are multiples
/// of 1/resolution (a simplex lattice).
std::vector<Distribution> simplex_grid(std::size_t alphabet, int resolution);

/// Input-grid frontier convenience: full lattice for small alphabets, a
/// coarse lattice refined by pairwise coordinate descent above.
FrontierPoint thm2_frontier_opt(const Channel& q, double alpha, double nu, int p_resolution,
                                int lambda_resolution);

/// Per-class channels, input distributions, and occupancy exponents for
/// the polynomially-many-channels scheme. The overall nu is the exponent
/// of the user-count sum, max_j nu_j.
struct ChannelAssignment {
  std::vector<Channel> channels;
  std::vector<Distribution> inputs;
  std::vector<double> nus;

  double total_nu() const;
};

struct Thm3Result {
  RegionClass cls = RegionClass::outside;
  std::vector<RegionTestResult> per_channel;
  int binding_channel = -1;
  /// Finite-n identification-step weight sum_{i<j} exp(-2nB([PiWi],[PjWj]))
  /// with indistinguishable pairs contributing zero.
  double ident_sum = 0.0;
  std::vector<std::pair<int, int>> indistinguishable_pairs;
};

/// Three-stage scheme: per class j,
///   nu_j < alpha/2,  nu_j < D(M_l||M),  alpha < D(M_l||Qstar),
///   R+nu_j < I(P_j,W_j),   with M = [P_j W_j].
Thm3Result thm3_region_test(const RegionPoint& pt, const ChannelAssignment& asg,
                            std::span<const double> lambdas, int n);

struct Thm4Result {
  RegionClass cls = RegionClass::outside;
  std::vector<ConstraintEval> constraints;
  int binding = -1;
  int binding_user = -1;  // -1 for the shared collision constraint
  bool inside() const { return cls == RegionClass::inside; }
};

/// Block-by-block ML scheme, no channel restrictions: for every user i,
///   nu < alpha/2,        nu+R < B(P_i,Q_i),
///   2nu+R < inf_{j!=i} C(P_j,Q_j,P_i,Q_i),
///   alpha+nu+R < C(.,Qstar,P_i,Q_i).
Thm4Result thm4_region_test(const RegionPoint& pt, std::span<const Distribution> inputs,
                            std::span<const Channel> channels);

struct ConverseWitness {
  bool impermissible = false;
  bool via_sync = false;  // both exponent conditions hold
  bool via_rate = false;  // R exceeds I(P_i,Q_i) for some supplied witness i
  double code_mean = 0.0;
  double noise_mean = 0.0;
};

/// Converse witness test at (lambda_i, r_bar): the point is impermissible
/// if   nu > mean_i D(Q_il||Q_i|P_i)   and
///      alpha > mean_i D(Q_il||Qstar|P_i) - (1-r_bar)(nu+R),
/// or R > I(P_i,Q_i) for some supplied witness i. Requires nu < alpha/2.
ConverseWitness thm5_impermissible_test(const RegionPoint& pt,
                                        std::span<const Distribution> inputs,
                                        std::span<const Channel> channels,
                                        std::span<const double> lambdas, double r_bar);

struct ConverseExponents {
  double noise_exp = 0.0;  // mean D(Q_il||Qstar|P_i) - (R+nu)(1-r_bar) + h(r_bar)/n
  double code_exp = 0.0;   // mean D(Q_il||Q_i|P_i)
};

ConverseExponents converse_exponents(std::span<const Distribution> inputs,
                                     std::span<const Channel> channels,
                                     std::span<const double> lambdas, double rate, double nu,
                                     double r_bar, int n);

/// Synchronization cutoff: infeasible iff nu > alpha (even with M = 1).
bool thm6_feasible(double alpha, double nu);

/// Closed forms for the binary symmetric channel with crossover delta.
struct BscForms {
  double delta = 0.0;
  double g_half = 0.0;  // -log(1/2 + sqrt(delta(1-delta)))

  /// g(a, b) = -log(1 - a + 2a sqrt(b(1-b)))
  static double g(double a, double b);
  /// Crossover of the tilted channel row.
  double eps_lambda(double lambda) const;

  struct Thm2Bounds {
    double nu_bound = 0.0;    // p d(eps_l || delta)
    double sync_bound = 0.0;  // p d(eps_l || 1-delta)
    double rate_bound = 0.0;  // h(p*delta) - h(delta)
  };
  Thm2Bounds thm2_bounds(double p, double lambda) const;
};

BscForms bsc_closed_forms(double delta);

}  // namespace samac
