#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "samac/chernoff.hpp"
#include "samac/distribution.hpp"
#include "samac/info.hpp"
#include "samac/regions.hpp"
#include "test_util.hpp"

using namespace samac;
using testutil::close;
using testutil::random_channel;
using testutil::random_distribution;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("distribution invariants") {
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), std::invalid_argument);
  const auto u = Distribution::uniform(4);
  CHECK(u[0] == doctest::Approx(0.25));
  CHECK(Distribution::point_mass(3, 2)[2] == 1.0);
}

TEST_CASE("channel invariants") {
  CHECK_THROWS_AS(Channel(2, 2, {0.5, 0.4, 0.5, 0.5}, 0), std::invalid_argument);
  CHECK_THROWS_AS(Channel(2, 2, {0.5, 0.5, 0.5, 0.5}, 2), std::invalid_argument);
  const auto q = Channel::bsc(0.11);
  CHECK(q.at(0, 1) == doctest::Approx(0.11));
  CHECK(q.idle_row() == Distribution::bernoulli(0.11));
}

TEST_CASE("output_marginal") {
  const auto q = Channel::bsc(0.11);
  // point mass passes the row through
  CHECK(output_marginal(Distribution::point_mass(2, 1), q) == q.row(1));
  // symmetric input is a fixed point of the BSC
  const auto sym = output_marginal(Distribution::bernoulli(0.5), q);
  CHECK(sym[1] == doctest::Approx(0.5));
  // hand evaluation: 0.3*0.89 + 0.7*0.11
  const auto m = output_marginal(Distribution::bernoulli(0.3), q);
  CHECK(m[1] == doctest::Approx(0.344).epsilon(1e-12));
  CHECK_THROWS_AS(output_marginal(Distribution::uniform(3), q), std::invalid_argument);
}

TEST_CASE("kl_div") {
  const auto p = Distribution::bernoulli(0.37);
  CHECK(kl_div(p, p) == 0.0);
  // hand evaluation: 0.5 ln 2 + 0.5 ln(2/3)
  const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  CHECK(kl_div(Distribution::bernoulli(0.5), Distribution::bernoulli(0.25)) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.1438).epsilon(1e-3));
  CHECK(kl_div(Distribution::bernoulli(1.0), Distribution::bernoulli(0.0)) == kInf);
}

TEST_CASE("cond_kl") {
  Rng rng(7);
  const auto q1 = random_channel(rng, 3, 4);
  const auto p = random_distribution(rng, 3);
  CHECK(cond_kl(q1, q1, p) == 0.0);
  // point mass reduces to the row divergence
  const auto q2 = random_channel(rng, 3, 4);
  CHECK(cond_kl(q1, q2, Distribution::point_mass(3, 1)) ==
        doctest::Approx(kl_div(q1.row(1), q2.row(1))).epsilon(1e-12));
  // both BSC rows give the same binary KL, so the value is p-independent
  const auto b1 = Channel::bsc(0.1), b2 = Channel::bsc(0.3);
  const double d = binary_kl(0.1, 0.3);
  for (double pp : {0.1, 0.5, 0.9})
    CHECK(cond_kl(b1, b2, Distribution::bernoulli(pp)) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("mutual_info") {
  // identical rows carry no information
  const Channel flat(2, 2, {0.4, 0.6, 0.4, 0.6}, 0);
  CHECK(mutual_info(Distribution::bernoulli(0.3), flat) == 0.0);
  // BSC(0.11) at the uniform input: ln 2 - h(0.11)
  const double expected = std::log(2.0) - binary_entropy(0.11);
  CHECK(mutual_info(Distribution::bernoulli(0.5), Channel::bsc(0.11)) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.3466).epsilon(1e-3));
  CHECK(mutual_info(Distribution::uniform(4), Channel::identity(4)) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("bhattacharyya_dist") {
  const auto p = Distribution::bernoulli(0.42);
  CHECK(bhattacharyya_dist(p, p) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bhattacharyya_dist(Distribution::bernoulli(0.1), Distribution::bernoulli(0.9)) ==
        doctest::Approx(-std::log(0.6)).epsilon(1e-12));
  CHECK(bhattacharyya_dist(Distribution::point_mass(2, 0), Distribution::point_mass(2, 1)) == kInf);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.11) == doctest::Approx(0.3465).epsilon(1e-3));
  CHECK_THROWS_AS(binary_entropy(1.2), std::invalid_argument);
}

TEST_CASE("channel_bhattacharyya") {
  const Channel flat(2, 2, {0.4, 0.6, 0.4, 0.6}, 0);
  CHECK(channel_bhattacharyya(Distribution::bernoulli(0.5), flat) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // BSC closed form g(1/2, delta)
  const double g_half = -std::log(0.5 + std::sqrt(0.11 * 0.89));
  CHECK(channel_bhattacharyya(Distribution::bernoulli(0.5), Channel::bsc(0.11)) ==
        doctest::Approx(g_half).epsilon(1e-9));
  CHECK(g_half == doctest::Approx(0.20715).epsilon(1e-4));
  // point mass input: x = x' always
  CHECK(channel_bhattacharyya(Distribution::point_mass(2, 1), Channel::bsc(0.11)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chernoff_pair basics") {
  const auto q = Channel::bsc(0.11);
  const auto p = Distribution::bernoulli(0.5);
  const auto r = chernoff_pair(p, q, p, q);
  CHECK(r.value == doctest::Approx(channel_bhattacharyya(p, q)).epsilon(1e-9));
  CHECK(r.t == doctest::Approx(0.5).epsilon(1e-6));

  const Channel single(1, 2, {0.3, 0.7}, 0);
  const auto one = Distribution::point_mass(1, 0);
  CHECK(chernoff_pair(one, single, one, single).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chernoff_pair matches the BSC closed form g(pi*pj, delta)") {
  const double delta = 0.11;
  const auto q = Channel::bsc(delta);
  for (double pi : {0.1, 0.3, 0.5, 0.7}) {
    for (double pj : {0.2, 0.5, 0.8}) {
      const double conv = pi * (1 - pj) + (1 - pi) * pj;
      const auto r = chernoff_pair(Distribution::bernoulli(pi), q, Distribution::bernoulli(pj), q);
      CHECK(r.value == doctest::Approx(BscForms::g(conv, delta)).epsilon(1e-6));
      CHECK(r.t == doctest::Approx(0.5).epsilon(1e-5));
    }
  }
}

TEST_CASE("chernoff_idle") {
  const auto q = Channel::bsc(0.11);
  const auto p = Distribution::bernoulli(0.5);
  // Q_star equal to the output marginal of a zero-information channel
  const Channel flat(2, 2, {0.4, 0.6, 0.4, 0.6}, 0);
  CHECK(chernoff_idle(output_marginal(p, flat), p, flat).value ==
        doctest::Approx(0.0).epsilon(1e-12));
  // BSC closed form g(1/2, 0.11)
  const auto r = chernoff_idle(q.idle_row(), p, q);
  CHECK(r.value == doctest::Approx(0.20715).epsilon(1e-4));
}

TEST_CASE("chernoff_idle upper bound (point-to-point)") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto q = random_channel(rng, 3, 4, 0);
    const auto p = random_distribution(rng, 3);
    const auto star = q.idle_row();
    const double bound = mutual_info(p, q) + kl_div(output_marginal(p, q), star);
    CHECK(chernoff_idle(star, p, q).value <= bound + 1e-9);
  }
}

TEST_CASE("chernoff_pair upper bound (point-to-point)") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto q_i = random_channel(rng, 3, 4, 0);
    const auto q_j = random_channel(rng, 3, 4, 0);
    const auto p_i = random_distribution(rng, 3);
    const auto p_j = random_distribution(rng, 3);
    const auto marg_j = output_marginal(p_j, q_j);
    double cross = 0.0;  // D(P_i [P_j Q_j] || P_i Q_i)
    for (std::size_t x = 0; x < 3; ++x) cross += p_i[x] * kl_div(marg_j, q_i.row(x));
    const double bound = mutual_info(p_j, q_j) + cross;
    CHECK(chernoff_pair(p_i, q_i, p_j, q_j).value <= bound + 1e-9);
  }
}

TEST_CASE("chernoff exponent is concave in t") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto q_i = random_channel(rng, 2, 3, 0);
    const auto q_j = random_channel(rng, 2, 3, 0);
    const auto p_i = random_distribution(rng, 2);
    const auto p_j = random_distribution(rng, 2);
    const double t1 = rng.uniform(), t2 = rng.uniform();
    const double mid = chernoff_exponent(p_i, q_i, p_j, q_j, 0.5 * (t1 + t2));
    const double ends = 0.5 * (chernoff_exponent(p_i, q_i, p_j, q_j, t1) +
                               chernoff_exponent(p_i, q_i, p_j, q_j, t2));
    CHECK(mid >= ends - 1e-12);
  }
}

TEST_CASE("tilt_conditional") {
  const auto q = Channel::bsc(0.11);
  CHECK(tilt_conditional(q, 1.0) == q);
  const auto q0 = tilt_conditional(q, 0.0);
  CHECK(q0.row(0) == q.idle_row());
  CHECK(q0.row(1) == q.idle_row());
  CHECK_THROWS_AS(tilt_conditional(q, 1.5), std::invalid_argument);

  // BSC tilt crossover matches the closed form
  const auto forms = bsc_closed_forms(0.11);
  for (double lambda : {0.25, 0.5, 0.75}) {
    const auto tilted = tilt_conditional(q, lambda);
    CHECK(tilted.at(1, 0) == doctest::Approx(forms.eps_lambda(lambda)).epsilon(1e-12));
  }
  CHECK(forms.eps_lambda(0.5) == doctest::Approx(0.5).epsilon(1e-12));

  // idle row is a fixed point of the tilt, exactly
  for (double lambda : {0.3, 0.77}) {
    const auto tilted = tilt_conditional(q, lambda);
    CHECK(tilted.row(0) == q.idle_row());
  }
}

TEST_CASE("tilt_output") {
  const auto pout = Distribution::bernoulli(0.7);
  const auto star = Distribution::bernoulli(0.11);
  CHECK(tilt_output(pout, star, 1.0) == pout);
  CHECK(tilt_output(pout, star, 0.0) == star);
  for (double lambda : {0.2, 0.9}) CHECK(tilt_output(star, star, lambda) == star);
}

TEST_CASE("empirical_dist") {
  const std::vector<Symbol> a{0, 0, 0, 0};
  CHECK(empirical_dist(a, 1) == Distribution::point_mass(1, 0));
  const std::vector<Symbol> b{0, 1, 0, 1};
  CHECK(empirical_dist(b, 2) == Distribution::bernoulli(0.5));
  const std::vector<Symbol> c{0, 1, 1, 1};
  CHECK(empirical_dist(c, 2)[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(empirical_dist({}, 2), std::invalid_argument);
}

TEST_CASE("round_to_type") {
  auto t = round_to_type(Distribution::bernoulli(0.5), 4);
  CHECK(t.counts == std::vector<std::int64_t>{2, 2});
  // tie at n = 5 resolved toward the lowest index
  t = round_to_type(Distribution::bernoulli(0.5), 5);
  CHECK(t.counts == std::vector<std::int64_t>{3, 2});
  t = round_to_type(Distribution({0.3, 0.7}), 10);
  CHECK(t.counts == std::vector<std::int64_t>{3, 7});
  CHECK_THROWS_AS(round_to_type(Distribution::bernoulli(0.5), 0), std::invalid_argument);
}

TEST_CASE("map_error") {
  const Distribution h[] = {Distribution::bernoulli(0.3), Distribution::bernoulli(0.3)};
  CHECK(map_error(h) == doctest::Approx(0.5).epsilon(1e-15));
  const Distribution d[] = {Distribution::point_mass(2, 0), Distribution::point_mass(2, 1)};
  CHECK(map_error(d) == doctest::Approx(0.0).epsilon(1e-15));
  const Distribution b[] = {Distribution::bernoulli(0.1), Distribution::bernoulli(0.9)};
  CHECK(map_error(b) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(map_error({h, 1}), std::invalid_argument);
}

TEST_CASE("compensation identity") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(4);        // mixtures
    const std::size_t alphabet = 2 + rng.uniform_below(5);  // <= 6
    std::vector<Distribution> parts;
    for (std::size_t i = 0; i < k; ++i) parts.push_back(random_distribution(rng, alphabet));
    const auto weights = random_distribution(rng, k);
    const auto ref = random_distribution(rng, alphabet);

    std::vector<double> mix(alphabet, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < alphabet; ++a) mix[a] += weights[i] * parts[i][a];
    const Distribution mean(std::move(mix));

    double lhs = kl_div(mean, ref);
    double rhs = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      lhs += weights[i] * kl_div(parts[i], mean);
      rhs += weights[i] * kl_div(parts[i], ref);
    }
    CHECK(testutil::close_rel(lhs, rhs, 1e-10));
  }
}

TEST_CASE("channel_bhattacharyya equals chernoff_pair on random instances") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ins = 2 + rng.uniform_below(3);
    const std::size_t outs = 2 + rng.uniform_below(3);
    const auto q = random_channel(rng, ins, outs, 0);
    const auto p = random_distribution(rng, ins);
    CHECK(close(channel_bhattacharyya(p, q), chernoff_pair(p, q, p, q).value, 1e-9));
  }
}

TEST_CASE("geometric-mean midpoint identity for the Bhattacharyya distance") {
  // With M the normalized geometric mean of (P1, P2):
  //   D(M||P1) + D(M||P2) = 2 B(P1, P2)
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t alphabet = 2 + rng.uniform_below(5);
    const auto p1 = random_distribution(rng, alphabet);
    const auto p2 = random_distribution(rng, alphabet);
    std::vector<double> gm(alphabet);
    double z = 0.0;
    for (std::size_t a = 0; a < alphabet; ++a) {
      gm[a] = std::sqrt(p1[a] * p2[a]);
      z += gm[a];
    }
    for (auto& e : gm) e /= z;
    const Distribution mid(std::move(gm));
    const double b = bhattacharyya_dist(p1, p2);
    CHECK(testutil::close_rel(kl_div(mid, p1) + kl_div(mid, p2), 2.0 * b, 1e-10));
    CHECK(b <= 0.5 * (kl_div(mid, p1) + kl_div(mid, p2)) + 1e-10);
  }
}
