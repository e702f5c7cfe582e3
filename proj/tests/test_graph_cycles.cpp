#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "samac/errors.hpp"
#include "samac/graph_cycles.hpp"
#include "samac/identification.hpp"
#include "samac/info.hpp"
#include "samac/rng.hpp"
#include "test_util.hpp"

using namespace samac;
using testutil::random_distribution;

TEST_CASE("count_cycles") {
  CHECK(count_cycles(4, 4) == 3);
  CHECK(count_cycles(4, 3) == 4);
  CHECK(count_cycles(5, 5) == 12);
  CHECK(count_cycles(4, 2) == 6);
  CHECK(count_cycles(8, 8) == 2520);
  CHECK_THROWS_AS(count_cycles(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(count_cycles(3, 1), std::invalid_argument);
}

TEST_CASE("enumerate_cycles") {
  const auto tri = enumerate_cycles(3, 3);
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].vertices == std::vector<int>{0, 1, 2});

  CHECK(enumerate_cycles(4, 2).size() == 6);

  const auto quads = enumerate_cycles(4, 4);
  REQUIRE(quads.size() == 3);
  std::set<std::vector<int>> got;
  for (const auto& c : quads) got.insert(c.vertices);
  const std::set<std::vector<int>> expected{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
  CHECK(got == expected);

  CHECK_THROWS_AS(enumerate_cycles(13, 3), guard_error);
}

TEST_CASE("enumeration cardinality matches the counting formula for k <= 8") {
  for (int k = 2; k <= 8; ++k)
    for (int r = 2; r <= k; ++r) CHECK(enumerate_cycles(k, r).size() == count_cycles(k, r));
}

TEST_CASE("cycle count to edge count ratio stays under 4^r") {
  for (int k = 2; k <= 8; ++k) {
    const double n_k = k * (k - 1) / 2.0;
    for (int r = 2; r <= k; ++r) {
      const double ratio = static_cast<double>(count_cycles(k, r)) / std::pow(n_k, r / 2.0);
      CHECK(ratio <= std::pow(4.0, r));
    }
  }
}

TEST_CASE("cycle canonicalization") {
  const auto c = Cycle::canonical({3, 1, 4, 2});
  CHECK(c.vertices.front() == 1);
  CHECK(c.vertices[1] < c.vertices.back());
  // reversal maps to the same canonical form
  CHECK(Cycle::canonical({2, 4, 1, 3}) == c);
  // idempotent
  CHECK(Cycle::canonical(c.vertices) == c);
  CHECK_THROWS_AS(Cycle::canonical({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("cycle_gain") {
  const WeightedCompleteGraph ones(4, std::vector<double>(6, 1.0));
  for (const auto& c : enumerate_cycles(4, 4)) CHECK(cycle_gain(ones, c) == 1.0);

  // k=3 weights (2,3,5): triangle gain is the product
  const WeightedCompleteGraph tri(3, {2.0, 3.0, 5.0});
  CHECK(cycle_gain(tri, enumerate_cycles(3, 3)[0]) == 30.0);

  // zero edge on the cycle kills the gain
  const WeightedCompleteGraph zero(3, {0.0, 3.0, 5.0});
  CHECK(cycle_gain(zero, enumerate_cycles(3, 3)[0]) == 0.0);

  // reversal preserves the gain
  Rng rng(5);
  std::vector<double> w(10);
  for (auto& e : w) e = rng.uniform();
  const WeightedCompleteGraph g(5, w);
  const auto a = Cycle::canonical({0, 2, 4, 1, 3});
  const auto b = Cycle::canonical({3, 1, 4, 2, 0});
  CHECK(cycle_gain(g, a) == cycle_gain(g, b));
}

TEST_CASE("two-cycle gain is the squared edge weight") {
  const WeightedCompleteGraph g(3, {0.5, 0.25, 1.0});
  const auto pairs = enumerate_cycles(3, 2);
  double sum = 0.0;
  for (const auto& c : pairs) sum += cycle_gain(g, c);
  CHECK(sum == doctest::Approx(0.25 + 0.0625 + 1.0).epsilon(1e-15));
}

TEST_CASE("lemma1_check basics") {
  // equal weights achieve equality
  for (int k : {3, 5, 7}) {
    const double a = 0.37;
    const WeightedCompleteGraph g(k, std::vector<double>(k * (k - 1) / 2, a));
    for (int r = 2; r <= k; ++r) {
      const auto res = lemma1_check(g, r);
      CHECK(res.holds);
      CHECK(res.lhs_mean == doctest::Approx(res.rhs).epsilon(1e-12));
      CHECK(res.lhs_mean == doctest::Approx(std::pow(a, r)).epsilon(1e-12));
    }
  }
  // one live edge only
  const WeightedCompleteGraph g(3, {1.0, 0.0, 0.0});
  const auto res = lemma1_check(g, 3);
  CHECK(res.lhs_mean == 0.0);
  CHECK(res.rhs == doctest::Approx(std::pow(1.0 / 3.0, 1.5)).epsilon(1e-12));
  CHECK(res.holds);

  const WeightedCompleteGraph big(11, std::vector<double>(55, 1.0));
  CHECK_THROWS_AS(lemma1_check(big, 3), guard_error);
}

TEST_CASE("lemma1 holds on random draws, k in [3,7]") {
  Rng rng(17);
  for (int k = 3; k <= 7; ++k) {
    for (int r = 2; r <= k; ++r) {
      for (int draw = 0; draw < 200; ++draw) {
        std::vector<double> w(k * (k - 1) / 2);
        for (auto& e : w) e = 1.0 - rng.uniform();  // uniform on (0, 1]
        const auto res = lemma1_check(WeightedCompleteGraph(k, std::move(w)), r);
        CHECK(res.holds);
      }
    }
  }
}

TEST_CASE("identification_graph") {
  const Distribution dists[] = {Distribution::bernoulli(0.1), Distribution::bernoulli(0.9),
                                Distribution::bernoulli(0.5)};
  // n = 0 makes every distinct pair weight 1
  const auto g0 = identification_graph(dists, 0);
  for (double w : g0.weights) CHECK(w == 1.0);

  // e^{-2 * (-ln 0.6)} = 0.36
  const auto g2 = identification_graph({dists, 2}, 2);
  CHECK(g2.weight(0, 1) == doctest::Approx(0.36).epsilon(1e-12));

  // identical pair gets weight zero, not one
  const Distribution dup[] = {Distribution::bernoulli(0.4), Distribution::bernoulli(0.4),
                              Distribution::bernoulli(0.9)};
  const auto gd = identification_graph(dup, 3);
  CHECK(gd.weight(0, 1) == 0.0);
  CHECK(gd.weight(0, 2) > 0.0);
}

TEST_CASE("identifiability_sum equals the two-cycle gain sum of the graph") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    IdentificationInstance inst;
    inst.n = 1 + static_cast<int>(rng.uniform_below(6));
    const std::size_t a = 3 + rng.uniform_below(3);
    for (std::size_t i = 0; i < a; ++i) inst.dists.push_back(random_distribution(rng, 3));
    const auto g = identification_graph(inst.dists, inst.n);
    double sum = 0.0;
    for (const auto& c : enumerate_cycles(static_cast<int>(a), 2)) sum += cycle_gain(g, c);
    CHECK(identifiability_sum(inst) == doctest::Approx(sum).epsilon(1e-12));
  }
}
