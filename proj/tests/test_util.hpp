#pragma once

#include <cmath>
#include <vector>

#include "samac/distribution.hpp"
#include "samac/rng.hpp"

namespace samac::testutil {

/// Full-support random distribution (entries bounded away from zero).
inline Distribution random_distribution(Rng& rng, std::size_t alphabet) {
  std::vector<double> v(alphabet);
  double sum = 0.0;
  for (auto& e : v) {
    e = rng.uniform() + 0.05;
    sum += e;
  }
  for (auto& e : v) e /= sum;
  return Distribution(std::move(v));
}

inline Channel random_channel(Rng& rng, std::size_t inputs, std::size_t outputs,
                              std::size_t idle = 0) {
  std::vector<double> rows;
  rows.reserve(inputs * outputs);
  for (std::size_t x = 0; x < inputs; ++x) {
    const Distribution row = random_distribution(rng, outputs);
    rows.insert(rows.end(), row.probs().begin(), row.probs().end());
  }
  return Channel(inputs, outputs, std::move(rows), idle);
}

inline bool close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace samac::testutil
