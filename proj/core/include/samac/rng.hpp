#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace samac {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic random source. All draws go through explicit bit
/// manipulation of the (fully specified) mt19937_64 output stream, so
/// results are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  /// Independent stream for (master seed, stream id, item index).
  /// Per-trial generators are derived this way so that results do not
  /// depend on how trials are scheduled across worker threads.
  static Rng derive(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(master ^ 0x632be59bd9b4e019ull) + stream) + splitmix64(index));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased (rejection sampling).
  std::uint64_t uniform_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  /// Index drawn from a probability vector by inverse-CDF scan.
  std::size_t sample(std::span<const double> probs) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (probs[a] > 0.0) last_positive = a;
      acc += probs[a];
      if (u < acc) return a;
    }
    return last_positive;  // guard against fp shortfall in the cumulative sum
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace samac
