#include "samac/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace samac {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// Potentials-based Hungarian algorithm on the cost matrix c = -score,
// 1-indexed internally. Forbidden pairs are clamped to a large finite cost
// so the alternating search stays well defined.
std::vector<int> max_assignment(const std::vector<std::vector<double>>& score) {
  const int n = static_cast<int>(score.size());
  if (n == 0) return {};
  for (const auto& row : score)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("max_assignment: matrix must be square");

  double finite_max = 1.0;
  for (const auto& row : score)
    for (double v : row)
      if (std::isfinite(v)) finite_max = std::max(finite_max, std::abs(v));
  const double big = 4.0 * finite_max * n + 1.0;

  auto cost = [&](int i, int j) {
    const double v = score[i][j];
    return std::isfinite(v) ? -v : big;
  };

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> sigma(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) sigma[p[j] - 1] = j - 1;
  return sigma;
}

double assignment_value(const std::vector<std::vector<double>>& score,
                        const std::vector<int>& sigma) {
  double total = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) total += score[i][sigma[i]];
  return total;
}

}  // namespace samac
