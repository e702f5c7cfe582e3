#pragma once

#include <vector>

namespace samac {

/// Maximum-total-score assignment of rows to columns (square score matrix),
/// O(n^3) Hungarian algorithm with potentials. -inf scores mark forbidden
/// pairs. Returns sigma with sigma[row] = column.
std::vector<int> max_assignment(const std::vector<std::vector<double>>& score);

/// Total score of an assignment, evaluated on the original matrix so that
/// forbidden (-inf) pairs propagate.
double assignment_value(const std::vector<std::vector<double>>& score,
                        const std::vector<int>& sigma);

}  // namespace samac
