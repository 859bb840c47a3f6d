#pragma once

#include <cstddef>
#include <span>

#include "fbm/frechet.hpp"

namespace fbm {

struct HillResult {
  double alpha_hat;
  std::size_t k_used;
  /// The (k+1)-th largest observation.
  double threshold;
};

/// Classical Hill estimator of the tail index from the top k log-spacings:
/// alpha_hat = 1 / ((1/k) sum_{i<=k} log(X_(n-i+1) / X_(n-k))).
/// Requires 1 <= k <= n - 1. Throws DegenerateSampleError when the top k
/// values all equal the threshold.
HillResult hill(const Sample& sample, std::size_t k);

/// Same estimator on values already sorted in descending order; lets a caller
/// evaluate many k on one sort.
HillResult hill_sorted_descending(std::span<const double> descending, std::size_t k);

}  // namespace fbm
