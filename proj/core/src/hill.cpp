#include "fbm/hill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fbm/errors.hpp"

namespace fbm {
namespace {

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k + 1 > n) {
    throw ArgumentError("hill: k must satisfy 1 <= k <= n - 1 (k = " + std::to_string(k) +
                        ", n = " + std::to_string(n) + ")");
  }
}

HillResult from_top(std::span<const double> top, double threshold) {
  const double log_threshold = std::log(threshold);
  double sum = 0.0;
  for (double x : top) sum += std::log(x) - log_threshold;
  if (!(sum > 0.0)) throw DegenerateSampleError("hill: top order statistics are all tied");
  return {static_cast<double>(top.size()) / sum, top.size(), threshold};
}

}  // namespace

HillResult hill(const Sample& sample, std::size_t k) {
  check_k(k, sample.size());
  std::vector<double> work(sample.values().begin(), sample.values().end());
  // Largest k+1 values land in work[0..k], threshold at work[k].
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), work.end(),
                   std::greater<>());
  // Fixed summation order, independent of how nth_element arranged the top block.
  std::sort(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
  return from_top(std::span<const double>(work.data(), k), work[k]);
}

HillResult hill_sorted_descending(std::span<const double> descending, std::size_t k) {
  check_k(k, descending.size());
  if (!(descending[k] > 0.0)) throw DomainError("hill: order statistics must be positive");
  return from_top(descending.first(k), descending[k]);
}

}  // namespace fbm
