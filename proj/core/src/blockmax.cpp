#include "fbm/blockmax.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fbm/errors.hpp"

namespace fbm {

void validate(const BlockSpec& spec) {
  if (spec.r < 1) throw ArgumentError("block size r must be at least 1");
  if (spec.c && (!(*spec.c > 0.0) || !std::isfinite(*spec.c))) {
    throw DomainError("truncation floor c must be positive and finite");
  }
}

std::size_t block_count(std::size_t n, std::size_t r) {
  if (r < 1) throw ArgumentError("block size r must be at least 1");
  return n / r;
}

Sample extract(std::span<const double> series, const BlockSpec& spec) {
  validate(spec);
  const std::size_t n = series.size();
  if (n < spec.r) {
    throw ArgumentError("series length " + std::to_string(n) + " is shorter than block size " +
                        std::to_string(spec.r));
  }
  const std::size_t k = n / spec.r;
  std::vector<double> maxima(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto block = series.subspan(i * spec.r, spec.r);
    double m = *std::max_element(block.begin(), block.end());
    if (spec.c) m = std::max(m, *spec.c);
    if (!(m > 0.0)) {
      throw DomainError("block " + std::to_string(i) +
                        " has a non-positive maximum; set a truncation floor c");
    }
    maxima[i] = m;
  }
  return Sample(std::move(maxima));
}

}  // namespace fbm
