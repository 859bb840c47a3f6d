#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "fbm/frechet.hpp"

namespace fbm {

struct BlockSpec {
  std::size_t r = 1;
  /// Left-truncation floor: each maximum becomes max(M, c).
  std::optional<double> c;
};

void validate(const BlockSpec& spec);

/// Number of complete blocks, floor(n / r).
std::size_t block_count(std::size_t n, std::size_t r);

/// Maxima of the floor(n/r) disjoint consecutive blocks of size r; the
/// trailing partial block is discarded. Throws ArgumentError when n < r and
/// DomainError when a maximum is non-positive and no floor is set.
Sample extract(std::span<const double> series, const BlockSpec& spec);

}  // namespace fbm
