#include "fbm/rng.hpp"

#include <cmath>

#include "fbm/special_functions.hpp"

namespace fbm {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index))) {}

double RngStream::uniform_open() {
  // 53 random bits, shifted by half a ulp so the endpoints are excluded.
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * special::kPi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

}  // namespace fbm
