#pragma once

#include <cstdint>
#include <random>

namespace fbm {

/// Deterministic random stream identified by (master_seed, stream_index).
///
/// The same pair always yields the same sequence, on every platform and
/// regardless of how many streams are drawn concurrently elsewhere. Uniform
/// and normal variates are derived from raw 64-bit words by fixed formulas
/// rather than by the implementation-defined std:: distributions.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();

  /// Standard normal via Box-Muller; values are produced in pairs.
  double normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// SplitMix64 finalizer; used to derive per-stream engine seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace fbm
