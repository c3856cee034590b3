#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace kinex {

/// Reproducible random stream keyed by (master_seed, stream_index).
///
/// One stream is handed to each initial configuration, so an ensemble run
/// gives the same numbers no matter how configurations are scheduled over
/// threads. Draws avoid the std:: distributions, whose algorithms are left
/// to the standard library vendor.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi); never returns hi even after rounding.
  double uniform(double lo, double hi);

  /// Uniform integer on [0, n). n must be positive.
  std::size_t below(std::size_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

}  // namespace kinex
