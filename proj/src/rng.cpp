#include "kinex/rng.hpp"

#include <cmath>

#include "kinex/error.hpp"

namespace kinex {

namespace {

std::seed_seq make_seed_seq(std::uint64_t master_seed, std::uint64_t stream_index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  // Trailing tag keeps these streams apart from anything else seeded with the
  // same four words.
  return std::seed_seq{lo(master_seed), hi(master_seed), lo(stream_index),
                       hi(stream_index), 0x6b696e65u};
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  auto seq = make_seed_seq(master_seed, stream_index);
  engine_.seed(seq);
}

double RngStream::uniform(double lo, double hi) {
  const double v = lo + (hi - lo) * uniform01();
  if (v >= hi && hi > lo) return std::nextafter(hi, lo);
  return v;
}

__extension__ using u128 = unsigned __int128;

std::size_t RngStream::below(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidParameter, "RngStream::below(0)");
  // Lemire's multiply-shift with rejection.
  const std::uint64_t range = n;
  u128 m = static_cast<u128>(engine_()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = -range % range;
    while (low < threshold) {
      m = static_cast<u128>(engine_()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

}  // namespace kinex
