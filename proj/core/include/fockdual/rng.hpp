#pragma once

#include <cstdint>

namespace fockdual {

/// Counter-based generator: every output is a pure function of
/// (seed, stream, counter), so work can be split across threads by index.
/// Outputs are the SplitMix64 sequence keyed by (seed, stream).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal; consumes uniforms at counters 2c and 2c + 1.
  double normal(std::uint64_t counter) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent generator for a sub-stream (same seed, derived stream id).
  CounterRng substream(std::uint64_t id) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace fockdual
