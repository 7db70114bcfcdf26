#pragma once

#include <cstdint>

#include "fockdual/rng.hpp"

namespace fockdual {

/// Thread count and block size for the deterministic blocked reductions.
/// Results depend on batch but never on threads.
struct ExecPolicy {
  int threads = 1;
  int batch = 4096;
};

/// Quadrature configuration: Gauss nodes in the radial variable, Monte Carlo
/// samples for the angular (or Euclidean) part, and the sampling stream.
struct QuadSpec {
  int radial_nodes = 64;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 7;
  std::uint64_t stream = 0;
  int batch = 4096;
  int threads = 1;

  /// Throws DomainError on radial_nodes < 16, mc_samples < 1, batch < 1.
  void validate() const;

  CounterRng rng() const noexcept { return {seed, stream}; }
  ExecPolicy exec() const noexcept { return {threads, batch}; }

  QuadSpec with_stream(std::uint64_t s) const noexcept {
    QuadSpec q = *this;
    q.stream = s;
    return q;
  }
  QuadSpec with_samples(std::int64_t m) const noexcept {
    QuadSpec q = *this;
    q.mc_samples = m;
    return q;
  }
  QuadSpec with_radial(int r) const noexcept {
    QuadSpec q = *this;
    q.radial_nodes = r;
    return q;
  }
};

}  // namespace fockdual
