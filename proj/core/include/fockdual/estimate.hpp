#pragma once

#include <complex>
#include <cstdint>

namespace fockdual {

/// Value with its Monte Carlo standard error. Deterministic routes report
/// stderr = 0 and stochastic = false.
struct Estimate {
  std::complex<double> value{};
  double stderr = 0.0;
  std::int64_t samples = 0;
  bool stochastic = false;

  double real() const noexcept { return value.real(); }
  double abs() const noexcept { return std::abs(value); }
  /// stderr / |value|, or 0 when the value vanishes.
  double relative_stderr() const noexcept;

  Estimate scaled(double factor) const noexcept;
};

/// |a - b| <= multiplier * (a.stderr + b.stderr) + abs_tol.
bool agree(const Estimate& a, const Estimate& b, double multiplier, double abs_tol) noexcept;

}  // namespace fockdual
