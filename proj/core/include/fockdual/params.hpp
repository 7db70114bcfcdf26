#pragma once

#include <limits>

namespace fockdual {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The triple (n, s, p): complex dimension of the base space, Gaussian weight
/// scale, and integrability exponent. The cone lives in C^{n+1}.
class FockParams {
 public:
  /// Throws DomainError unless n >= 2, s > 0 and p > 0 (p may be kInfinity).
  FockParams(int n, double s, double p);

  int n() const noexcept { return n_; }
  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  bool p_infinite() const noexcept { return p_ == kInfinity; }

  /// Same n and s with a different exponent.
  FockParams with_p(double p) const { return {n_, s_, p}; }

  friend bool operator==(const FockParams&, const FockParams&) = default;

 private:
  int n_;
  double s_;
  double p_;
};

}  // namespace fockdual
