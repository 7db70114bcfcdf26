#pragma once

#include <span>
#include <vector>

namespace fockdual {

/// Cubature on the unit sphere S^m in R^{m+1}, normalized to total weight 1
/// and exact for polynomials of degree <= degree(). Built recursively as
/// (t, sqrt(1 - t^2) y) with Gauss-Jacobi nodes in t and a rule on S^{m-1}
/// for y; S^1 uses equispaced angles.
class SphereRule {
 public:
  SphereRule(int m, int degree);

  int sphere_dim() const noexcept { return m_; }
  int ambient_dim() const noexcept { return m_ + 1; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {points_.data() + i * static_cast<std::size_t>(m_ + 1), static_cast<std::size_t>(m_ + 1)};
  }
  double weight(std::size_t i) const noexcept { return weights_[i]; }

 private:
  int m_;
  int degree_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

}  // namespace fockdual
