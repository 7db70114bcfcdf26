#include "fockdual/sphere_rule.hpp"

#include <cmath>
#include <numbers>

#include "fockdual/errors.hpp"
#include "fockdual/gauss.hpp"

namespace fockdual {

SphereRule::SphereRule(int m, int degree) : m_(m), degree_(degree) {
  if (m < 1) throw DomainError("SphereRule: sphere dimension must be >= 1");
  if (degree < 0) throw DomainError("SphereRule: degree must be >= 0");

  if (m == 1) {
    const int count = degree + 1;
    points_.reserve(2 * count);
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / count;
      points_.push_back(std::cos(theta));
      points_.push_back(std::sin(theta));
      weights_.push_back(1.0 / count);
    }
    return;
  }

  const SphereRule inner(m - 1, degree);
  const double a = 0.5 * (m - 2);
  const GaussRule t_rule = gauss_jacobi(degree / 2 + 1, a, a);
  double mass = 0.0;
  for (double w : t_rule.weights) mass += w;

  points_.reserve(t_rule.size() * inner.size() * (m + 1));
  weights_.reserve(t_rule.size() * inner.size());
  for (std::size_t i = 0; i < t_rule.size(); ++i) {
    const double t = t_rule.nodes[i];
    const double c = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t j = 0; j < inner.size(); ++j) {
      points_.push_back(t);
      for (double y : inner.point(j)) points_.push_back(c * y);
      weights_.push_back(t_rule.weights[i] / mass * inner.weight(j));
    }
  }
}

}  // namespace fockdual
