#include <doctest.h>

#include <cmath>

#include "fockdual/cone.hpp"
#include "fockdual/errors.hpp"
#include "fockdual/kernels.hpp"
#include "fockdual/measure.hpp"

using namespace fockdual;

namespace {

ConePoint point(std::uint64_t draw, double radius, int n = 2) {
  return sample_M(HaarSampler(31, static_cast<std::uint64_t>(n)), n, draw).scaled(radius);
}

}  // namespace

TEST_CASE("kernel coefficients") {
  const FockParams params(2, 1.0, 2.0);
  CHECK(kernel_coefficient(0, params) == doctest::Approx(1.0));
  CHECK(kernel_coefficient(1, params) == doctest::Approx(3.0));
  CHECK_THROWS_AS(kernel_coefficient(-1, params), DomainError);
}

TEST_CASE("closed-form kernel values") {
  const FockParams params(2, 1.0, 2.0);
  const ConePoint z = point(0, 1.0);
  CHECK(std::abs(bergman_kernel(z, z, params) - 3.0 * std::exp(1.0)) < 1e-13);
  const ConePoint a(ComplexVector{1.0, cplx(0.0, 1.0), 0.0});
  const ConePoint b(ComplexVector{1.0, cplx(0.0, -1.0), 0.0});
  CHECK(std::abs(hermitian_dot(a.vec(), b.vec())) == 0.0);
  CHECK(std::abs(bergman_kernel(a, b, params) - 1.0) < 1e-15);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ConePoint w = point(2 * k + 1, 1.5), u = point(2 * k + 2, 0.7);
    CHECK(std::abs(bergman_kernel(w, u, params) - std::conj(bergman_kernel(u, w, params))) < 1e-13);
  }
}

TEST_CASE("basis expansion matches the closed form") {
  for (int n : {2, 3, 4}) {
    const FockParams params(n, 1.0, 1.0);
    CHECK(std::abs(kernel_from_basis(point(1, 1.0, n), point(2, 2.0, n), params, 0) - 1.0) < 1e-15);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const ConePoint z = point(2 * k, 2.0 * (k + 1) / 50.0, n), w = point(2 * k + 1, 2.0, n);
      const cplx exact = bergman_kernel(z, w, params);
      CHECK(std::abs(kernel_from_basis(z, w, params, 200) - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("odd kernel") {
  const FockParams params(3, 1.0, 1.0);
  const ConePoint z = point(4, 1.2, 3);
  const ConePoint locus(ComplexVector{1.0, cplx(0.0, 1.0), 0.0, 0.0});
  CHECK(std::abs(odd_kernel(locus, z, params)) < 1e-15);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ConePoint w = point(10 + k, 1.7, 3);
    CHECK(std::abs(odd_kernel(flip(w), z, params) + odd_kernel(w, z, params)) < 1e-13);
    const auto branch = odd_kernel_branch(w, z, params);
    CHECK(std::abs(branch.value - odd_kernel(w, z, params)) <= 1e-12 * std::max(1.0, std::abs(branch.value)));
  }
  CHECK(odd_kernel_branch(z, locus, params).used_fallback);
}

TEST_CASE("J-series against its integral form") {
  for (double p : {0.5, 1.0}) {
    const FockParams params(2, 1.0, p);
    QuadSpec q;
    q.mc_samples = 100000;
    for (double r : {0.5, 2.0}) {
      const ConePoint z = point(3, r);
      const double series = j_series(z, params);
      const Estimate quad = j_quadrature(z, params, q);
      CHECK(std::abs(series - quad.real()) <= 3.0 * quad.stderr + 1e-10 * series);
    }
  }
}
