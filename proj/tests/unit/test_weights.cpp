#include <doctest.h>

#include <cmath>

#include "fockdual/errors.hpp"
#include "fockdual/rng.hpp"
#include "fockdual/weights.hpp"

using namespace fockdual;

TEST_CASE("weight on the branch locus") {
  const ComplexVector z{1.0, cplx(0.0, 1.0)};
  CHECK(rho(z) == 0.0);
  CHECK_THROWS_AS(weight_phi(z, 1.0), DomainError);
}

TEST_CASE("weight phi on real vectors") {
  // N_*^2 = 2 |x|^2 and |x . x| = |x|^2.
  const ComplexVector x{3.0, 4.0};
  CHECK(weight_phi(x, 1.0) == doctest::Approx(0.5 * (50.0 - std::log(25.0))));
}

TEST_CASE("harmonic residual bound") {
  const CounterRng rng(17, 3);
  for (std::uint64_t k = 0; k < 200; ++k) {
    ComplexVector z(3);
    for (std::size_t i = 0; i < 3; ++i) z[i] = cplx(rng.normal(8 * k + 2 * i), rng.normal(8 * k + 2 * i + 1));
    const double r = 0.1 + 3.0 * rng.uniform(8 * k + 7);
    const double res = harmonic_residual(z, r, 256, k);
    CHECK(res <= r * r * (1.0 + 1e-12));
    CHECK(res >= 0.0);
  }
  CHECK(harmonic_residual(ComplexVector{0.5, 0.25}, 1.0, 256) <= 1.0);
}

TEST_CASE("harmonic residual at the origin approaches R^2") {
  const double r = 1.5;
  const double res = harmonic_residual(ComplexVector{0.0, 0.0}, r, 20000);
  CHECK(res <= r * r);
  CHECK(res >= 0.95 * r * r);
}
