#include <doctest.h>

#include <cmath>

#include "fockdual/complex_vector.hpp"
#include "fockdual/cone.hpp"
#include "fockdual/errors.hpp"
#include "fockdual/rng.hpp"

using namespace fockdual;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("bilinear dot") {
  CHECK(std::abs(bilinear_dot({1.0, I}, {1.0, I})) == 0.0);
  CHECK(std::abs(bilinear_dot({1.0, 0.0}, {0.0, 1.0})) == 0.0);
  CHECK(bilinear_dot({1.0, 2.0 * I}, {1.0, 2.0 * I}) == cplx(-3.0));
  CHECK_THROWS_AS(bilinear_dot({1.0}, {1.0, 2.0}), DimensionError);
}

TEST_CASE("hermitian norm") {
  CHECK(hermitian_norm({1.0, I}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hermitian_norm({0.0, 0.0}) == 0.0);
  CHECK(hermitian_norm({3.0, 4.0 * I}) == doctest::Approx(5.0));
}

TEST_CASE("Hahn-Pflug norm") {
  CHECK(hahn_pflug({3.0, 4.0}) == doctest::Approx(std::sqrt(2.0) * 5.0).epsilon(1e-12));
  CHECK(hahn_pflug({1.0, I}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hahn_pflug({1.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("principal square root") {
  CHECK(std::abs(sqrt_principal(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(sqrt_principal(-1.0) - I) < 1e-15);
  CHECK(std::abs(sqrt_principal(2.0 * I) - cplx(1.0, 1.0)) < 1e-15);
}

TEST_CASE("lifts onto the cone") {
  const ConePoint a = lift_plus({1.0, 0.0});
  CHECK(max_abs_diff(a.vec(), {1.0, 0.0, I}) < 1e-15);
  const ConePoint b = lift_plus({1.0, I});
  CHECK(max_abs_diff(b.vec(), {1.0, I, 0.0}) < 1e-15);
  CHECK_THROWS(lift_plus({0.0, 0.0}));

  const CounterRng rng(5, 1);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const ComplexVector z{cplx(rng.normal(4 * k), rng.normal(4 * k + 1)), cplx(rng.normal(4 * k + 2), rng.normal(4 * k + 3))};
    const ConePoint w = lift_plus(z);
    CHECK(cone_residual(w.vec()) < 1e-12);
    const double hp = hahn_pflug(z);
    CHECK(std::abs(hermitian_norm_sq(w.vec()) - hp * hp) < 1e-12 * hp * hp);
    CHECK(max_abs_diff(project(w), z) == 0.0);
    CHECK(max_abs_diff(lift_minus(z).vec(), flip(w).vec()) < 1e-15);
  }
}

TEST_CASE("flip and projection") {
  const ConePoint w(ComplexVector{1.0, 0.0, I});
  CHECK(max_abs_diff(flip(w).vec(), {1.0, 0.0, -I}) == 0.0);
  CHECK(flip(flip(w)) == w);
  const ConePoint b(ComplexVector{1.0, I, 0.0});
  CHECK(flip(b) == b);
  CHECK(max_abs_diff(project(w), {1.0, 0.0}) == 0.0);
  CHECK(on_branch_locus({1.0, I}));
  CHECK_FALSE(on_branch_locus({1.0, 0.0}));
}

TEST_CASE("cone membership is validated") {
  CHECK_THROWS_AS(ConePoint(ComplexVector{1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS(ConePoint(ComplexVector{0.0, 0.0, 0.0}));
}
