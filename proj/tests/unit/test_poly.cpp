#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "fockdual/cone.hpp"
#include "fockdual/errors.hpp"
#include "fockdual/params.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/rng.hpp"

using namespace fockdual;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("multi-index enumeration") {
  CHECK(all_multi_indices(2, 6).size() == 28);
  CHECK(all_multi_indices(3, 4).size() == 35);
  const auto idx = all_multi_indices(3, 3);
  for (std::size_t i = 1; i < idx.size(); ++i) CHECK(grlex_less(idx[i - 1], idx[i]));
}

TEST_CASE("polynomial evaluation") {
  CHECK(Poly::constant(2, 1.0)(ComplexVector{0.3, -2.0}) == cplx(1.0));
  const Poly m = Poly::monomial(2, {1, 1});
  CHECK(std::abs(m(ComplexVector{2.0, 3.0 * I}) - 6.0 * I) < 1e-15);
  CHECK_THROWS_AS(m(ComplexVector{1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("homogeneous components sum to the polynomial") {
  const Poly f = random_poly(3, 5, CounterRng(4, 4));
  const ComplexVector z{0.3, cplx(-0.2, 0.9), 1.1};
  cplx acc = 0.0;
  for (int k = 0; k <= f.degree(); ++k) acc += f.homogeneous_component(k)(z);
  CHECK(std::abs(acc - f(z)) < 1e-12);
}

TEST_CASE("polynomial JSON round trip") {
  const Poly f = random_poly(2, 6, CounterRng(9, 1));
  nlohmann::json j = f;
  CHECK(poly_from_json(j) == f);
  CHECK(poly_from_json(nlohmann::json::parse(j.dump())) == f);
}

TEST_CASE("cone functions") {
  const ConeFun h(Poly(2), Poly::constant(2, 1.0));
  CHECK(std::abs(eval_cone(h, ConePoint(ComplexVector{1.0, 0.0, I})) - I) < 1e-15);
}

TEST_CASE("lifting constants and lifts") {
  CHECK(fock_constant_C(FockParams(2, 1.0, 1.0)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(lift_T_p(Poly(2), FockParams(2, 1.0, 1.0)) == ConeFun(2));
  CHECK_THROWS_AS(lift_T_p(Poly::constant(2, 1.0), FockParams(2, 1.0, kInfinity)), DomainError);

  const ConeFun one = lift_T(Poly::constant(2, 1.0));
  const ConePoint w(ComplexVector{0.6, 0.0, 0.6 * I});
  CHECK(std::abs(eval_cone(one, w) - w.last()) < 1e-15);

  const Poly g = random_poly(2, 4, CounterRng(2, 8));
  CHECK(std::abs(eval_cone(lift_T(g), ConePoint(ComplexVector{1.0, I, 0.0}))) == 0.0);
}

TEST_CASE("point functionals") {
  const ComplexVector z0{0.4, cplx(0.1, 0.3)};
  const PointFunctional g(PointFunctional::Domain::fock, {{z0, 2.0}, {ComplexVector{0.0, 1.0}, -1.0}});
  const Poly f = random_poly(2, 3, CounterRng(1, 2));
  CHECK(std::abs(g(f) - (2.0 * f(z0) - f(ComplexVector{0.0, 1.0}))) < 1e-14);
  CHECK_THROWS_AS(PointFunctional(PointFunctional::Domain::fock, {}), DomainError);
  CHECK_THROWS(PointFunctional(PointFunctional::Domain::fock, {{z0, 1.0}, {z0, 2.0}}));
}
