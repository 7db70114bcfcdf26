#include <doctest.h>

#include <cmath>

#include "fockdual/errors.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/weights.hpp"

using namespace fockdual;

namespace {

QuadSpec quad(std::int64_t samples, std::uint64_t stream) {
  QuadSpec q;
  q.mc_samples = samples;
  q.stream = stream;
  return q;
}

bool within(const Estimate& e, double expected, double mult = 3.0, double tol = 1e-12) {
  return std::abs(e.value - expected) <= mult * e.stderr + tol;
}

}  // namespace

TEST_CASE("m_n closed form") {
  for (int n = 2; n <= 6; ++n) {
    const double closed = 4.0 * n * (n + 1.0) * (n + 1.0);
    CHECK(m_n(n) == doctest::Approx(closed).epsilon(1e-9));
    CHECK(compute_m_n(n, quad(1000, 1)).real() == doctest::Approx(closed).epsilon(1e-9));
  }
  CHECK(m_n(2) == doctest::Approx(72.0).epsilon(1e-12));
}

TEST_CASE("m_n by Monte Carlo agrees to 1%") {
  for (int n : {2, 3}) {
    const Estimate e = compute_m_n(n, quad(400000, 2), MnRoute::monte_carlo);
    CHECK(std::abs(e.real() / m_n(n) - 1.0) < 0.01);
  }
}

TEST_CASE("probability normalization of the Gaussian form") {
  for (int n : {2, 3}) {
    for (double p : {0.5, 1.0, 2.0}) {
      const FockParams params(n, 1.0, p);
      const ConeFunction f = [&](const ConePoint& w) { return cplx(gaussian_form(w, params)); };
      const Estimate e = integrate_polar(f, params, quad(2000, 3));
      // Purely radial: any angular rule integrates it exactly.
      CHECK(std::abs(e.real() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("unit-ball indicator on both routes") {
  for (int n : {2, 3}) {
    const double expected = m_n(n) / (2.0 * n - 2.0);
    const ConeFunction ind = [](const ConePoint& w) { return cplx(w.norm() < 1.0 ? 1.0 : 0.0); };
    const auto radial = RadialRule::ball(n, 1.0, 32);
    const auto angular = AngularRule::monte_carlo(n, 1000, HaarSampler(1, 9));
    CHECK(integrate_polar(ind, m_n(n), radial, angular).real() == doctest::Approx(expected).epsilon(1e-12));
    const Estimate b = integrate_branch(ind, n, quad(400000, 4));
    CHECK(within(b, expected, 4.0));
  }
}

TEST_CASE("flip-odd integrands vanish on the branch route") {
  const ConeFunction odd = [](const ConePoint& w) { return w.last() * std::exp(-hermitian_norm_sq(w.vec())); };
  const Estimate b = integrate_branch(odd, 2, quad(20000, 5));
  CHECK(std::abs(b.value) <= 3.0 * b.stderr + 1e-12);
}

TEST_CASE("spectral oracle for a weighted moment") {
  // f(w) = |<w, a>|^2 e^{-|w|^2}, a on M: the angular moment times a Gamma integral.
  const int n = 3;
  const ConePoint a = sample_M(HaarSampler(2, 2), n, 0);
  const ConeFunction f = [&](const ConePoint& w) {
    return cplx(std::norm(hermitian_dot(w.vec(), a.vec())) * std::exp(-hermitian_norm_sq(w.vec())));
  };
  // int_0^inf r^{2n-3} r^2 e^{-r^2} dr = Gamma(n) / 2.
  const double expected = m_n(n) * moment_M(a, 1, n) * std::tgamma(n) / 2.0;
  const auto radial = RadialRule::gaussian(n, 1.0, 32);
  const auto angular = AngularRule::product(n, 4);
  CHECK(integrate_polar(f, m_n(n), radial, angular).real() == doctest::Approx(expected).epsilon(1e-10));
  const auto mc = AngularRule::monte_carlo(n, 200000, HaarSampler(3, 3));
  CHECK(within(integrate_polar(f, m_n(n), radial, mc), expected));
}

TEST_CASE("non-finite integrands are reported") {
  const ConeFunction bad = [](const ConePoint&) { return cplx(NAN); };
  CHECK_THROWS_AS(integrate_polar(bad, FockParams(2, 1.0, 1.0), quad(100, 6)), NonFiniteError);
}

TEST_CASE("results do not depend on the thread count") {
  const FockParams params(2, 1.0, 0.5);
  const ConeFunction f = [&](const ConePoint& w) { return std::pow(std::abs(w[0]), 3) * std::exp(-hermitian_norm_sq(w.vec())); };
  QuadSpec q1 = quad(20000, 7), q4 = q1;
  q4.threads = 4;
  const Estimate a = integrate_polar(f, params, q1), b = integrate_polar(f, params, q4);
  CHECK(a.value == b.value);
  CHECK(a.stderr == b.stderr);
}
