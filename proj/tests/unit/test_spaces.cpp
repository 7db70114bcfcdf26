#include <doctest.h>

#include <cmath>

#include "fockdual/errors.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/rng.hpp"
#include "fockdual/spaces.hpp"

using namespace fockdual;

namespace {

QuadSpec quad(std::int64_t samples, std::uint64_t stream, std::uint64_t seed = 7) {
  QuadSpec q;
  q.mc_samples = samples;
  q.stream = stream;
  q.seed = seed;
  return q;
}

}  // namespace

TEST_CASE("zero function has zero norm") {
  const FockParams params(2, 1.0, 0.5);
  CHECK(norm_fock(Poly(2), params, quad(1000, 1)).value == 0.0);
  CHECK(norm_sup(Poly(2), params).value == 0.0);
}

TEST_CASE("sup norm of the constant") {
  // e^{-phi} = |z.z|^{1/2} e^{-s N_*^2/2} peaks on real directions at |z.z| = 1/(2s).
  const double expected = std::sqrt(0.5) * std::exp(-0.5);
  const NormResult a = norm_sup(Poly::constant(2, 1.0), FockParams(2, 1.0, kInfinity));
  CHECK(a.value == doctest::Approx(expected).epsilon(1e-6));
  SupSearch other;
  other.seed = 99;
  const NormResult b = norm_sup(Poly::constant(2, 1.0), FockParams(2, 1.0, kInfinity), other);
  CHECK(std::abs(b.value / a.value - 1.0) < 0.01);
}

TEST_CASE("sup norm budget is monotone") {
  const Poly f = random_poly(2, 4, CounterRng(3, 3));
  const FockParams params(2, 1.0, kInfinity);
  double last = 0.0;
  for (int budget : {1, 4, 16}) {
    SupSearch s;
    s.budget = budget;
    const double v = norm_sup(f, params, s).value;
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("norm homogeneity") {
  const Poly f = random_poly(3, 3, CounterRng(5, 1));
  for (double p : {0.5, 1.0, 2.0}) {
    const FockParams params(3, 1.0, p);
    const double a = norm_fock(f, params, quad(5000, 2)).value;
    const double b = norm_fock(cplx(-2.0, 1.5) * f, params, quad(5000, 2)).value;
    CHECK(b == doctest::Approx(std::abs(cplx(-2.0, 1.5)) * a).epsilon(1e-12));
  }
}

TEST_CASE("quasi-triangle inequality") {
  // p < 1: ||f + g||^p <= ||f||^p + ||g||^p on a common cubature.
  const FockParams params(2, 1.0, 0.5);
  const QuadSpec q = quad(20000, 3);
  for (std::uint64_t k = 0; k < 10; ++k) {
    const Poly f = random_poly(2, 4, CounterRng(6, 2 * k)), g = random_poly(2, 4, CounterRng(6, 2 * k + 1));
    const double nf = norm_fock(f, params, q).value, ng = norm_fock(g, params, q).value;
    const double ns = norm_fock(f + g, params, q).value;
    CHECK(std::sqrt(ns) <= std::sqrt(nf) + std::sqrt(ng) + 1e-12);
  }
}

TEST_CASE("isometry on closed-form cases") {
  const auto one = check_isometry(Poly::constant(2, 1.0), FockParams(2, 1.0, 2.0), quad(100000, 4));
  CHECK(one.within(3.0));
  const auto z1 = check_isometry(Poly::monomial(2, {1, 0}), FockParams(2, 1.0, 1.0), quad(100000, 5));
  CHECK(z1.within(3.0));
  CHECK_THROWS(check_isometry(Poly(2), FockParams(2, 1.0, 1.0), quad(1000, 6)));
}

TEST_CASE("isometry on a random polynomial at p = 0.5") {
  const Poly f = random_poly(2, 4, CounterRng(8, 8));
  const auto c = check_isometry(f, FockParams(2, 1.0, 0.5), quad(200000, 7));
  CHECK(c.within(3.0));
}

TEST_CASE("embedding and pointwise ratios") {
  const QuadSpec q = quad(20000, 8);
  const double e = embedding_ratio(Poly::constant(2, 1.0), FockParams(2, 1.0, 0.5), q);
  CHECK(std::isfinite(e));
  CHECK(e > 0.0);
  const double pr = pointwise_ratio(Poly::constant(2, 1.0), FockParams(2, 1.0, 1.0), q);
  CHECK(std::isfinite(pr));
  CHECK(pr > 0.0);
  CHECK_THROWS(embedding_ratio(Poly(2), FockParams(2, 1.0, 0.5), q));
}

TEST_CASE("norms are deterministic in the seed") {
  const Poly f = random_poly(3, 4, CounterRng(2, 2));
  const FockParams params(3, 1.0, 0.5);
  CHECK(norm_fock(f, params, quad(5000, 9)).value == norm_fock(f, params, quad(5000, 9)).value);
  CHECK(norm_fock(f, params, quad(5000, 9)).value != norm_fock(f, params, quad(5000, 9, 8)).value);
}
