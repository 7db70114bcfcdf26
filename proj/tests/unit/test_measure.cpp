#include <doctest.h>

#include <cmath>

#include "fockdual/cone.hpp"
#include "fockdual/errors.hpp"
#include "fockdual/estimate.hpp"
#include "fockdual/measure.hpp"

using namespace fockdual;

TEST_CASE("Haar orthogonal matrices") {
  const HaarSampler sampler(3, 0);
  for (int k : {2, 3, 5}) {
    for (std::uint64_t d = 0; d < 20; ++d) {
      const RealMatrix q = sample_orthogonal(sampler, k, d);
      double worst = 0.0;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          double acc = 0.0;
          for (int l = 0; l < k; ++l) acc += q(l, i) * q(l, j);
          worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
      }
      CHECK(worst <= 1e-12);
      CHECK(std::abs(std::abs(q.determinant()) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Haar sign symmetry") {
  const HaarSampler sampler(11, 2);
  const int draws = 100000;
  double sum = 0.0, sq = 0.0;
  for (int d = 0; d < draws; ++d) {
    const double x = sample_orthogonal(sampler, 3, static_cast<std::uint64_t>(d))(0, 0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sq / draws - mean * mean) / (draws - 1));
  CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("samples on M") {
  const HaarSampler sampler(7, 4);
  for (int n : {2, 3, 4}) {
    for (std::uint64_t d = 0; d < 50; ++d) {
      const ConePoint xi = sample_M(sampler, n, d);
      CHECK(xi.dim() == static_cast<std::size_t>(n + 1));
      CHECK(xi.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(cone_residual(xi.vec()) < 1e-12);
    }
  }
}

TEST_CASE("coordinate exchange symmetry on M") {
  for (int n : {2, 3}) {
    const HaarSampler sampler(19, static_cast<std::uint64_t>(n));
    const int draws = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int d = 0; d < draws; ++d) {
      const double x = std::norm(sample_M(sampler, n, static_cast<std::uint64_t>(d)).last());
      sum += x;
      sq += x * x;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / (draws - 1));
    CHECK(std::abs(mean - 1.0 / (n + 1)) <= 3.0 * se);
  }
}

TEST_CASE("closed-form moments") {
  const ConePoint z = lift_plus({1.0, 0.0}).scaled(1.0 / std::sqrt(2.0));
  CHECK(z.norm() == doctest::Approx(1.0));
  CHECK(moment_M(z, 0, 2) == 1.0);
  CHECK(moment_M(z, 1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(moment_coefficient(0, 3) == 1.0);
  CHECK_THROWS_AS(moment_M(z, -1, 2), DomainError);
  // Homogeneous of degree 2k in z.
  CHECK(moment_M(z.scaled(2.0), 3, 2) == doctest::Approx(std::pow(2.0, 6) * moment_M(z, 3, 2)).epsilon(1e-12));
}

TEST_CASE("Haar Monte Carlo reproduces a moment") {
  const int n = 3, k = 2, draws = 200000;
  const ConePoint z = lift_plus({0.3, cplx(0.2, -0.5), 0.7});
  const HaarSampler sampler(23, 1);
  double sum = 0.0, sq = 0.0;
  for (int d = 0; d < draws; ++d) {
    const ConePoint xi = sample_M(sampler, n, static_cast<std::uint64_t>(d));
    cplx t = 0.0;
    for (std::size_t i = 0; i < xi.dim(); ++i) t += z[i] * std::conj(xi[i]);
    const double x = std::pow(std::norm(t), k);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sq / draws - mean * mean) / (draws - 1));
  CHECK(std::abs(mean - moment_M(z, k, n)) <= 3.0 * se);
}
