#include "fockdual/measure.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fockdual/errors.hpp"
#include "fockdual/estimate.hpp"
#include "fockdual/parallel.hpp"
#include "fockdual/quadspec.hpp"

namespace fockdual {

double Estimate::relative_stderr() const noexcept {
  const double a = std::abs(value);
  return a > 0.0 ? stderr / a : 0.0;
}

Estimate Estimate::scaled(double factor) const noexcept {
  Estimate e = *this;
  e.value *= factor;
  e.stderr *= std::abs(factor);
  return e;
}

bool agree(const Estimate& a, const Estimate& b, double multiplier, double abs_tol) noexcept {
  return std::abs(a.value - b.value) <= multiplier * (a.stderr + b.stderr) + abs_tol;
}

void QuadSpec::validate() const {
  if (radial_nodes < 16) throw DomainError("QuadSpec: radial_nodes must be >= 16");
  if (mc_samples < 1) throw DomainError("QuadSpec: mc_samples must be >= 1");
  if (batch < 1) throw DomainError("QuadSpec: batch must be >= 1");
  if (threads < 1) throw DomainError("QuadSpec: threads must be >= 1");
}

void for_each_index(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

double RealMatrix::determinant() const {
  if (rows_ != cols_) throw DimensionError("determinant of a non-square matrix");
  Eigen::Map<const Eigen::MatrixXd> m(data_.data(), rows_, cols_);
  return m.determinant();
}

RealMatrix sample_orthogonal(const HaarSampler& sampler, int k, std::uint64_t draw) {
  if (k < 1) throw DomainError("sample_orthogonal: k must be >= 1");
  const auto& rng = sampler.rng();
  const std::uint64_t base = draw * static_cast<std::uint64_t>(k) * k;
  Eigen::MatrixXd g(k, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < k; ++r) g(r, c) = rng.normal(base + static_cast<std::uint64_t>(c) * k + r);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  RealMatrix out(k, k);
  for (int c = 0; c < k; ++c) {
    const double sign = qr.matrixQR()(c, c) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < k; ++r) out(r, c) = sign * q(r, c);
  }
  return out;
}

void sample_M_into(const HaarSampler& sampler, int n, std::uint64_t draw, ComplexVector& out) {
  const int k = n + 1;
  const auto& rng = sampler.rng();
  const std::uint64_t base = draw * static_cast<std::uint64_t>(k) * k;
  double a[kMaxDim];
  double b[kMaxDim];
  for (int r = 0; r < k; ++r) {
    a[r] = rng.normal(base + r);
    b[r] = rng.normal(base + k + r);
  }
  double na = 0.0;
  for (int r = 0; r < k; ++r) na += a[r] * a[r];
  na = std::sqrt(na);
  for (int r = 0; r < k; ++r) a[r] /= na;
  for (int pass = 0; pass < 2; ++pass) {
    double d = 0.0;
    for (int r = 0; r < k; ++r) d += a[r] * b[r];
    for (int r = 0; r < k; ++r) b[r] -= d * a[r];
  }
  double nb = 0.0;
  for (int r = 0; r < k; ++r) nb += b[r] * b[r];
  nb = std::sqrt(nb);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (out.dim() != static_cast<std::size_t>(k)) out = ComplexVector(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) out[r] = cplx(a[r], b[r] / nb) * inv_sqrt2;
}

ConePoint sample_M(const HaarSampler& sampler, int n, std::uint64_t draw) {
  if (n < 2 || static_cast<std::size_t>(n) + 1 > kMaxDim) throw DomainError("sample_M: unsupported n");
  ComplexVector v(static_cast<std::size_t>(n) + 1);
  sample_M_into(sampler, n, draw, v);
  return ConePoint::trusted(v);
}

double moment_coefficient(int k, int n) {
  if (k < 0) throw DomainError("moment_M: k must be >= 0");
  if (n < 2) throw DomainError("moment_M: n must be >= 2");
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(static_cast<double>(n)) - std::lgamma(k + n - 1.0) -
                  std::log(2.0 * k + n - 1.0));
}

double moment_M(const ConePoint& z, int k, int n) {
  const double c = moment_coefficient(k, n);
  return c * std::pow(hermitian_norm_sq(z.vec()), k);
}

}  // namespace fockdual
