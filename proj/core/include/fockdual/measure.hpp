#pragma once

#include <cstdint>
#include <vector>

#include "fockdual/cone.hpp"
#include "fockdual/rng.hpp"

namespace fockdual {

/// Dense real matrix, column-major.
class RealMatrix {
 public:
  RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  double operator()(int r, int c) const noexcept { return data_[static_cast<std::size_t>(c) * rows_ + r]; }
  double& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(c) * rows_ + r]; }
  double determinant() const;

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

/// Source of Haar-distributed orthogonal matrices and points of M, the unit
/// sphere section of the cone. Draw `d` is a pure function of
/// (seed, stream, d).
class HaarSampler {
 public:
  explicit HaarSampler(CounterRng rng) noexcept : rng_(rng) {}
  HaarSampler(std::uint64_t seed, std::uint64_t stream) noexcept : rng_(seed, stream) {}

  const CounterRng& rng() const noexcept { return rng_; }

 private:
  CounterRng rng_;
};

/// Haar-distributed element of O(k): QR of a k x k standard Gaussian matrix
/// with each column of Q multiplied by the sign of the matching diagonal
/// entry of R.
RealMatrix sample_orthogonal(const HaarSampler& sampler, int k, std::uint64_t draw);

/// Q b with b = (1, i, 0, ..., 0) / sqrt 2 and Q = sample_orthogonal(sampler, n + 1, draw).
/// Only the first two columns of Q enter, so they are formed by Gram-Schmidt
/// on the same Gaussian columns (identical to the sign-corrected QR factor).
ConePoint sample_M(const HaarSampler& sampler, int n, std::uint64_t draw);

/// Writes the point into out (dimension n + 1) without constructing a ConePoint.
void sample_M_into(const HaarSampler& sampler, int n, std::uint64_t draw, ComplexVector& out);

/// Closed form of the integral over M of |<z, xi>|^{2k} d mu(xi):
/// k! (n-1)! / ((k+n-2)! (2k+n-1)) |z|^{2k}. Throws DomainError for k < 0.
double moment_M(const ConePoint& z, int k, int n);

/// The coefficient k! (n-1)! / ((k+n-2)! (2k+n-1)) alone.
double moment_coefficient(int k, int n);

}  // namespace fockdual
