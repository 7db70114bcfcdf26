#include "fockdual/gauss.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "fockdual/errors.hpp"

namespace fockdual {
namespace {

// Three-term recurrence of the monic orthogonal polynomials:
// P_{k+1} = (x - a_k) P_k - b_k P_{k-1}, with b_0 = mu0 (total mass).
struct Recurrence {
  std::vector<double> a;
  std::vector<double> b;
};

struct Orthonormal {
  double value;
  double derivative;
  double christoffel;  // sum_{k < N} p_k(x)^2
};

// Orthonormal polynomials at x: value and derivative of p_N, plus the
// Christoffel sum over p_0..p_{N-1}.
Orthonormal evaluate(const Recurrence& rec, double x) {
  const std::size_t count = rec.a.size();
  double prev = 0.0, prev_d = 0.0;
  double cur = 1.0 / std::sqrt(rec.b[0]), cur_d = 0.0;
  double sum = cur * cur;
  for (std::size_t k = 0; k < count; ++k) {
    const double beta_next = std::sqrt(rec.b[k + 1]);
    const double beta_k = k == 0 ? 0.0 : std::sqrt(rec.b[k]);
    const double next = ((x - rec.a[k]) * cur - beta_k * prev) / beta_next;
    const double next_d = (cur + (x - rec.a[k]) * cur_d - beta_k * prev_d) / beta_next;
    prev = cur;
    prev_d = cur_d;
    cur = next;
    cur_d = next_d;
    if (k + 1 < count) sum += cur * cur;
  }
  return {cur, cur_d, sum};
}

GaussRule golub_welsch(const Recurrence& rec) {
  const int count = static_cast<int>(rec.a.size());
  Eigen::VectorXd diag(count);
  Eigen::VectorXd sub(count > 1 ? count - 1 : 1);
  for (int k = 0; k < count; ++k) diag(k) = rec.a[k];
  for (int k = 1; k < count; ++k) sub(k - 1) = std::sqrt(rec.b[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("gauss rule: eigenvalue solver failed");

  GaussRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    double x = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      const Orthonormal e = evaluate(rec, x);
      if (e.derivative == 0.0) break;
      const double dx = e.value / e.derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / evaluate(rec, x).christoffel;
  }
  return rule;
}

void require_count(int count, int max_count) {
  if (count < 1 || count > max_count) {
    throw DomainError("gauss rule: node count " + std::to_string(count) + " outside [1, " +
                      std::to_string(max_count) + "]");
  }
}

}  // namespace

GaussRule gauss_laguerre(int count, double alpha) {
  require_count(count, 160);
  if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha must exceed -1");
  Recurrence rec;
  rec.a.resize(count);
  rec.b.resize(count + 1);
  rec.b[0] = std::tgamma(alpha + 1.0);
  for (int k = 0; k < count; ++k) rec.a[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k <= count; ++k) rec.b[k] = k * (k + alpha);
  return golub_welsch(rec);
}

GaussRule gauss_jacobi(int count, double alpha, double beta) {
  require_count(count, 400);
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  const double ab = alpha + beta;
  Recurrence rec;
  rec.a.resize(count);
  rec.b.resize(count + 1);
  rec.b[0] = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                      std::lgamma(ab + 2.0));
  for (int k = 0; k < count; ++k) {
    if (k == 0) {
      rec.a[k] = (beta - alpha) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      rec.a[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k <= count; ++k) {
    const double t = 2.0 * k + ab;
    if (k == 1) {
      rec.b[k] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      rec.b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
  }
  return golub_welsch(rec);
}

GaussRule gauss_legendre(int count) { return gauss_jacobi(count, 0.0, 0.0); }

}  // namespace fockdual
