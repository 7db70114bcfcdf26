#pragma once

#include <vector>

namespace fockdual {

/// One-dimensional Gauss rule: sum_i weights[i] f(nodes[i]) integrates
/// f against the rule's weight function, exactly for polynomials of degree
/// <= 2 * size() - 1. Nodes are increasing.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Weight x^alpha e^{-x} on (0, inf), alpha > -1. At most 160 nodes.
GaussRule gauss_laguerre(int count, double alpha);

/// Weight (1 - x)^alpha (1 + x)^beta on (-1, 1), alpha, beta > -1.
GaussRule gauss_jacobi(int count, double alpha, double beta);

/// Weight 1 on (-1, 1).
GaussRule gauss_legendre(int count);

}  // namespace fockdual
