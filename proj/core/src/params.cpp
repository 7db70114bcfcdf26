#include "fockdual/params.hpp"

#include <cmath>
#include <string>

#include "fockdual/complex_vector.hpp"
#include "fockdual/errors.hpp"

namespace fockdual {

FockParams::FockParams(int n, double s, double p) : n_(n), s_(s), p_(p) {
  if (n < 2) throw DomainError("FockParams: n must be >= 2, got " + std::to_string(n));
  if (static_cast<std::size_t>(n) + 1 > kMaxDim) {
    throw DomainError("FockParams: n + 1 exceeds the supported dimension");
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("FockParams: s must be a positive real");
  if (!(p > 0.0) || std::isnan(p)) throw DomainError("FockParams: p must be > 0 or infinity");
}

}  // namespace fockdual
