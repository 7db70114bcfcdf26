#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace fockdual {

/// One verified statement: an observed value against a bound or a tolerance.
/// Columns follow the CSV report: test, n, s, p, degree, value, stderr, ratio, bound, pass.
struct Check {
  std::string name;
  int n = 0;
  double s = 0.0;
  double p = 0.0;
  int degree = -1;
  double value = 0.0;
  double stderr = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

void to_json(nlohmann::json& j, const Check& c);
void from_json(const nlohmann::json& j, Check& c);

/// True when every check passes (and the list is nonempty).
bool all_pass(const std::vector<Check>& checks) noexcept;

}  // namespace fockdual
