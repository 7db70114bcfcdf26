#include "fockdual/check.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace fockdual {
namespace {

// Infinite p and other non-finite values are written as strings so the
// JSON stays valid and round-trips.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

}  // namespace

void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"name", c.name},           {"n", c.n},
                     {"s", number(c.s)},         {"p", number(c.p)},
                     {"degree", c.degree},       {"value", number(c.value)},
                     {"stderr", number(c.stderr)}, {"ratio", number(c.ratio)},
                     {"bound", number(c.bound)}, {"tol", number(c.tol)},
                     {"pass", c.pass}};
  if (!c.detail.empty()) j["detail"] = c.detail;
}

void from_json(const nlohmann::json& j, Check& c) {
  c.name = j.at("name").get<std::string>();
  c.n = j.at("n").get<int>();
  c.s = read_number(j.at("s"));
  c.p = read_number(j.at("p"));
  c.degree = j.at("degree").get<int>();
  c.value = read_number(j.at("value"));
  c.stderr = read_number(j.at("stderr"));
  c.ratio = read_number(j.at("ratio"));
  c.bound = read_number(j.at("bound"));
  c.tol = read_number(j.at("tol"));
  c.pass = j.at("pass").get<bool>();
  c.detail = j.value("detail", std::string{});
}

bool all_pass(const std::vector<Check>& checks) noexcept {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace fockdual
