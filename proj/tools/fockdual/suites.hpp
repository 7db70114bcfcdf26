#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "fockdual/check.hpp"
#include "run_config.hpp"

namespace fockdual::cli {

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  /// Suite-specific payload (m_n values, duality records).
  nlohmann::json extra = nlohmann::json::object();
  /// Raw quantities from which calibration constants are derived.
  std::map<std::string, double> raw;
  double runtime_ms = 0.0;

  bool pass() const noexcept { return all_pass(checks); }
};

/// Runs one suite. Checks against frozen constants fail when the matching
/// constant is missing from the calibration.
SuiteResult run_suite(const std::string& name, const RunConfig& config, const Calibration& frozen);

/// Suites that feed the calibration file.
const std::vector<std::string>& calibrated_suites();

/// Frozen constants from the raw maxima of calibration runs, with the
/// documented safety margins.
std::map<std::string, double> freeze_constants(const std::map<std::string, double>& raw);

/// Report body: deterministic in (config, frozen constants); carries no timing.
nlohmann::json suite_report(const SuiteResult& result, const RunConfig& config);

}  // namespace fockdual::cli
