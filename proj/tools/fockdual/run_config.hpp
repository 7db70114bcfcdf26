#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockdual::cli {

/// Raised for invalid configuration; the runner maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a verification run depends on. Identical configs produce
/// byte-identical reports.
struct RunConfig {
  std::vector<int> n{2, 3};
  double s = 1.0;
  std::vector<double> p_list{0.5, 1.0, 2.0};
  int degree = 6;
  int radial_nodes = 64;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 7;
  double tol_abs = 1e-8;
  double tol_stderr_mult = 3.0;
  std::vector<std::string> suites{"measure", "kernel", "isometry", "embeddings", "duality"};
  std::string out_dir = "out";
  int threads = 1;
  std::string fixtures;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Suite names in execution order.
const std::vector<std::string>& suite_names();

/// Applies `key = value` lines to config. Blank lines and lines starting
/// with '#' are skipped. Unknown keys and malformed values throw ConfigError.
void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin = "config");
void apply_config_file(RunConfig& config, const std::string& path);

/// Single key assignment with the parsing rules of the config file.
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Fields that affect results; out_dir, threads and fixtures are excluded.
void to_json(nlohmann::json& j, const RunConfig& config);

}  // namespace fockdual::cli
