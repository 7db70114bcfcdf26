#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace fockdual::cli {

/// Frozen empirical constants standing in for "there exists C" statements,
/// stamped with the run that produced them.
struct Calibration {
  std::uint64_t seed = 0;
  std::string date;
  std::string git_hash;
  nlohmann::json config;
  std::map<std::string, double> constants;

  std::optional<double> get(const std::string& key) const;
};

/// "<what>[n=<n>,p=<p>]" with p in shortest round-trip form.
std::string constant_key(std::string_view what, int n, double p);

/// Reads a fixtures file. Throws std::runtime_error on unreadable or malformed files.
Calibration load_calibration(const std::string& path);

/// Writes the fixtures file; refuses to replace an existing file unless force is set.
void save_calibration(const Calibration& calibration, const std::string& path, bool force);

void to_json(nlohmann::json& j, const Calibration& c);
void from_json(const nlohmann::json& j, Calibration& c);

}  // namespace fockdual::cli
