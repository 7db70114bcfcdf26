#include "run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fockdual::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_integer(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"measure", "kernel", "isometry", "embeddings", "duality"};
  return names;
}

void RunConfig::validate() const {
  if (n.empty()) throw ConfigError("n: at least one dimension required");
  for (int k : n) {
    if (k < 2 || k > 6) throw ConfigError("n: each dimension must lie in [2, 6], got " + std::to_string(k));
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("s: must be positive and finite");
  if (p_list.empty()) throw ConfigError("p: at least one exponent required");
  for (double p : p_list) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("p: each exponent must be positive and finite");
  }
  if (degree < 0 || degree > 12) throw ConfigError("degree: must lie in [0, 12]");
  if (radial_nodes < 16 || radial_nodes > 256) throw ConfigError("radial_nodes: must lie in [16, 256]");
  if (mc_samples < 1000) throw ConfigError("mc_samples: must be at least 1000, got " + std::to_string(mc_samples));
  if (!(tol_abs >= 0.0) || !std::isfinite(tol_abs)) throw ConfigError("tol_abs: must be nonnegative and finite");
  if (!(tol_stderr_mult > 0.0) || !std::isfinite(tol_stderr_mult)) {
    throw ConfigError("tol_stderr_mult: must be positive and finite");
  }
  if (suites.empty()) throw ConfigError("suites: at least one suite required");
  const auto& known = suite_names();
  for (const auto& name : suites) {
    if (std::find(known.begin(), known.end(), name) == known.end()) throw ConfigError("suites: unknown suite '" + name + "'");
  }
  if (threads < 1) throw ConfigError("threads: must be at least 1");
  if (out_dir.empty()) throw ConfigError("out_dir: must not be empty");
}

void apply_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "n") {
    c.n.clear();
    for (const auto& item : split_list(value)) c.n.push_back(parse_integer<int>(key, item));
  } else if (key == "s") {
    c.s = parse_real(key, value);
  } else if (key == "p" || key == "p_list") {
    c.p_list.clear();
    for (const auto& item : split_list(value)) c.p_list.push_back(parse_real(key, item));
  } else if (key == "degree") {
    c.degree = parse_integer<int>(key, value);
  } else if (key == "radial_nodes") {
    c.radial_nodes = parse_integer<int>(key, value);
  } else if (key == "mc_samples") {
    c.mc_samples = parse_integer<std::int64_t>(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "tol_abs") {
    c.tol_abs = parse_real(key, value);
  } else if (key == "tol_stderr_mult") {
    c.tol_stderr_mult = parse_real(key, value);
  } else if (key == "suites") {
    c.suites = split_list(value);
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else if (key == "threads") {
    c.threads = parse_integer<int>(key, value);
  } else if (key == "fixtures") {
    c.fixtures = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_config_value(config, trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  apply_config_text(config, os.str(), path);
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"n", c.n},
                     {"s", c.s},
                     {"p", c.p_list},
                     {"degree", c.degree},
                     {"radial_nodes", c.radial_nodes},
                     {"mc_samples", c.mc_samples},
                     {"seed", c.seed},
                     {"tol_abs", c.tol_abs},
                     {"tol_stderr_mult", c.tol_stderr_mult}};
}

}  // namespace fockdual::cli
