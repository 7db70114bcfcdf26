#include "app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "calibration.hpp"
#include "fockdual/check.hpp"
#include "run_config.hpp"
#include "suites.hpp"

#ifndef FOCKDUAL_DEFAULT_FIXTURES
#define FOCKDUAL_DEFAULT_FIXTURES "fixtures/calibration.json"
#endif
#ifndef FOCKDUAL_GIT_HASH
#define FOCKDUAL_GIT_HASH "unknown"
#endif

namespace fockdual::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kCalibrationSeed = 2026;

// Flags are kept as text and parsed with the config-file rules, so both
// sources share one set of diagnostics.
struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> storage;

  void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(key, app.add_option(flag, storage[key], help));
  }

  RunConfig resolve() const {
    RunConfig config;
    if (const char* env = std::getenv("FOCKDUAL_OUT_DIR"); env != nullptr && *env != '\0') config.out_dir = env;
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) apply_config_value(config, key, storage.at(key));
    }
    if (config.fixtures.empty()) config.fixtures = FOCKDUAL_DEFAULT_FIXTURES;
    return config;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

Calibration load_or_empty(const std::string& path) {
  if (!fs::exists(path)) {
    std::cerr << "fockdual: warning: fixtures file '" << path << "' not found; frozen-constant checks will fail\n";
    return {};
  }
  return load_calibration(path);
}

void print_failures(const SuiteResult& r) {
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    std::cout << "  [FAIL] " << c.name << " n=" << c.n << " s=" << c.s << " p=" << c.p << " value=" << c.value
              << " bound=" << c.bound << " ratio=" << c.ratio << " : " << c.detail << "\n";
  }
}

int run_suites(const RunConfig& config, const std::vector<std::string>& suites) {
  const Calibration frozen = load_or_empty(config.fixtures);
  fs::create_directories(config.out_dir);
  bool pass = true;
  for (const auto& name : suites) {
    SuiteResult r;
    try {
      r = run_suite(name, config, frozen);
    } catch (const std::exception& e) {
      r.suite = name;
      Check err;
      err.name = name + ".error";
      err.detail = e.what();
      r.checks.push_back(err);
    }
    write_text(fs::path(config.out_dir) / (name + ".json"), suite_report(r, config).dump(2) + "\n");
    write_text(fs::path(config.out_dir) / (name + ".timing.json"),
               nlohmann::json{{"suite", name}, {"runtime_ms", r.runtime_ms}}.dump(2) + "\n");
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
    std::cout << name << ": " << (r.checks.size() - failed) << "/" << r.checks.size() << " checks passed ("
              << static_cast<long long>(r.runtime_ms) << " ms)\n";
    print_failures(r);
    pass = pass && r.pass();
  }
  return pass ? kExitPass : kExitCheckFailed;
}

std::string utc_date() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

int run_calibrate(RunConfig config, std::uint64_t seed, const std::string& output, bool force) {
  const std::string path = output.empty() ? config.fixtures : output;
  if (fs::exists(path) && !force) {
    std::cerr << "fockdual: fixtures file '" << path << "' exists; pass --force to replace it\n";
    return kExitUsage;
  }
  config.seed = seed;
  std::map<std::string, double> raw;
  for (const auto& name : calibrated_suites()) {
    const SuiteResult r = run_suite(name, config, Calibration{});
    raw.insert(r.raw.begin(), r.raw.end());
    for (const auto& c : r.checks) {
      if (c.name == "duality.error") {
        std::cerr << "fockdual: calibration failed: " << c.detail << "\n";
        return kExitCheckFailed;
      }
    }
    std::cout << name << ": " << r.raw.size() << " raw quantities (" << static_cast<long long>(r.runtime_ms)
              << " ms)\n";
  }
  Calibration cal;
  cal.seed = seed;
  cal.date = utc_date();
  cal.git_hash = FOCKDUAL_GIT_HASH;
  cal.config = config;
  cal.constants = freeze_constants(raw);
  save_calibration(cal, path, force);
  std::cout << "wrote " << cal.constants.size() << " constants to " << path << "\n";
  return kExitPass;
}

std::string csv_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string reports_to_csv(const std::vector<std::string>& paths) {
  std::ostringstream os;
  os << "test,n,s,p,degree,value,stderr,ratio,bound,pass\n";
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read report '" + path + "'");
    const auto j = nlohmann::json::parse(in);
    if (!j.contains("checks")) throw std::runtime_error("'" + path + "' is not a suite report");
    for (const Check& c : j.at("checks").get<std::vector<Check>>()) {
      os << c.name << "," << c.n << "," << csv_number(c.s) << "," << csv_number(c.p) << "," << c.degree << ","
         << csv_number(c.value) << "," << csv_number(c.stderr) << "," << csv_number(c.ratio) << ","
         << csv_number(c.bound) << "," << (c.pass ? "true" : "false") << "\n";
    }
  }
  return os.str();
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Numerical verification of weighted Fock spaces, their null-cone model and the duality pairing"};
  app.name("fockdual");
  app.require_subcommand(1);
  app.fallthrough();

  FlagSet flags;
  app.add_option("--config", flags.config_path, "key = value config file (flags override it)");
  flags.add(app, "--n", "n", "Dimensions, comma separated (default 2,3)");
  flags.add(app, "--s", "s", "Gaussian weight scale (default 1)");
  flags.add(app, "--p", "p", "Exponents, comma separated (default 0.5,1,2)");
  flags.add(app, "--degree", "degree", "Maximal polynomial degree (default 6)");
  flags.add(app, "--radial-nodes", "radial_nodes", "Gauss nodes in the radial variable (default 64)");
  flags.add(app, "--mc-samples", "mc_samples", "Monte Carlo budget per suite item (default 1000000)");
  flags.add(app, "--seed", "seed", "Sampling seed (default 7)");
  flags.add(app, "--tol-abs", "tol_abs", "Absolute tolerance (default 1e-8)");
  flags.add(app, "--tol-stderr-mult", "tol_stderr_mult", "Standard-error multiplier (default 3)");
  flags.add(app, "--suites", "suites", "Suites run by `all`, comma separated");
  flags.add(app, "--out-dir", "out_dir", "Report directory (default $FOCKDUAL_OUT_DIR or ./out)");
  flags.add(app, "--threads", "threads", "Worker threads; results do not depend on it (default 1)");
  flags.add(app, "--fixtures", "fixtures", "Calibration fixtures file");

  std::map<std::string, CLI::App*> verify;
  const std::map<std::string, std::string> verify_help{
      {"measure", "moments, probability normalization, route equivalence, m_n, harmonic residual"},
      {"kernel", "normalization oracle, reproducing property, kernel growth grid, J-series"},
      {"isometry", "two-route norm isometry grid"},
      {"embeddings", "pointwise and embedding constants"},
      {"duality", "representation, boundedness and sandwich experiment"}};
  for (const auto& name : suite_names()) verify[name] = app.add_subcommand("verify-" + name, verify_help.at(name));
  auto* all = app.add_subcommand("all", "Run every configured suite");

  auto* calibrate = app.add_subcommand("calibrate", "Recompute and freeze calibration constants");
  bool force = false;
  std::uint64_t calibration_seed = kCalibrationSeed;
  std::string calibration_out;
  calibrate->add_flag("--force", force, "Replace an existing fixtures file");
  calibrate->add_option("--calibration-seed", calibration_seed, "Seed of the calibration run (default 2026)");
  calibrate->add_option("--output", calibration_out, "Fixtures file to write (default: the --fixtures path)");

  auto* report = app.add_subcommand("report", "Merge suite reports into one CSV");
  std::vector<std::string> report_files;
  std::string report_out;
  report->add_option("reports", report_files, "Suite report files")->required();
  report->add_option("-o,--output", report_out, "CSV file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (report->parsed()) {
      std::vector<std::string> files;
      for (const auto& f : report_files) {
        if (f.size() >= 12 && f.compare(f.size() - 12, 12, ".timing.json") == 0) continue;
        files.push_back(f);
      }
      const std::string csv = reports_to_csv(files);
      if (report_out.empty()) {
        std::cout << csv;
      } else {
        write_text(report_out, csv);
      }
      return kExitPass;
    }

    RunConfig config = flags.resolve();
    config.validate();
    if (calibrate->parsed()) return run_calibrate(config, calibration_seed, calibration_out, force);
    if (all->parsed()) return run_suites(config, config.suites);
    for (const auto& [name, sub] : verify) {
      if (sub->parsed()) return run_suites(config, {name});
    }
  } catch (const ConfigError& e) {
    std::cerr << "fockdual: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fockdual: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fockdual::cli
