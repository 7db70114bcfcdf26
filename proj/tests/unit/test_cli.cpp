#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "calibration.hpp"
#include "run_config.hpp"
#include "suites.hpp"

using namespace fockdual::cli;
namespace fs = std::filesystem;

namespace {

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "fockdual");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fockdual_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config text parsing") {
  RunConfig c;
  apply_config_text(c, "# desk run\nn = 2\np = 0.5, 1\nmc_samples = 20000\nsuites = measure,kernel\n");
  CHECK(c.n == std::vector<int>{2});
  CHECK(c.p_list == std::vector<double>{0.5, 1.0});
  CHECK(c.mc_samples == 20000);
  CHECK(c.suites == std::vector<std::string>{"measure", "kernel"});
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(apply_config_text(c, "unknown_key = 3\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "n = two\n"), ConfigError);
}

TEST_CASE("config validation") {
  auto invalid = [](const std::string& key, const std::string& value) {
    RunConfig c;
    apply_config_value(c, key, value);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  invalid("n", "1");
  invalid("p", "0");
  invalid("p", "-1");
  invalid("degree", "13");
  invalid("radial_nodes", "8");
  invalid("mc_samples", "10");
  invalid("suites", "measure,nope");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_args({"verify-measure", "--mc-samples", "0"}) == kExitUsage);
  CHECK(run_args({}) == kExitUsage);
  CHECK(run_args({"no-such-command"}) == kExitUsage);
  CHECK(run_args({"verify-measure", "--n", "x"}) == kExitUsage);
  CHECK(run_args({"--config", "/nonexistent/fockdual.cfg", "verify-measure"}) == kExitUsage);
}

TEST_CASE("flags override the config file") {
  const fs::path dir = temp_dir("precedence");
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "n = 3\nmc_samples = 5000\nout_dir = " << (dir / "from_file").string() << "\n";
  RunConfig c;
  apply_config_file(c, cfg.string());
  CHECK(c.n == std::vector<int>{3});
  apply_config_value(c, "n", "2");
  CHECK(c.n == std::vector<int>{2});
  CHECK(c.mc_samples == 5000);
}

TEST_CASE("report merges suites into CSV") {
  const fs::path dir = temp_dir("report");
  const std::string out = (dir / "out").string();
  const int code = run_args({"verify-embeddings", "--n", "2", "--p", "0.5", "--mc-samples", "2000", "--radial-nodes",
                             "16", "--fixtures", (dir / "none.json").string(), "--out-dir", out});
  // No fixtures: frozen-constant checks fail, reports are still written.
  CHECK(code == kExitCheckFailed);
  REQUIRE(fs::exists(fs::path(out) / "embeddings.json"));
  REQUIRE(fs::exists(fs::path(out) / "embeddings.timing.json"));
  const std::string csv = reports_to_csv({(fs::path(out) / "embeddings.json").string()});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "test,n,s,p,degree,value,stderr,ratio,bound,pass");
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK((row.rfind("pointwise.max", 0) == 0 || row.rfind("embedding.max", 0) == 0));
  }
  CHECK(rows == 2);
  CHECK_THROWS(reports_to_csv({(fs::path(out) / "embeddings.timing.json").string()}));
}

TEST_CASE("calibration round trip") {
  const fs::path dir = temp_dir("calibration");
  Calibration cal;
  cal.seed = 3;
  cal.date = "2026-01-01";
  cal.git_hash = "abc";
  cal.config = nlohmann::json{{"n", {2}}};
  cal.constants = {{constant_key("c_pairing", 2, 0.5), 1.5}};
  const std::string path = (dir / "cal.json").string();
  save_calibration(cal, path, false);
  CHECK_THROWS(save_calibration(cal, path, false));
  CHECK_NOTHROW(save_calibration(cal, path, true));
  const Calibration back = load_calibration(path);
  CHECK(back.seed == 3);
  CHECK(back.get("c_pairing[n=2,p=0.5]") == 1.5);
  CHECK_FALSE(back.get("c_pairing[n=3,p=0.5]").has_value());
}

TEST_CASE("frozen constants carry the safety margins") {
  const auto k = freeze_constants({{"pairing_max[n=2,p=1]", 1.0},
                                   {"sandwich_max[n=2,p=1]", 0.9},
                                   {"sandwich_min[n=2,p=1]", 0.5},
                                   {"growth_max[n=2,p=1]", 0.25}});
  CHECK(k.at("c_pairing[n=2,p=1]") == doctest::Approx(2.0));
  CHECK(k.at("c_sandwich[n=2,p=1]") == doctest::Approx(4.0));
  CHECK(k.at("c_growth[n=2,p=1]") == doctest::Approx(0.5));
}
