// Acceptance run at the default desk configuration: one PASS/FAIL line per
// criterion, exit status 1 when any criterion fails.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "calibration.hpp"
#include "run_config.hpp"
#include "suites.hpp"

namespace {

namespace fs = std::filesystem;
using fockdual::Check;
using namespace fockdual::cli;

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

struct Criterion {
  int id;
  std::string title;
  std::string suite;
  std::vector<std::string> prefixes;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "moment identity", "measure", {"moment."}},
      {2, "probability normalization", "measure", {"probability"}},
      {3, "route equivalence and m_n", "measure", {"route[", "m_n."}},
      {4, "kernel normalization and reproducing property", "kernel", {"kernel."}},
      {5, "two-route isometry", "isometry", {"isometry["}},
      {6, "kernel growth bound", "kernel", {"kernel_p."}},
      {7, "J-series", "kernel", {"jseries."}},
      {8, "embedding and pointwise bounds", "embeddings", {"pointwise.", "embedding."}},
      {9, "duality", "duality", {"duality."}},
      {10, "harmonic residual", "measure", {"harmonic."}},
  };
  return list;
}

struct Tally {
  std::size_t total = 0, failed = 0;
  double worst = 0.0;
  std::string worst_name;
  std::vector<std::string> failures;
};

void print_line(int id, const std::string& title, bool pass, const std::string& detail) {
  std::cout << "criterion " << std::setw(2) << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  ("
            << detail << ")" << std::endl;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fockdual");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

// Determinism: `all` twice with the same config; reports must match byte for byte.
bool determinism(std::string& detail) {
  const fs::path root = fs::temp_directory_path() / "fockdual_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::string> common{"--n", "2,3", "--p", "0.5,1,2", "--mc-samples", "20000", "--radial-nodes",
                                        "32", "--fixtures", FOCKDUAL_FIXTURES};
  std::vector<int> codes;
  for (const char* run_dir : {"a", "b"}) {
    std::vector<std::string> args = common;
    args.insert(args.end(), {"--out-dir", (root / run_dir).string(), "all"});
    codes.push_back(run_cli(args));
  }
  if (codes[0] == kExitUsage || codes[0] != codes[1]) {
    detail = "exit codes " + std::to_string(codes[0]) + " and " + std::to_string(codes[1]);
    return false;
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const std::string name = entry.path().filename().string();
    if (name.find(".timing.") != std::string::npos) continue;
    const fs::path other = root / "b" / name;
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      detail = name + " differs between runs";
      return false;
    }
    ++compared;
  }
  if (compared != suite_names().size()) {
    detail = "expected " + std::to_string(suite_names().size()) + " reports, found " + std::to_string(compared);
    return false;
  }
  detail = std::to_string(compared) + " reports byte-identical across two runs";
  return true;
}

}  // namespace

int main() {
  RunConfig config;
  config.fixtures = FOCKDUAL_FIXTURES;
  config.validate();
  const Calibration frozen = load_calibration(config.fixtures);

  std::map<std::string, SuiteResult> results;
  for (const auto& name : suite_names()) {
    try {
      results[name] = run_suite(name, config, frozen);
    } catch (const std::exception& e) {
      SuiteResult r;
      r.suite = name;
      Check err;
      err.name = name + ".error";
      err.detail = e.what();
      r.checks.push_back(err);
      results[name] = r;
    }
    std::cout << "suite " << name << ": " << results[name].checks.size() << " checks, "
              << static_cast<long long>(results[name].runtime_ms) << " ms" << std::endl;
  }

  bool all_pass = true;
  std::map<const Check*, bool> claimed;
  for (const auto& cr : criteria()) {
    Tally t;
    for (const auto& c : results[cr.suite].checks) {
      const bool mine = std::any_of(cr.prefixes.begin(), cr.prefixes.end(),
                                    [&](const std::string& p) { return starts_with(c.name, p); });
      if (!mine) continue;
      claimed[&c] = true;
      ++t.total;
      if (!c.pass) {
        ++t.failed;
        std::ostringstream os;
        os << c.name << " n=" << c.n << " p=" << c.p << " value=" << c.value << " bound=" << c.bound;
        t.failures.push_back(os.str());
      }
      if (c.ratio > t.worst) {
        t.worst = c.ratio;
        t.worst_name = c.name;
      }
    }
    const bool pass = t.total > 0 && t.failed == 0;
    all_pass = all_pass && pass;
    std::ostringstream detail;
    detail << (t.total - t.failed) << "/" << t.total << " checks, largest ratio " << t.worst << " at " << t.worst_name;
    print_line(cr.id, cr.title, pass, detail.str());
    for (const auto& f : t.failures) std::cout << "    failed: " << f << std::endl;
  }

  // Every check must belong to some criterion.
  for (const auto& [name, r] : results) {
    for (const auto& c : r.checks) {
      if (claimed.count(&c) == 0) {
        std::cout << "unassigned check " << name << "/" << c.name << (c.pass ? " (pass)" : " (FAIL)") << std::endl;
        all_pass = all_pass && c.pass;
      }
    }
  }

  std::string detail;
  const bool det = determinism(detail);
  all_pass = all_pass && det;
  print_line(11, "determinism", det, detail);

  std::cout << (all_pass ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
  return all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
