#include "calibration.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fockdual::cli {

std::optional<double> Calibration::get(const std::string& key) const {
  const auto it = constants.find(key);
  if (it == constants.end()) return std::nullopt;
  return it->second;
}

std::string constant_key(std::string_view what, int n, double p) {
  std::ostringstream os;
  os << what << "[n=" << n << ",p=" << p << "]";
  return os.str();
}

void to_json(nlohmann::json& j, const Calibration& c) {
  j = nlohmann::json{{"provenance", {{"seed", c.seed}, {"date", c.date}, {"git_hash", c.git_hash}, {"config", c.config}}},
                     {"constants", c.constants}};
}

void from_json(const nlohmann::json& j, Calibration& c) {
  const auto& prov = j.at("provenance");
  c.seed = prov.at("seed").get<std::uint64_t>();
  c.date = prov.at("date").get<std::string>();
  c.git_hash = prov.at("git_hash").get<std::string>();
  c.config = prov.value("config", nlohmann::json::object());
  c.constants = j.at("constants").get<std::map<std::string, double>>();
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read fixtures file '" + path + "'");
  try {
    return nlohmann::json::parse(in).get<Calibration>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed fixtures file '" + path + "': " + e.what());
  }
}

void save_calibration(const Calibration& calibration, const std::string& path, bool force) {
  namespace fs = std::filesystem;
  if (fs::exists(path) && !force) {
    throw std::runtime_error("fixtures file '" + path + "' exists; pass --force to replace it");
  }
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write fixtures file '" + path + "'");
  out << nlohmann::json(calibration).dump(2) << "\n";
}

}  // namespace fockdual::cli
