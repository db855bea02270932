#include "cracklelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cracklelab/errors.hpp"
#include "cracklelab/rng.hpp"

#ifndef CRACKLELAB_VERSION
#define CRACKLELAB_VERSION "unknown"
#endif

namespace cracklelab {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_points_csv(std::ostream& out, const Eigen::MatrixXd& points) {
  for (Eigen::Index k = 0; k < points.rows(); ++k) out << (k ? ",x" : "x") << k + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    for (Eigen::Index k = 0; k < points.rows(); ++k) {
      if (k) out << ',';
      out << format_double(points(k, i));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("points CSV is empty (expected header x1..xd)");
  int d = 0;
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
      if (cell != "x" + std::to_string(d + 1)) {
        throw ConfigError("points CSV header must read x1..xd, found '" + cell + "'");
      }
      ++d;
    }
  }
  if (d < 1) throw ConfigError("points CSV header names no coordinates");
  std::vector<double> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    int count = 0;
    while (std::getline(fields, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty() || !std::isfinite(v)) {
        throw ConfigError("points CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
      values.push_back(v);
      ++count;
    }
    if (count != d) {
      throw ConfigError("points CSV row " + std::to_string(row) + " has " + std::to_string(count) +
                        " fields, expected " + std::to_string(d));
    }
  }
  const auto n = static_cast<Eigen::Index>(values.size() / static_cast<std::size_t>(d));
  return Eigen::Map<Eigen::MatrixXd>(values.data(), d, n);
}

nlohmann::json profile_to_json(const TailProfile& profile) {
  nlohmann::json j;
  if (profile.kind() == TailKind::WeibullType) {
    j["kind"] = "weibull";
    j["v"] = profile.v();
    j["tau"] = profile.tau();
    j["alpha"] = nullptr;
  } else {
    j["kind"] = "power_law";
    j["v"] = nullptr;
    j["tau"] = nullptr;
    j["alpha"] = profile.alpha();
  }
  j["d"] = profile.dimension();
  return j;
}

TailProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("profile must be a JSON object {kind, v, tau, alpha, d}");
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "v" && key != "tau" && key != "alpha" && key != "d") {
      throw ConfigError("unknown profile key '" + key + "'");
    }
  }
  auto number = [&](const char* key, double fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("profile.") + key + " must be a number");
    return j.at(key).get<double>();
  };
  const std::string kind = j.value("kind", std::string("weibull"));
  const double d_value = number("d", 2.0);
  if (d_value != std::floor(d_value) || d_value < 1 || d_value > 16) {
    throw ConfigError("profile.d must be an integer in [1, 16]");
  }
  const int d = static_cast<int>(d_value);
  if (kind == "weibull") return TailProfile::weibull(number("v", 1.0), number("tau", 1.0), d);
  if (kind == "power_law") {
    if (!j.contains("alpha") || j.at("alpha").is_null()) throw ConfigError("power_law profile requires alpha");
    return TailProfile::power_law(number("alpha", 0.0), d);
  }
  throw ConfigError("unknown profile kind '" + kind + "' (expected weibull or power_law)");
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

std::string code_version() { return CRACKLELAB_VERSION; }

void write_sidecar(const std::filesystem::path& path, const nlohmann::json& config,
                   const nlohmann::json& extra) {
  nlohmann::json meta = extra;
  meta["config"] = config;
  meta["config_hash"] = config_hash(config);
  meta["rng_version"] = std::string(kRngVersion);
  meta["code_version"] = code_version();
  const auto target = path.string() + ".meta.json";
  std::ofstream out(target);
  if (!out) throw ResourceError("cannot write " + target);
  out << meta.dump(2) << '\n';
}

}  // namespace cracklelab
