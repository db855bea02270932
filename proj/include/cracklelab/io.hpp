#pragma once

// CSV and sidecar helpers shared by the experiment writers and the CLI.

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>

#include "cracklelab/tail_profile.hpp"

namespace cracklelab {

/// Shortest round-trip-safe rendering used in every CSV cell ("%.17g").
std::string format_double(double value);

/// Header x1..xd, one row per point.
void write_points_csv(std::ostream& out, const Eigen::MatrixXd& points);
Eigen::MatrixXd read_points_csv(std::istream& in);

nlohmann::json profile_to_json(const TailProfile& profile);
/// Accepts {kind, v, tau, alpha, d}; the normalizing constant is recomputed.
TailProfile profile_from_json(const nlohmann::json& j);

/// FNV-1a over the compact dump of `config`, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

std::string code_version();

/// Writes `<path>.meta.json` with the resolved config, its hash, the RNG
/// version and the code version, merged with `extra`.
void write_sidecar(const std::filesystem::path& path, const nlohmann::json& config,
                   const nlohmann::json& extra = nlohmann::json::object());

}  // namespace cracklelab
