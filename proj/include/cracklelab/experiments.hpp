#pragma once

// Seeded Monte Carlo sweeps over the intensity n and pure-formula
// asymptotic tables.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cracklelab/coverage.hpp"
#include "cracklelab/homology.hpp"
#include "cracklelab/sampler.hpp"
#include "cracklelab/scaling_policy.hpp"
#include "cracklelab/tail_profile.hpp"
#include "cracklelab/union_nerve.hpp"

namespace cracklelab {

struct ExperimentConfig {
  TailProfile profile = TailProfile::weibull(1.0, 1.0, 2);
  ScalingKind policy = ScalingKind::LightTail;
  std::optional<double> bandwidth;               // unset: default_bandwidth(n)
  std::optional<BandwidthRegime> bandwidth_regime;  // unset: follows the policy
  int knn_k = 0;
  std::vector<double> n_grid{1000.0};
  int trials = 1;
  std::optional<double> delta;  // unset: default_delta
  std::uint64_t seed = 0;
  std::optional<int> max_dim;  // unset: d
  double radius_scale = 2.0;   // balls of radius radius_scale·σ(x)
  NerveKind complex = NerveKind::Auto;
  std::optional<double> cover_radius;  // cover subcommand; unset: R̄_n
  bool record_wall_time = true;
  std::string input;

  /// Throws ConfigError (or DomainError) on invalid combinations.
  void validate() const;

  int resolved_max_dim() const { return max_dim.value_or(profile.dimension()); }
  double resolved_delta() const;
  BandwidthRegime resolved_regime() const;
  double bandwidth_for(double n) const;
  ScalingPolicy policy_for(double n) const;
};

/// Parses the JSON config; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
/// Applies a `key=value` override to a raw config object. Dotted keys reach
/// into nested objects (profile.v=2); the value is parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(nlohmann::json& raw, const std::string& assignment);

struct TrialRecord {
  double n = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::int64_t points = 0;
  bool empty_cloud = false;
  BettiVector betti;  // β_0..β_{max_dim−1}; empty for an empty cloud
  std::int64_t simplices = 0;
  ChainStatus chain = ChainStatus::Indeterminate;
  std::int64_t outside = 0;
  CoverageStatus coverage = CoverageStatus::Unknown;
  double coverage_h = 0.0;
  Eigen::VectorXd witness;
  double r_n = 0.0;
  double R_crit = 0.0;
  double R_bar = 0.0;
  double wall_time = 0.0;

  bool trivial_homology() const;  // β_0 = 1 and β_k = 0 for k ≥ 1
};

struct Proportion {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double estimate() const;
  double lower() const;
  double upper() const;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials);

struct SummaryRow {
  double n = 0.0;
  std::int64_t trials = 0;
  std::int64_t empty_clouds = 0;
  std::int64_t indeterminate = 0;
  Proportion chain_holds;
  Proportion no_outside;
  Proportion trivial;
  Proportion beta1_zero;  // trials == 0 when β_1 is not reported
  std::vector<double> mean_betti;
};

struct SummaryTable {
  int reported_betti = 0;
  std::vector<SummaryRow> rows;
};

struct SweepResult {
  std::vector<TrialRecord> trials;  // ordered by (n, trial)
  SummaryTable summary;
};

/// Child seed of trial `trial` at grid position `n_index`.
std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t n_index, int trial);

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial);
TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial,
                      const RadialSampler& radial);

/// Runs every (n, trial) pair on `jobs` workers; output is schedule-independent.
SweepResult run_sweep(const ExperimentConfig& config, int jobs = 1);
SummaryTable summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials);

struct AsymptoticsRow {
  double n = 0.0;
  double r_n = 0.0;
  double R_crit = 0.0;
  double R_bar = 0.0;
  double noise_killing_ratio = 0.0;
  double nontriviality_ratio = 0.0;
  double tail_scaling = 0.0;  // n·tail_mass(R̄)·log n
  std::string error;          // nonempty when the row failed
};

/// Throws the first error when every row fails.
std::vector<AsymptoticsRow> asymptotics_report(const ExperimentConfig& config);

struct ContrastResult {
  ScalingKind valid_policy = ScalingKind::LightTail;
  SweepResult constant_arm;
  SweepResult valid_arm;
};

/// Same seeds and bandwidths under Constant and under the profile's valid
/// policy (LightTail for v ≤ 1, SuperExp for v > 1).
ContrastResult crackle_contrast(const ExperimentConfig& config, int jobs = 1);

void write_trials_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<TrialRecord>& trials);
void write_summary_csv(std::ostream& out, const SummaryTable& table);
void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticsRow>& rows);
void write_contrast_csv(std::ostream& out, const ContrastResult& result);

}  // namespace cracklelab
