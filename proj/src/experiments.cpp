#include "cracklelab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "cracklelab/errors.hpp"
#include "cracklelab/geometric_complex.hpp"
#include "cracklelab/io.hpp"
#include "cracklelab/quadrature.hpp"
#include "cracklelab/rng.hpp"

namespace cracklelab {

namespace {

constexpr double kWilsonZ = 1.959963984540054;

const char* const kConfigKeys[] = {"profile", "policy",     "bandwidth",    "bandwidth_regime",
                                   "knn_k",   "n",          "trials",       "delta",
                                   "seed",    "max_dim",    "radius_scale", "complex",
                                   "cover_radius", "record_wall_time", "input"};

double json_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t json_integer(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

// Number, or the given keyword meaning "unset".
std::optional<double> optional_number(const nlohmann::json& v, const std::string& key,
                                      const char* keyword) {
  if (v.is_null() || (v.is_string() && v.get<std::string>() == keyword)) return std::nullopt;
  if (!v.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number or \"" + keyword + "\"");
  }
  return v.get<double>();
}

[[noreturn]] void rethrow_with_context(std::exception_ptr error, const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const DomainError& e) {
    throw DomainError(context + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(context + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const QuadratureError& e) {
    throw QuadratureError(context + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(context + ": " + e.what());
  }
}

std::string witness_cell(const TrialRecord& r, Eigen::Index k) {
  if (r.witness.size() == 0) return "";
  return format_double(r.witness[k]);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (n_grid.empty()) throw ConfigError("the n grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (!(n_grid[i] >= 0.0) || !std::isfinite(n_grid[i])) {
      throw ConfigError("every n must be finite and >= 0");
    }
    if (i > 0 && !(n_grid[i] > n_grid[i - 1])) throw ConfigError("the n grid must be strictly increasing");
  }
  if (policy == ScalingKind::EmpiricalKNN && knn_k < 1) throw ConfigError("knn policy requires knn_k >= 1");
  if (bandwidth && !(*bandwidth > 0.0 && std::isfinite(*bandwidth))) {
    throw ConfigError("bandwidth must be positive");
  }
  if (!(radius_scale > 0.0) || !std::isfinite(radius_scale)) throw ConfigError("radius_scale must be positive");
  const int m = resolved_max_dim();
  if (m < 1 || m > profile.dimension()) {
    throw ConfigError("max_dim must lie in [1, d] (max_dim=" + std::to_string(m) +
                      ", d=" + std::to_string(profile.dimension()) + ")");
  }
  if (complex == NerveKind::Alpha && !(profile.dimension() == 2 && m == 2)) {
    throw ConfigError("complex \"alpha\" requires d = 2 and max_dim = 2");
  }
  if (cover_radius && !(*cover_radius > 0.0)) throw ConfigError("cover_radius must be positive");
}

double ExperimentConfig::resolved_delta() const { return delta.value_or(default_delta(profile)); }

BandwidthRegime ExperimentConfig::resolved_regime() const {
  if (bandwidth_regime) return *bandwidth_regime;
  if (policy == ScalingKind::LightTail) return BandwidthRegime::LightTail;
  if (policy == ScalingKind::SuperExp) return BandwidthRegime::SuperExp;
  return natural_regime(profile);
}

double ExperimentConfig::bandwidth_for(double n) const {
  if (bandwidth) return *bandwidth;
  return default_bandwidth(profile, n, resolved_regime());
}

ScalingPolicy ExperimentConfig::policy_for(double n) const {
  if (policy == ScalingKind::EmpiricalKNN) return ScalingPolicy::empirical_knn(knn_k);
  return ScalingPolicy{policy, bandwidth_for(n), 0};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) == std::end(kConfigKeys)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (j.contains("profile")) c.profile = profile_from_json(j.at("profile"));
  if (j.contains("policy")) {
    if (!j.at("policy").is_string()) throw ConfigError("config key 'policy' must be a string");
    c.policy = parse_scaling_kind(j.at("policy").get<std::string>());
  }
  if (j.contains("bandwidth")) c.bandwidth = optional_number(j.at("bandwidth"), "bandwidth", "default");
  if (j.contains("bandwidth_regime")) {
    const auto& v = j.at("bandwidth_regime");
    const std::string name = v.is_string() ? v.get<std::string>() : "";
    if (name == "auto") c.bandwidth_regime.reset();
    else if (name == "light_tail") c.bandwidth_regime = BandwidthRegime::LightTail;
    else if (name == "super_exp") c.bandwidth_regime = BandwidthRegime::SuperExp;
    else throw ConfigError("bandwidth_regime must be \"auto\", \"light_tail\" or \"super_exp\"");
  }
  if (j.contains("knn_k")) c.knn_k = static_cast<int>(json_integer(j.at("knn_k"), "knn_k"));
  if (j.contains("n")) {
    const auto& v = j.at("n");
    c.n_grid.clear();
    if (v.is_array()) {
      for (const auto& x : v) c.n_grid.push_back(json_number(x, "n"));
    } else {
      c.n_grid.push_back(json_number(v, "n"));
    }
  }
  if (j.contains("trials")) c.trials = static_cast<int>(json_integer(j.at("trials"), "trials"));
  if (j.contains("delta")) c.delta = optional_number(j.at("delta"), "delta", "default");
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a nonnegative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (j.contains("max_dim")) {
    const auto& v = j.at("max_dim");
    if (v.is_string() && v.get<std::string>() == "default") c.max_dim.reset();
    else c.max_dim = static_cast<int>(json_integer(v, "max_dim"));
  }
  if (j.contains("radius_scale")) c.radius_scale = json_number(j.at("radius_scale"), "radius_scale");
  if (j.contains("complex")) {
    if (!j.at("complex").is_string()) throw ConfigError("config key 'complex' must be a string");
    c.complex = parse_nerve_kind(j.at("complex").get<std::string>());
  }
  if (j.contains("cover_radius")) c.cover_radius = optional_number(j.at("cover_radius"), "cover_radius", "r_bar");
  if (j.contains("record_wall_time")) {
    if (!j.at("record_wall_time").is_boolean()) throw ConfigError("record_wall_time must be true or false");
    c.record_wall_time = j.at("record_wall_time").get<bool>();
  }
  if (j.contains("input")) {
    if (!j.at("input").is_string()) throw ConfigError("config key 'input' must be a string");
    c.input = j.at("input").get<std::string>();
  }
  c.validate();
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["profile"] = profile_to_json(c.profile);
  j["policy"] = std::string(to_string(c.policy));
  j["bandwidth"] = c.bandwidth ? nlohmann::json(*c.bandwidth) : nlohmann::json("default");
  if (!c.bandwidth_regime) j["bandwidth_regime"] = "auto";
  else j["bandwidth_regime"] = *c.bandwidth_regime == BandwidthRegime::LightTail ? "light_tail" : "super_exp";
  j["knn_k"] = c.knn_k;
  j["n"] = c.n_grid;
  j["trials"] = c.trials;
  j["delta"] = c.delta ? nlohmann::json(*c.delta) : nlohmann::json("default");
  j["seed"] = c.seed;
  j["max_dim"] = c.max_dim ? nlohmann::json(*c.max_dim) : nlohmann::json("default");
  j["radius_scale"] = c.radius_scale;
  j["complex"] = std::string(to_string(c.complex));
  j["cover_radius"] = c.cover_radius ? nlohmann::json(*c.cover_radius) : nlohmann::json("r_bar");
  j["record_wall_time"] = c.record_wall_time;
  j["input"] = c.input;
  return j;
}

void apply_override(nlohmann::json& raw, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must have the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  nlohmann::json* node = &raw;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = nlohmann::json::object();
    start = dot + 1;
  }
}

bool TrialRecord::trivial_homology() const {
  if (empty_cloud || betti.empty() || betti[0] != 1) return false;
  return std::all_of(betti.begin() + 1, betti.end(), [](std::int64_t b) { return b == 0; });
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials <= 0) return {0.0, 1.0};
  if (successes < 0 || successes > trials) throw DomainError("wilson_interval: successes must lie in [0, trials]");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

double Proportion::estimate() const {
  return trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
}
double Proportion::lower() const { return wilson_interval(successes, trials).first; }
double Proportion::upper() const { return wilson_interval(successes, trials).second; }

std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t n_index, int trial) {
  const auto global = static_cast<std::uint64_t>(n_index) * static_cast<std::uint64_t>(config.trials) +
                      static_cast<std::uint64_t>(trial);
  return derive_seed(config.seed, global);
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial,
                      const RadialSampler& radial) {
  const auto started = std::chrono::steady_clock::now();
  if (n_index >= config.n_grid.size() || trial < 0 || trial >= config.trials) {
    throw DomainError("trial (" + std::to_string(n_index) + ", " + std::to_string(trial) +
                      ") is outside the configured sweep");
  }
  TrialRecord r;
  r.n = config.n_grid[n_index];
  r.trial = trial;
  r.seed = trial_seed(config, n_index, trial);
  const ScalingPolicy policy = config.policy_for(r.n);
  r.r_n = config.bandwidth_for(r.n);
  const auto seq = radius_sequences(config.profile, r.n, r.r_n, config.resolved_delta());
  r.R_crit = seq.R_crit;
  r.R_bar = seq.R_bar;

  const PointCloud cloud = sample_point_cloud(SampleConfig{r.n, config.profile, r.seed}, radial);
  r.points = cloud.size();
  const int reported = config.resolved_max_dim();
  if (cloud.size() == 0) {
    r.empty_cloud = true;
    r.chain = ChainStatus::Holds;
  } else {
    const Eigen::VectorXd sigma = vertex_radii(policy, config.profile, cloud);
    // The proxy doubles its radii itself; scale σ so its balls match the complex.
    const Eigen::VectorXd balls = config.radius_scale * sigma;
    const auto complex = build_union_nerve(cloud.points, balls, reported, config.complex);
    r.simplices = static_cast<std::int64_t>(complex.total_count());
    auto b = betti(complex);
    b.resize(static_cast<std::size_t>(reported), 0);
    r.betti = std::move(b);
    const auto proxy = contractibility_proxy(cloud.points, balls / 2.0, seq.R_bar);
    r.chain = proxy.status;
    r.outside = static_cast<std::int64_t>(proxy.outside.size());
    r.coverage = proxy.coverage.status;
    r.coverage_h = proxy.coverage.h;
    r.witness = proxy.coverage.witness;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial) {
  const RadialSampler radial(config.profile);
  return run_trial(config, n_index, trial, radial);
}

SummaryTable summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials) {
  SummaryTable table;
  table.reported_betti = config.resolved_max_dim();
  const auto m = static_cast<std::size_t>(table.reported_betti);
  for (const double n : config.n_grid) {
    SummaryRow row;
    row.n = n;
    row.mean_betti.assign(m, 0.0);
    std::int64_t nonempty = 0;
    for (const auto& r : trials) {
      if (r.n != n) continue;
      ++row.trials;
      if (r.empty_cloud) ++row.empty_clouds;
      if (r.chain == ChainStatus::Indeterminate) ++row.indeterminate;
      if (r.chain == ChainStatus::Holds) ++row.chain_holds.successes;
      if (r.outside == 0) ++row.no_outside.successes;
      if (r.trivial_homology()) ++row.trivial.successes;
      if (!r.empty_cloud) {
        ++nonempty;
        for (std::size_t k = 0; k < m; ++k) row.mean_betti[k] += static_cast<double>(r.betti[k]);
        if (m >= 2) {
          ++row.beta1_zero.trials;
          if (r.betti[1] == 0) ++row.beta1_zero.successes;
        }
      }
    }
    row.chain_holds.trials = row.no_outside.trials = row.trivial.trials = row.trials;
    for (auto& b : row.mean_betti) b = nonempty ? b / static_cast<double>(nonempty) : 0.0;
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepResult run_sweep(const ExperimentConfig& config, int jobs) {
  config.validate();
  const RadialSampler radial(config.profile);
  const std::size_t per_n = static_cast<std::size_t>(config.trials);
  const std::size_t total = config.n_grid.size() * per_n;
  std::vector<TrialRecord> records(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t item = next.fetch_add(1);
      if (item >= total) return;
      try {
        records[item] = run_trial(config, item / per_n, static_cast<int>(item % per_n), radial);
      } catch (...) {
        errors[item] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, total); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t item = 0; item < total; ++item) {
    if (errors[item]) {
      rethrow_with_context(errors[item], "trial " + std::to_string(item % per_n) + " at n=" +
                                             format_double(config.n_grid[item / per_n]) + " failed");
    }
  }
  SweepResult out;
  out.summary = summarize(config, records);
  out.trials = std::move(records);
  return out;
}

std::vector<AsymptoticsRow> asymptotics_report(const ExperimentConfig& config) {
  config.validate();
  std::vector<AsymptoticsRow> rows;
  std::exception_ptr first_error;
  for (const double n : config.n_grid) {
    AsymptoticsRow row;
    row.n = n;
    try {
      row.r_n = config.bandwidth_for(n);
      const auto seq = radius_sequences(config.profile, n, row.r_n, config.resolved_delta());
      row.R_crit = seq.R_crit;
      row.R_bar = seq.R_bar;
      const auto diag = validity_diagnostics(config.profile, config.policy_for(n), seq);
      row.noise_killing_ratio = diag.noise_killing_ratio;
      row.nontriviality_ratio = diag.nontriviality_ratio;
      row.tail_scaling = n * tail_mass(config.profile, seq.R_bar) * std::log(n);
    } catch (const std::exception& e) {
      if (!first_error) first_error = std::current_exception();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  const bool all_failed = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
  if (all_failed && first_error) std::rethrow_exception(first_error);
  return rows;
}

ContrastResult crackle_contrast(const ExperimentConfig& config, int jobs) {
  if (config.profile.kind() != TailKind::WeibullType) {
    throw DomainError("crackle contrast needs a light-tailed profile; power-law profiles have no psi machinery");
  }
  ContrastResult out;
  out.valid_policy = config.profile.v() <= 1.0 ? ScalingKind::LightTail : ScalingKind::SuperExp;
  ExperimentConfig valid = config;
  valid.policy = out.valid_policy;
  ExperimentConfig constant = config;
  constant.policy = ScalingKind::Constant;
  // Both arms share the bandwidth sequence of the valid policy.
  if (!config.bandwidth_regime) {
    const auto regime = out.valid_policy == ScalingKind::LightTail ? BandwidthRegime::LightTail
                                                                    : BandwidthRegime::SuperExp;
    valid.bandwidth_regime = regime;
    constant.bandwidth_regime = regime;
  }
  out.constant_arm = run_sweep(constant, jobs);
  out.valid_arm = run_sweep(valid, jobs);
  return out;
}

void write_trials_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<TrialRecord>& trials) {
  const int m = config.resolved_max_dim();
  const int d = config.profile.dimension();
  out << "n,trial,seed,points,empty_cloud";
  for (int k = 0; k < m; ++k) out << ",beta" << k;
  out << ",simplices,chain,chain_holds,outside,coverage,coverage_h";
  for (int k = 0; k < d; ++k) out << ",witness_x" << k + 1;
  out << ",r_n,R_crit,R_bar";
  if (config.record_wall_time) out << ",wall_time";
  out << '\n';
  for (const auto& r : trials) {
    out << format_double(r.n) << ',' << r.trial << ',' << r.seed << ',' << r.points << ','
        << (r.empty_cloud ? 1 : 0);
    for (int k = 0; k < m; ++k) {
      out << ',';
      if (!r.empty_cloud) out << r.betti[static_cast<std::size_t>(k)];
    }
    out << ',' << r.simplices << ',' << to_string(r.chain) << ','
        << (r.chain == ChainStatus::Holds ? 1 : 0) << ',' << r.outside << ','
        << (r.empty_cloud ? "" : std::string(to_string(r.coverage))) << ','
        << (r.empty_cloud ? "" : format_double(r.coverage_h));
    for (int k = 0; k < d; ++k) out << ',' << witness_cell(r, k);
    out << ',' << format_double(r.r_n) << ',' << format_double(r.R_crit) << ','
        << format_double(r.R_bar);
    if (config.record_wall_time) out << ',' << format_double(r.wall_time);
    out << '\n';
  }
}

namespace {

void write_proportion(std::ostream& out, const Proportion& p) {
  if (p.trials == 0) {
    out << ",,,,";
    return;
  }
  out << ',' << p.successes << ',' << format_double(p.estimate()) << ',' << format_double(p.lower())
      << ',' << format_double(p.upper());
}

void proportion_header(std::ostream& out, const char* name) {
  out << ',' << name << ",p_" << name << ",p_" << name << "_lo,p_" << name << "_hi";
}

}  // namespace

void write_summary_csv(std::ostream& out, const SummaryTable& table) {
  out << "n,trials,empty_clouds,indeterminate";
  proportion_header(out, "chain_holds");
  proportion_header(out, "no_outside");
  proportion_header(out, "trivial");
  proportion_header(out, "beta1_zero");
  for (int k = 0; k < table.reported_betti; ++k) out << ",mean_beta" << k;
  out << '\n';
  for (const auto& row : table.rows) {
    out << format_double(row.n) << ',' << row.trials << ',' << row.empty_clouds << ','
        << row.indeterminate;
    write_proportion(out, row.chain_holds);
    write_proportion(out, row.no_outside);
    write_proportion(out, row.trivial);
    write_proportion(out, row.beta1_zero);
    for (const double b : row.mean_betti) out << ',' << format_double(b);
    out << '\n';
  }
}

void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticsRow>& rows) {
  out << "n,r_n,R_crit,R_bar,noise_killing_ratio,nontriviality_ratio,tail_scaling,error\n";
  for (const auto& r : rows) {
    out << format_double(r.n);
    if (r.error.empty()) {
      out << ',' << format_double(r.r_n) << ',' << format_double(r.R_crit) << ','
          << format_double(r.R_bar) << ',' << format_double(r.noise_killing_ratio) << ','
          << format_double(r.nontriviality_ratio) << ',' << format_double(r.tail_scaling) << ",";
    } else {
      std::string message = r.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '"', '\'');
      out << ",,,,,,," << message;
    }
    out << '\n';
  }
}

void write_contrast_csv(std::ostream& out, const ContrastResult& result) {
  out << "n,trials,valid_policy,paired_seeds,mean_beta1_constant,mean_beta1_valid";
  proportion_header(out, "beta1_positive_constant");
  proportion_header(out, "beta1_positive_valid");
  proportion_header(out, "chain_holds_constant");
  proportion_header(out, "chain_holds_valid");
  out << ",constant_beta1_exceeds_valid\n";
  const auto& ct = result.constant_arm.trials;
  const auto& vt = result.valid_arm.trials;
  for (std::size_t row = 0; row < result.constant_arm.summary.rows.size(); ++row) {
    const double n = result.constant_arm.summary.rows[row].n;
    Proportion pos_c, pos_v, chain_c, chain_v;
    double sum_c = 0.0, sum_v = 0.0;
    std::int64_t paired = 1, exceeds = 0, counted = 0;
    for (std::size_t i = 0; i < ct.size(); ++i) {
      if (ct[i].n != n) continue;
      const auto& c = ct[i];
      const auto& v = vt[i];
      if (c.seed != v.seed || c.points != v.points) paired = 0;
      ++chain_c.trials;
      ++chain_v.trials;
      if (c.chain == ChainStatus::Holds) ++chain_c.successes;
      if (v.chain == ChainStatus::Holds) ++chain_v.successes;
      if (c.empty_cloud || c.betti.size() < 2) continue;
      ++counted;
      ++pos_c.trials;
      ++pos_v.trials;
      sum_c += static_cast<double>(c.betti[1]);
      sum_v += static_cast<double>(v.betti[1]);
      if (c.betti[1] > 0) ++pos_c.successes;
      if (v.betti[1] > 0) ++pos_v.successes;
      if (c.betti[1] > v.betti[1]) ++exceeds;
    }
    out << format_double(n) << ',' << chain_c.trials << ',' << to_string(result.valid_policy) << ','
        << paired << ',';
    if (counted) {
      out << format_double(sum_c / static_cast<double>(counted)) << ','
          << format_double(sum_v / static_cast<double>(counted));
    } else {
      out << ',';
    }
    write_proportion(out, pos_c);
    write_proportion(out, pos_v);
    write_proportion(out, chain_c);
    write_proportion(out, chain_v);
    out << ',' << exceeds << '\n';
  }
}

}  // namespace cracklelab
