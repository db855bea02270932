// Command-line entry point: sample | build | betti | cover | experiment |
// asymptotics | contrast.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cracklelab/coverage.hpp"
#include "cracklelab/errors.hpp"
#include "cracklelab/experiments.hpp"
#include "cracklelab/geometric_complex.hpp"
#include "cracklelab/homology.hpp"
#include "cracklelab/io.hpp"
#include "cracklelab/quadrature.hpp"
#include "cracklelab/sampler.hpp"
#include "cracklelab/union_nerve.hpp"

namespace fs = std::filesystem;
using namespace cracklelab;

namespace {

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;
  std::string out;
  std::vector<std::string> overrides;
  std::string input;
};

int resolve_jobs(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CRACKLELAB_JOBS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      throw ConfigError(std::string("CRACKLELAB_JOBS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(value);
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

nlohmann::json load_raw_config(const Invocation& inv) {
  nlohmann::json raw = nlohmann::json::object();
  if (!inv.config_path.empty()) {
    std::ifstream in(inv.config_path);
    if (!in) throw ConfigError("cannot open config file '" + inv.config_path + "'");
    raw = nlohmann::json::parse(in, nullptr, false);
    if (raw.is_discarded()) throw ConfigError("config file '" + inv.config_path + "' is not valid JSON");
  }
  for (const auto& assignment : inv.overrides) apply_override(raw, assignment);
  if (inv.seed_given) raw["seed"] = inv.seed;
  if (!inv.input.empty()) raw["input"] = inv.input;
  return raw;
}

std::ifstream open_input(const ExperimentConfig& config, const char* what) {
  if (config.input.empty()) {
    throw ConfigError(std::string("missing input ") + what + " (positional argument or --set input=<path>)");
  }
  std::ifstream in(config.input);
  if (!in) throw ConfigError("cannot open input file '" + config.input + "'");
  return in;
}

double single_n(const ExperimentConfig& config, const char* subcommand) {
  if (config.n_grid.size() != 1) {
    throw ConfigError(std::string(subcommand) + " takes a single intensity n");
  }
  return config.n_grid.front();
}

// Writes CSV text to --out (with a sidecar) or to stdout (sidecar in cwd).
void emit(const Invocation& inv, const nlohmann::json& resolved, const std::string& text,
          const nlohmann::json& extra = nlohmann::json::object()) {
  nlohmann::json meta = extra;
  meta["subcommand"] = inv.subcommand;
  if (inv.out.empty()) {
    std::cout << text;
    write_sidecar("cracklelab-" + inv.subcommand, resolved, meta);
    return;
  }
  std::ofstream out(inv.out);
  if (!out) throw ResourceError("cannot write '" + inv.out + "'");
  out << text;
  write_sidecar(inv.out, resolved, meta);
}

void emit_file(const fs::path& dir, const std::string& name, const nlohmann::json& resolved,
               const std::string& text, const std::string& subcommand) {
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write '" + path.string() + "'");
  out << text;
  write_sidecar(path, resolved, {{"subcommand", subcommand}});
}

void prepare_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ResourceError("cannot create output directory '" + out + "': " + ec.message());
}

int run(const Invocation& inv) {
  const nlohmann::json raw = load_raw_config(inv);
  const ExperimentConfig config = config_from_json(raw);
  const nlohmann::json resolved = config_to_json(config);
  std::ostringstream text;

  if (inv.subcommand == "sample") {
    const double n = single_n(config, "sample");
    const auto cloud = sample_point_cloud(SampleConfig{n, config.profile, config.seed});
    write_points_csv(text, cloud.points);
    emit(inv, resolved, text.str(), {{"points", cloud.size()}});
  } else if (inv.subcommand == "build") {
    auto in = open_input(config, "points CSV");
    const Eigen::MatrixXd points = read_points_csv(in);
    if (points.rows() != config.profile.dimension()) {
      throw ConfigError("points have dimension " + std::to_string(points.rows()) +
                        " but the profile has d=" + std::to_string(config.profile.dimension()));
    }
    const double n = single_n(config, "build");
    SimplicialComplex complex(static_cast<std::size_t>(points.cols()));
    if (points.cols() > 0) {
      const PointCloud cloud{points, SampleConfig{n, config.profile, config.seed}};
      const Eigen::VectorXd radii = config.radius_scale * vertex_radii(config.policy_for(n), config.profile, cloud);
      complex = build_union_nerve(points, radii, config.resolved_max_dim(), config.complex);
    }
    complex.write_text(text);
    emit(inv, resolved, text.str(), {{"simplices", complex.total_count()}});
  } else if (inv.subcommand == "betti") {
    auto in = open_input(config, "complex file");
    const auto complex = SimplicialComplex::read_text(in);
    if (!complex.is_downward_closed()) throw ConfigError("input complex is not downward closed");
    auto b = betti(complex);
    if (b.empty()) b.push_back(0);
    for (std::size_t k = 0; k < b.size(); ++k) text << (k ? ",beta" : "beta") << k;
    text << '\n' << format_betti(b) << '\n';
    emit(inv, resolved, text.str());
  } else if (inv.subcommand == "cover") {
    auto in = open_input(config, "points CSV");
    const Eigen::MatrixXd points = read_points_csv(in);
    if (points.rows() != config.profile.dimension()) {
      throw ConfigError("points have dimension " + std::to_string(points.rows()) +
                        " but the profile has d=" + std::to_string(config.profile.dimension()));
    }
    const double n = single_n(config, "cover");
    double R = 0.0;
    if (config.cover_radius) {
      R = *config.cover_radius;
    } else {
      R = radius_sequences(config.profile, n, config.bandwidth_for(n), config.resolved_delta()).R_bar;
    }
    Eigen::VectorXd sigma(points.cols());
    if (points.cols() > 0) {
      const PointCloud cloud{points, SampleConfig{n, config.profile, config.seed}};
      sigma = vertex_radii(config.policy_for(n), config.profile, cloud);
    }
    const auto proxy = contractibility_proxy(points, config.radius_scale * sigma / 2.0, R);
    const int d = static_cast<int>(points.rows());
    text << "R,coverage,h,grid_points";
    for (int k = 0; k < d; ++k) text << ",witness_x" << k + 1;
    text << ",outside,chain\n";
    text << format_double(R) << ',' << (proxy.empty_cloud ? "" : std::string(to_string(proxy.coverage.status)))
         << ',' << (proxy.empty_cloud ? "" : format_double(proxy.coverage.h)) << ','
         << proxy.coverage.grid_points;
    for (int k = 0; k < d; ++k) {
      text << ',';
      if (proxy.coverage.witness.size()) text << format_double(proxy.coverage.witness[k]);
    }
    text << ',' << proxy.outside.size() << ',' << to_string(proxy.status) << '\n';
    emit(inv, resolved, text.str());
  } else if (inv.subcommand == "experiment") {
    const auto result = run_sweep(config, resolve_jobs(inv.jobs));
    std::ostringstream trials, summary;
    write_trials_csv(trials, config, result.trials);
    write_summary_csv(summary, result.summary);
    if (inv.out.empty()) {
      emit(inv, resolved, summary.str());
    } else {
      prepare_dir(inv.out);
      emit_file(inv.out, "trials.csv", resolved, trials.str(), inv.subcommand);
      emit_file(inv.out, "summary.csv", resolved, summary.str(), inv.subcommand);
    }
  } else if (inv.subcommand == "asymptotics") {
    write_asymptotics_csv(text, asymptotics_report(config));
    if (inv.out.empty()) {
      emit(inv, resolved, text.str());
    } else {
      prepare_dir(inv.out);
      emit_file(inv.out, "asymptotics.csv", resolved, text.str(), inv.subcommand);
    }
  } else if (inv.subcommand == "contrast") {
    const auto result = crackle_contrast(config, resolve_jobs(inv.jobs));
    write_contrast_csv(text, result);
    if (inv.out.empty()) {
      emit(inv, resolved, text.str());
    } else {
      prepare_dir(inv.out);
      emit_file(inv.out, "contrast.csv", resolved, text.str(), inv.subcommand);
      for (const auto* arm : {&result.constant_arm, &result.valid_arm}) {
        const std::string suffix = arm == &result.constant_arm ? "constant" : "valid";
        ExperimentConfig arm_config = config;
        arm_config.policy = arm == &result.constant_arm ? ScalingKind::Constant : result.valid_policy;
        std::ostringstream trials, summary;
        write_trials_csv(trials, arm_config, arm->trials);
        write_summary_csv(summary, arm->summary);
        emit_file(inv.out, "trials_" + suffix + ".csv", resolved, trials.str(), inv.subcommand);
        emit_file(inv.out, "summary_" + suffix + ".csv", resolved, summary.str(), inv.subcommand);
      }
    }
  }
  return 0;
}

std::string one_line(std::string message) {
  for (auto& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return message;
}

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << "cracklelab: " << kind << ": " << one_line(message) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-bandwidth random geometric complexes: sampling, complexes, Betti numbers, coverage and Monte Carlo sweeps."};
  app.name("cracklelab");
  app.require_subcommand(1);
  Invocation inv;

  struct Command {
    const char* name;
    const char* help;
    const char* input_help;
  };
  const Command commands[] = {
      {"sample", "Draw a Poisson point cloud and write it as CSV (x1..xd)", nullptr},
      {"build", "Build the complex of a points CSV (one simplex per line)", "Points CSV"},
      {"betti", "Betti numbers over GF(2) of a complex file", "Complex text file"},
      {"cover", "Certify coverage of B(0,R) and the containment chain for a points CSV", "Points CSV"},
      {"experiment", "Monte Carlo sweep over the n grid (trials.csv, summary.csv)", nullptr},
      {"asymptotics", "Formula-only table of radii and validity ratios (asymptotics.csv)", nullptr},
      {"contrast", "Constant versus valid scaling on identical seeds (contrast.csv)", nullptr},
  };
  for (const auto& command : commands) {
    CLI::App* sub = app.add_subcommand(command.name, command.help);
    sub->add_option("--config", inv.config_path, "JSON config file");
    sub->add_option("--seed", inv.seed, "Master seed (overrides the config)")
        ->each([&inv](const std::string&) { inv.seed_given = true; });
    sub->add_option("--jobs", inv.jobs, "Worker threads (default: CRACKLELAB_JOBS, then all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", inv.out, "Output file, or directory for experiment/asymptotics/contrast");
    sub->add_option("--set", inv.overrides, "Config override key=value (repeatable, dotted keys allowed)")
        ->allow_extra_args(false);
    if (command.input_help) sub->add_option("input", inv.input, command.input_help);
    sub->callback([&inv, name = std::string(command.name)] { inv.subcommand = name; });
  }
  app.footer("Options of every subcommand: --config <path>, --seed <u64>, --jobs <int>, --out <path>,\n"
             "--set key=value (repeatable). Run 'cracklelab <subcommand> --help' for details.\n"
             "Environment: CRACKLELAB_JOBS is the fallback for --jobs.\n"
             "Exit status: 0 success, 1 domain or validation error, 2 resource error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage_error", e.what(), 1);
  }

  try {
    return run(inv);
  } catch (const ResourceError& e) {
    return fail("resource_error", e.what(), 2);
  } catch (const std::bad_alloc&) {
    return fail("resource_error", "out of memory", 2);
  } catch (const DomainError& e) {
    return fail("domain_error", e.what(), 1);
  } catch (const ConfigError& e) {
    return fail("config_error", e.what(), 1);
  } catch (const QuadratureError& e) {
    return fail("quadrature_error", e.what(), 1);
  } catch (const nlohmann::json::exception& e) {
    return fail("config_error", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("error", e.what(), 1);
  }
}
