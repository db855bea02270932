#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cracklelab/errors.hpp"
#include "cracklelab/experiments.hpp"
#include "cracklelab/io.hpp"
#include "cracklelab/sampler.hpp"

using namespace cracklelab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_grid = {100.0, 300.0};
  c.trials = 4;
  c.seed = 20240601;
  c.record_wall_time = false;
  return c;
}

std::string trials_csv(const ExperimentConfig& c, const std::vector<TrialRecord>& t) {
  std::ostringstream out;
  write_trials_csv(out, c, t);
  return out.str();
}

}  // namespace

TEST(Wilson, Intervals) {
  const auto [lo1, hi1] = wilson_interval(1, 1);
  EXPECT_NEAR(lo1, 0.2065493143772375, 1e-12);
  EXPECT_EQ(hi1, 1.0);
  const auto [lo0, hi0] = wilson_interval(0, 50);
  EXPECT_EQ(lo0, 0.0);
  EXPECT_NEAR(hi0, 0.0713476, 1e-6);
  const auto [lo, hi] = wilson_interval(25, 50);
  EXPECT_NEAR(lo + hi, 1.0, 1e-12);
  EXPECT_NEAR(hi - lo, 2 * 0.1333, 1e-3);
  EXPECT_THROW(wilson_interval(3, 2), DomainError);
}

TEST(Config, ParsesOverridesAndRejectsUnknownKeys) {
  auto raw = nlohmann::json::parse(R"({"profile":{"kind":"weibull","v":1,"tau":1,"d":2},
                                       "policy":"light_tail","n":[100,1000],"trials":3,"seed":9})");
  apply_override(raw, "profile.v=2");
  apply_override(raw, "policy=super_exp");
  apply_override(raw, "complex=cech");
  const auto c = config_from_json(raw);
  EXPECT_EQ(c.profile.v(), 2.0);
  EXPECT_EQ(c.policy, ScalingKind::SuperExp);
  EXPECT_EQ(c.complex, NerveKind::Cech);
  EXPECT_EQ(c.n_grid, (std::vector<double>{100.0, 1000.0}));
  EXPECT_EQ(config_from_json(config_to_json(c)).n_grid, c.n_grid);
  EXPECT_EQ(config_to_json(config_from_json(config_to_json(c))), config_to_json(c));

  raw["colour"] = "red";
  EXPECT_THROW(config_from_json(raw), ConfigError);
  nlohmann::json bad = {{"trials", 0}};
  EXPECT_THROW(config_from_json(bad), ConfigError);
  EXPECT_THROW(apply_override(bad, "novalue"), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"n", {1000, 100}}}), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"complex", "alpha"}, {"max_dim", 1}}), ConfigError);
}

TEST(Sweep, DeterministicAndJobIndependent) {
  const auto c = small_config();
  const auto a = run_sweep(c, 1);
  const auto b = run_sweep(c, 3);
  ASSERT_EQ(a.trials.size(), 8u);
  EXPECT_EQ(trials_csv(c, a.trials), trials_csv(c, b.trials));
  std::ostringstream sa, sb;
  write_summary_csv(sa, a.summary);
  write_summary_csv(sb, b.summary);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(trials_csv(c, a.trials).find("wall_time"), std::string::npos);
}

TEST(Sweep, RerunningOneTrialReproducesItsRecord) {
  const auto c = small_config();
  const auto sweep = run_sweep(c, 2);
  const auto again = run_trial(c, 1, 2);
  const auto& stored = sweep.trials[c.trials + 2];
  EXPECT_EQ(trials_csv(c, {again}), trials_csv(c, {stored}));
  // The seed alone regenerates the cloud.
  const auto cloud = sample_point_cloud(SampleConfig{c.n_grid[1], c.profile, stored.seed});
  EXPECT_EQ(cloud.size(), stored.points);
  EXPECT_NE(trial_seed(c, 0, 1), trial_seed(c, 1, 1));
  EXPECT_THROW(run_trial(c, 2, 0), DomainError);
}

TEST(Sweep, SummaryMatchesRecords) {
  const auto c = small_config();
  const auto s = run_sweep(c, 1);
  ASSERT_EQ(s.summary.rows.size(), 2u);
  EXPECT_EQ(s.summary.reported_betti, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& row = s.summary.rows[i];
    std::int64_t holds = 0, trivial = 0, beta1 = 0;
    double mean0 = 0.0;
    for (const auto& r : s.trials) {
      if (r.n != row.n) continue;
      holds += r.chain == ChainStatus::Holds;
      trivial += r.trivial_homology();
      beta1 += r.betti[1] == 0;
      mean0 += static_cast<double>(r.betti[0]);
      EXPECT_EQ(r.betti.size(), 2u);
      EXPECT_GT(r.R_bar, r.R_crit);
    }
    EXPECT_EQ(row.trials, c.trials);
    EXPECT_EQ(row.chain_holds.successes, holds);
    EXPECT_EQ(row.trivial.successes, trivial);
    EXPECT_EQ(row.beta1_zero.successes, beta1);
    EXPECT_DOUBLE_EQ(row.mean_betti[0], mean0 / c.trials);
  }
}

TEST(Sweep, EmptyCloudIsFlagged) {
  auto c = small_config();
  c.n_grid = {3.0};
  c.bandwidth = 0.5;
  c.trials = 60;
  const auto s = run_sweep(c, 1);
  std::int64_t empty = 0;
  for (const auto& r : s.trials) {
    if (!r.empty_cloud) continue;
    ++empty;
    EXPECT_EQ(r.points, 0);
    EXPECT_TRUE(r.betti.empty());
    EXPECT_EQ(r.chain, ChainStatus::Holds);
    EXPECT_FALSE(r.trivial_homology());
  }
  EXPECT_GT(empty, 0);
  EXPECT_EQ(s.summary.rows[0].empty_clouds, empty);
  EXPECT_EQ(s.summary.rows[0].beta1_zero.trials, c.trials - empty);
}

TEST(Sweep, FailuresCarryContext) {
  auto c = small_config();
  c.policy = ScalingKind::EmpiricalKNN;
  c.knn_k = 500;  // more neighbours than points
  try {
    run_sweep(c, 1);
    FAIL() << "expected a DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("trial 0 at n=100"), std::string::npos) << e.what();
  }
}

TEST(Asymptotics, TrendsAndNaiveDivergence) {
  ExperimentConfig c;
  c.n_grid = {1e3, 1e6, 1e9, 1e12};
  const auto rows = asymptotics_report(c);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].nontriviality_ratio, rows[i - 1].nontriviality_ratio);
    EXPECT_LT(rows[i].noise_killing_ratio, rows[i - 1].noise_killing_ratio);
    EXPECT_LT(rows[i].r_n, rows[i - 1].r_n);
  }
  c.policy = ScalingKind::Naive;
  const auto naive = asymptotics_report(c);
  EXPECT_GT(naive.back().nontriviality_ratio, naive.front().nontriviality_ratio);
  std::ostringstream out;
  write_asymptotics_csv(out, naive);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "n,r_n,R_crit,R_bar,noise_killing_ratio,nontriviality_ratio,tail_scaling,error");
  c.profile = TailProfile::power_law(4, 2);
  EXPECT_THROW(asymptotics_report(c), DomainError);
}

TEST(Contrast, ArmsSharePointClouds) {
  auto c = small_config();
  c.n_grid = {300.0};
  const auto result = crackle_contrast(c, 1);
  EXPECT_EQ(result.valid_policy, ScalingKind::LightTail);
  ASSERT_EQ(result.constant_arm.trials.size(), result.valid_arm.trials.size());
  for (std::size_t i = 0; i < result.valid_arm.trials.size(); ++i) {
    const auto& a = result.constant_arm.trials[i];
    const auto& b = result.valid_arm.trials[i];
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.r_n, b.r_n);
  }
  std::ostringstream out;
  write_contrast_csv(out, result);
  EXPECT_NE(out.str().find("paired_seeds"), std::string::npos);
  c.profile = TailProfile::weibull(2, 1, 2);
  EXPECT_EQ(crackle_contrast(c, 1).valid_policy, ScalingKind::SuperExp);
}

TEST(Io, PointsAndProfilesRoundTrip) {
  Eigen::MatrixXd p(2, 3);
  p << 0.1, -2.5, 1e-300, 3.0, 0.0, 1.0 / 3.0;
  std::ostringstream out;
  write_points_csv(out, p);
  std::istringstream in(out.str());
  EXPECT_EQ(read_points_csv(in), p);
  std::istringstream bad("x1,x2\n1,2\n3\n");
  EXPECT_THROW(read_points_csv(bad), ConfigError);

  const auto w = TailProfile::weibull(1.5, 2.0, 3);
  EXPECT_TRUE(profile_from_json(profile_to_json(w)) == w);
  const auto pl = TailProfile::power_law(4.0, 2);
  EXPECT_TRUE(profile_from_json(profile_to_json(pl)) == pl);
  EXPECT_THROW(profile_from_json(nlohmann::json{{"kind", "weibull"}, {"v", 1}, {"tau", 1}, {"d", 2}, {"x", 1}}),
               ConfigError);
  EXPECT_EQ(config_hash(nlohmann::json{{"a", 1}}), config_hash(nlohmann::json{{"a", 1}}));
  EXPECT_NE(config_hash(nlohmann::json{{"a", 1}}), config_hash(nlohmann::json{{"a", 2}}));
  EXPECT_EQ(config_hash(nlohmann::json{{"a", 1}}).size(), 16u);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
