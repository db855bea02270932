#include <gtest/gtest.h>

#include <random>

#include "cracklelab/coverage.hpp"
#include "cracklelab/errors.hpp"
#include "cracklelab/geometric_complex.hpp"
#include "cracklelab/homology.hpp"

using namespace cracklelab;

namespace {

bool inside_some_ball(const Eigen::MatrixXd& c, const Eigen::VectorXd& r, const Eigen::VectorXd& p) {
  for (Eigen::Index i = 0; i < c.cols(); ++i) {
    if ((p - c.col(i)).norm() <= r[i]) return true;
  }
  return false;
}

}  // namespace

TEST(CoversBall, SingleBallCovers) {
  const Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 1);
  const auto v = covers_ball(c, Eigen::VectorXd::Ones(1), 0.5, 0.05);
  EXPECT_EQ(v.status, CoverageStatus::Covered);
  EXPECT_GT(v.grid_points, 0u);
}

TEST(CoversBall, GapYieldsWitness) {
  Eigen::MatrixXd c(2, 2);
  c << -1.5, 1.5, 0.0, 0.0;
  const Eigen::Vector2d r(1.0, 1.0);
  const auto v = covers_ball(c, r, 0.6, 0.05);
  ASSERT_EQ(v.status, CoverageStatus::NotCovered);
  EXPECT_LE(v.witness.norm(), 0.6);
  EXPECT_FALSE(inside_some_ball(c, r, v.witness));
}

TEST(CoversBall, RefinementResolvesTightCase) {
  const Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 1);
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(1);
  EXPECT_EQ(covers_ball(c, r, 0.8, 0.4).status, CoverageStatus::Unknown);
  EXPECT_EQ(covers_ball_refined(c, r, 0.8, 0.4, 1).status, CoverageStatus::Unknown);
  const auto v = covers_ball_refined(c, r, 0.8, 0.4, 2);
  EXPECT_EQ(v.status, CoverageStatus::Covered);
  EXPECT_DOUBLE_EQ(v.h, 0.1);
}

TEST(CoversBall, Validation) {
  const Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 1);
  EXPECT_THROW(covers_ball(c, Eigen::VectorXd::Ones(1), -1.0, 0.1), DomainError);
  EXPECT_THROW(covers_ball(c, Eigen::VectorXd::Ones(1), 1.0, 0.0), DomainError);
  EXPECT_THROW(covers_ball(c, Eigen::VectorXd::Ones(2), 1.0, 0.1), DomainError);
  EXPECT_THROW(covers_ball(c, Eigen::VectorXd::Ones(1), 1e6, 1e-3), ResourceError);
}

TEST(CoversBall, SoundnessAudit) {
  std::mt19937_64 gen(55);
  std::uniform_real_distribution<double> coord(-1.5, 1.5), radius(0.3, 0.9), unit(-1.0, 1.0);
  int covered = 0, uncovered = 0;
  for (int t = 0; t < 60; ++t) {
    const int m = 6 + t % 20;
    Eigen::MatrixXd c(2, m);
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      c(0, i) = coord(gen);
      c(1, i) = coord(gen);
      r[i] = radius(gen);
    }
    const double R = 1.0;
    const auto v = covers_ball_refined(c, r, R, 0.05, 2);
    if (v.status == CoverageStatus::Covered) {
      ++covered;
      for (int s = 0; s < 10000 / 60 + 1; ++s) {
        Eigen::Vector2d p(unit(gen), unit(gen));
        if (p.norm() > 1.0) continue;
        EXPECT_TRUE(inside_some_ball(c, r, R * p)) << "trial " << t;
      }
      // Bigger balls keep the verdict.
      EXPECT_EQ(covers_ball_refined(c, 1.2 * r, R, 0.05, 2).status, CoverageStatus::Covered);
    } else if (v.status == CoverageStatus::NotCovered) {
      ++uncovered;
      EXPECT_LE(v.witness.norm(), R + 1e-12);
      EXPECT_FALSE(inside_some_ball(c, r, v.witness));
      EXPECT_NE(covers_ball_refined(c, 0.8 * r, R, 0.05, 2).status, CoverageStatus::Covered);
    }
  }
  EXPECT_GT(covered, 0);
  EXPECT_GT(uncovered, 0);
}

TEST(PointsOutside, Indices) {
  Eigen::MatrixXd p(2, 2);
  p << 0.0, 5.0, 0.0, 0.0;
  EXPECT_EQ(points_outside(p, 3.0), (std::vector<Eigen::Index>{1}));
  EXPECT_TRUE(points_outside(p, 5.0).empty());
}

TEST(ContractibilityProxy, Cases) {
  const Eigen::MatrixXd origin = Eigen::MatrixXd::Zero(2, 1);
  const auto holds = contractibility_proxy(origin, Eigen::VectorXd::Constant(1, 10.0), 5.0);
  EXPECT_TRUE(holds.chain_holds());
  EXPECT_FALSE(holds.empty_cloud);
  EXPECT_DOUBLE_EQ(holds.doubled_radii[0], 20.0);

  Eigen::MatrixXd outlier(2, 2);
  outlier << 0.0, 20.0, 0.0, 0.0;
  const auto fails = contractibility_proxy(outlier, Eigen::Vector2d(10.0, 10.0), 5.0);
  EXPECT_EQ(fails.status, ChainStatus::Fails);
  EXPECT_EQ(fails.outside, (std::vector<Eigen::Index>{1}));

  const auto empty = contractibility_proxy(Eigen::MatrixXd(2, 0), Eigen::VectorXd(0), 5.0);
  EXPECT_TRUE(empty.chain_holds());
  EXPECT_TRUE(empty.empty_cloud);

  // Small balls leave a hole in B(0, R̄).
  const auto gap = contractibility_proxy(origin, Eigen::VectorXd::Constant(1, 1.0), 5.0);
  EXPECT_EQ(gap.status, ChainStatus::Fails);
  EXPECT_EQ(gap.coverage.status, CoverageStatus::NotCovered);
}

TEST(ContractibilityProxy, HoldingChainConnectsTheComplex) {
  std::mt19937_64 gen(91);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> radius(1.0, 3.0);
  int holding = 0;
  for (int t = 0; t < 40; ++t) {
    Eigen::MatrixXd p(2, 12);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(gen);
    Eigen::VectorXd r(12);
    for (auto& x : r) x = radius(gen);
    const double R_bar = p.colwise().norm().maxCoeff();
    const auto proxy = contractibility_proxy(p, r, R_bar);
    if (!proxy.chain_holds()) continue;
    ++holding;
    EXPECT_EQ(connected_components(build_cech(p, proxy.doubled_radii, 1)), 1u);
  }
  EXPECT_GT(holding, 5);
}
