#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cracklelab/errors.hpp"
#include "cracklelab/geometric_complex.hpp"
#include "cracklelab/homology.hpp"
#include "cracklelab/union_nerve.hpp"

using namespace cracklelab;

namespace {

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

double hull_area(const Eigen::Matrix2Xd& pts) {
  std::vector<Eigen::Vector2d> p;
  for (Eigen::Index i = 0; i < pts.cols(); ++i) p.emplace_back(pts.col(i));
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Eigen::Vector2d> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) area += h[i].x() * h[i + 1].y() - h[i + 1].x() * h[i].y();
  return area / 2.0;
}

Eigen::Matrix2Xd random_points(std::mt19937_64& gen, int n, double spread) {
  std::normal_distribution<double> g(0.0, spread);
  Eigen::Matrix2Xd p(2, n);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(gen);
  return p;
}

}  // namespace

TEST(RegularTriangulation, IsRegularAndTilesTheHull) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> weight(0.0, 0.3);
  for (int t = 0; t < 50; ++t) {
    const auto pts = random_points(gen, 40, 1.0);
    Eigen::VectorXd w(40);
    for (auto& x : w) x = t % 2 == 0 ? 0.0 : weight(gen);
    const auto tri = regular_triangulation(pts, w);
    ASSERT_TRUE(tri.has_value());
    double area = 0.0;
    for (const auto& f : tri->triangles) {
      const Eigen::Vector2d a = pts.col(f[0]), b = pts.col(f[1]), c = pts.col(f[2]);
      const double twice = cross(a, b, c);
      EXPECT_GT(twice, 0.0);
      area += twice / 2.0;
      Eigen::Matrix2d m;
      m.row(0) = 2.0 * (b - a).transpose();
      m.row(1) = 2.0 * (c - a).transpose();
      const Eigen::Vector2d rhs(b.squaredNorm() - a.squaredNorm() - w[f[1]] + w[f[0]],
                                c.squaredNorm() - a.squaredNorm() - w[f[2]] + w[f[0]]);
      const Eigen::Vector2d o = m.fullPivLu().solve(rhs);
      const double own = (a - o).squaredNorm() - w[f[0]];
      for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        EXPECT_GE((pts.col(i) - o).squaredNorm() - w[i], own - 1e-9) << "trial " << t;
      }
    }
    EXPECT_NEAR(area, hull_area(pts), 1e-9);
    if (t % 2 == 0) {
      EXPECT_TRUE(std::all_of(tri->present.begin(), tri->present.end(), [](bool b) { return b; }));
    }
  }
}

TEST(RegularTriangulation, HeavyPointHidesNeighbour) {
  Eigen::Matrix2Xd p(2, 5);
  p << -1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.2, -1.0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(5);
  w[0] = 4.0;
  const auto tri = regular_triangulation(p, w);
  ASSERT_TRUE(tri.has_value());
  EXPECT_FALSE(tri->present[3]);
  for (const auto& f : tri->triangles) EXPECT_EQ(std::count(f.begin(), f.end(), Vertex{3}), 0);
}

TEST(RegularTriangulation, DegenerateInput) {
  Eigen::Matrix2Xd line(2, 4);
  line << 0.0, 1.0, 2.0, 3.0, 0.0, 1.0, 2.0, 3.0;
  EXPECT_FALSE(regular_triangulation(line, Eigen::VectorXd::Zero(4)).has_value());
  Eigen::Matrix2Xd dup(2, 4);
  dup << 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Eigen::VectorXd w(4);
  w << 0.1, 0.0, 0.0, 0.5;
  const auto tri = regular_triangulation(dup, w);
  ASSERT_TRUE(tri.has_value());
  EXPECT_FALSE(tri->present[0]);
  EXPECT_TRUE(tri->present[3]);
  EXPECT_EQ(tri->triangles.size(), 1u);
}

TEST(WeightedAlpha, FallbacksMatchCech) {
  Eigen::MatrixXd line(2, 3);
  line << 0.0, 1.0, 2.0, 0.0, 0.0, 0.0;
  const Eigen::Vector3d r = Eigen::Vector3d::Constant(0.6);
  EXPECT_EQ(build_weighted_alpha(line, r), build_cech(line, r, 2));
  Eigen::MatrixXd two(2, 2);
  two << 0.0, 0.5, 0.0, 0.0;
  EXPECT_EQ(betti(build_weighted_alpha(two, Eigen::Vector2d(0.3, 0.3))), (BettiVector{1, 0}));
  Eigen::MatrixXd dup(2, 3);
  dup << 0.0, 0.0, 3.0, 0.0, 0.0, 0.0;
  // Duplicate vertex still appears, via its twin's edges or on its own.
  const auto c = build_weighted_alpha(dup, Eigen::Vector3d(0.5, 0.5, 0.5));
  EXPECT_EQ(betti(c)[0], 2);
}

TEST(WeightedAlpha, SharesBettiNumbersWithCech) {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> radius(0.15, 0.6);
  int nontrivial_beta1 = 0;
  for (int t = 0; t < 150; ++t) {
    const int n = 5 + t % 30;
    const auto pts = random_points(gen, n, 1.2);
    Eigen::VectorXd r(n);
    for (auto& x : r) x = t % 3 == 0 ? 0.4 : radius(gen);
    const auto alpha = build_weighted_alpha(pts, r);
    const auto cech = build_cech(pts, r, 2);
    EXPECT_TRUE(alpha.is_downward_closed());
    EXPECT_LE(alpha.total_count(), cech.total_count());
    auto ba = betti(alpha), bc = betti(cech);
    ba.resize(2, 0);
    bc.resize(2, 0);
    EXPECT_EQ(ba, bc) << "trial " << t;
    nontrivial_beta1 += bc[1] > 0;
    // Every simplex of the alpha complex is a Čech simplex.
    for (int k = 0; k <= alpha.max_dim(); ++k) {
      for (std::size_t i = 0; i < alpha.count(k); ++i) EXPECT_TRUE(cech.contains(alpha.simplex(k, i)));
    }
  }
  EXPECT_GT(nontrivial_beta1, 10);
}

TEST(UnionNerve, KindSelection) {
  EXPECT_EQ(parse_nerve_kind("alpha"), NerveKind::Alpha);
  EXPECT_EQ(parse_nerve_kind("cech"), NerveKind::Cech);
  EXPECT_EQ(parse_nerve_kind("auto"), NerveKind::Auto);
  EXPECT_THROW(parse_nerve_kind("rips"), ConfigError);
  Eigen::MatrixXd p(2, 3);
  p << 0.0, 1.0, 0.5, 0.0, 0.0, 0.8;
  const Eigen::Vector3d r = Eigen::Vector3d::Constant(0.7);
  EXPECT_EQ(build_union_nerve(p, r, 1), build_cech(p, r, 1));
  EXPECT_EQ(build_union_nerve(p, r, 2, NerveKind::Cech), build_cech(p, r, 2));
  EXPECT_EQ(betti(build_union_nerve(p, r, 2)), betti(build_cech(p, r, 2)));
}
