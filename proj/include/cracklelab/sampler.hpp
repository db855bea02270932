#pragma once

// Poisson point processes with intensity n·q on R^d. Radii come from an
// exact inverse CDF of the radial law t^{d-1}·q(t); directions are uniform
// on the sphere.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "cracklelab/rng.hpp"
#include "cracklelab/tail_profile.hpp"

namespace cracklelab {

struct SampleConfig {
  double intensity = 0.0;
  TailProfile profile = TailProfile::weibull(1.0, 1.0, 2);
  std::uint64_t seed = 0;

  void validate() const;
};

/// Points are stored column-wise: points.col(i) is x_i ∈ R^d.
struct PointCloud {
  Eigen::MatrixXd points;
  SampleConfig provenance;

  int dimension() const { return static_cast<int>(points.rows()); }
  Eigen::Index size() const { return points.cols(); }
};

/// Tabulated radial CDF F(t) ∝ ∫_0^t s^{d-1} e^{-ψ(s)} ds on a geometric grid
/// reaching the radius where the tail mass drops below 1e-14. Inversion
/// brackets u in the table and refines on the exact CDF (Newton steps
/// safeguarded by bisection) to 1e-10.
class RadialSampler {
 public:
  explicit RadialSampler(const TailProfile& profile, int knots = 4096);

  /// F^{-1}(u); DomainError unless 0 <= u < 1.
  double operator()(double u) const;
  /// Exact radial CDF F(t).
  double cdf(double t) const;
  double table_radius() const { return knots_.back(); }
  const TailProfile& profile() const { return profile_; }

 private:
  double density(double t) const;  // radial pdf, integrates to 1 on [0, ∞)
  double invert_tail(double u) const;

  TailProfile profile_;
  double radial_norm_ = 0.0;  // C·s_{d-1}
  std::vector<double> knots_;
  std::vector<double> cdf_;
};

std::uint64_t draw_count(double n, RandomStream& rng);
double sample_radius(const TailProfile& profile, double u);
/// Normalized vector of independent normals; redraws the zero vector.
Eigen::VectorXd sample_direction(int dimension, RandomStream& rng);

PointCloud sample_point_cloud(const SampleConfig& config);
/// Same stream of draws as the overload above, reusing a prebuilt table.
PointCloud sample_point_cloud(const SampleConfig& config, const RadialSampler& radial);

}  // namespace cracklelab
