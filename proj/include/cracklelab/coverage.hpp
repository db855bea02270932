#pragma once

// Grid certificates for B(0,R) ⊂ ∪ B(x_i, ρ_i) and the containment chain
// P_n ⊂ B(0, R̄_n) ⊂ ∪ B(x, 2σ(x)).

#include <Eigen/Core>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cracklelab/sampler.hpp"
#include "cracklelab/scaling_policy.hpp"
#include "cracklelab/tail_profile.hpp"

namespace cracklelab {

enum class CoverageStatus { Covered, NotCovered, Unknown };
std::string_view to_string(CoverageStatus status);

struct CoverageVerdict {
  CoverageStatus status = CoverageStatus::Unknown;
  Eigen::VectorXd witness;  // set for NotCovered: |w| ≤ R, outside every ball
  double h = 0.0;
  std::size_t grid_points = 0;
};

inline constexpr std::size_t kMaxGridPoints = 100'000'000;

/// Tests the h-grid. Covered when every grid point within R + h√d/2 of the
/// origin lies at least h√d/2 inside some ball (sound for all of B(0,R));
/// NotCovered when some grid point within R lies outside every ball.
CoverageVerdict covers_ball(const Eigen::MatrixXd& centers, const Eigen::VectorXd& radii, double R,
                            double h);

/// covers_ball starting at h (min ρ/8 when h ≤ 0), halving h up to
/// `refinements` times while the verdict is Unknown.
CoverageVerdict covers_ball_refined(const Eigen::MatrixXd& centers, const Eigen::VectorXd& radii,
                                    double R, double h = 0.0, int refinements = 2);

/// Indices i with |x_i| > R.
std::vector<Eigen::Index> points_outside(const Eigen::MatrixXd& points, double R);
std::vector<Eigen::Index> points_outside(const PointCloud& cloud, double R);

enum class ChainStatus { Holds, Fails, Indeterminate };
std::string_view to_string(ChainStatus status);

struct ContractibilityProxy {
  ChainStatus status = ChainStatus::Indeterminate;
  bool empty_cloud = false;
  std::vector<Eigen::Index> outside;  // points beyond R̄
  CoverageVerdict coverage;           // of B(0, R̄) by the doubled balls
  Eigen::VectorXd doubled_radii;

  bool chain_holds() const { return status == ChainStatus::Holds; }
};

/// Checks P ⊂ B(0, R̄) and B(0, R̄) ⊂ ∪ B(x_i, 2σ_i). An empty cloud holds
/// vacuously and is flagged.
ContractibilityProxy contractibility_proxy(const PointCloud& cloud, const ScalingPolicy& policy,
                                           const TailProfile& profile,
                                           const RadiusSequences& sequences);
/// Same with precomputed (undoubled) radii σ_i.
ContractibilityProxy contractibility_proxy(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                           double R_bar);

}  // namespace cracklelab
