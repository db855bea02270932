#pragma once

// Fixed- and variable-bandwidth geometric graphs, Čech and Vietoris-Rips
// complexes. The graph and Rips use half radii (edge iff |x−y| ≤ (σ_x+σ_y)/2),
// Čech uses full radii certified by the exact ball-intersection test.

#include <Eigen/Core>
#include <array>
#include <cstddef>
#include <vector>

#include "cracklelab/ball_intersection.hpp"
#include "cracklelab/sampler.hpp"
#include "cracklelab/scaling_policy.hpp"
#include "cracklelab/simplicial_complex.hpp"
#include "cracklelab/tail_profile.hpp"

namespace cracklelab {

using Edge = std::array<Vertex, 2>;

/// Hard cap on simplices produced by a single construction.
inline constexpr std::size_t kMaxSimplices = 5'000'000;
/// Linear slack for the graph/Rips distance threshold.
inline constexpr double kDistanceTolerance = 1e-9;

/// Distance from each point to its k-th nearest other point (ties broken by
/// smaller index). DomainError unless 1 <= k < N.
Eigen::VectorXd knn_distances(const Eigen::MatrixXd& points, int k);

/// σ_i for every point of the cloud.
Eigen::VectorXd vertex_radii(const ScalingPolicy& policy, const TailProfile& profile,
                             const PointCloud& cloud);
double radius_at(const ScalingPolicy& policy, const TailProfile& profile, const PointCloud& cloud,
                 Eigen::Index i);

/// Pairs {i<j} with |x_i − x_j| ≤ reach_i + reach_j + slack, sorted.
std::vector<Edge> candidate_pairs(const Eigen::MatrixXd& points, const Eigen::VectorXd& reach,
                                  double slack);

std::vector<Edge> build_graph(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                              double tol = kDistanceTolerance);
std::vector<Edge> build_graph(const PointCloud& cloud, const ScalingPolicy& policy,
                              const TailProfile& profile);

/// Simplices of dimension ≤ max_dim whose full-radius balls share a point.
SimplicialComplex build_cech(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                             int max_dim, double tol = kBallTolerance);
SimplicialComplex build_cech(const PointCloud& cloud, const ScalingPolicy& policy,
                             const TailProfile& profile, int max_dim);

/// Clique complex of build_graph truncated at max_dim.
SimplicialComplex build_rips(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                             int max_dim, double tol = kDistanceTolerance);
SimplicialComplex build_rips(const PointCloud& cloud, const ScalingPolicy& policy,
                             const TailProfile& profile, int max_dim);

}  // namespace cracklelab
