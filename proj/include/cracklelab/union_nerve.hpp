#pragma once

// Complexes homotopy equivalent to a union of balls. In the plane the
// weighted alpha complex (nerve of the balls clipped to their power cells)
// has O(N) simplices where the Čech complex of a dense core has O(N²) or
// worse; both are nerves of convex covers of the same union, so they share
// Betti numbers.

#include <Eigen/Core>
#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cracklelab/simplicial_complex.hpp"

namespace cracklelab {

/// Regular (weighted Delaunay) triangulation of planar points with weights
/// w_i. Triangles are counter-clockwise vertex triples of input indices.
struct RegularTriangulation2 {
  std::vector<std::array<Vertex, 3>> triangles;
  std::vector<bool> present;  // false for hidden or duplicate points
};

/// Incremental construction with exact orientation and power predicates.
/// Exact duplicate positions keep only the heaviest copy. Returns nothing
/// when fewer than three distinct points exist or all are collinear.
std::optional<RegularTriangulation2> regular_triangulation(const Eigen::Matrix2Xd& points,
                                                           const Eigen::VectorXd& weights);

/// Nerve of {B(x_i, ρ_i) ∩ V_i} over power cells V_i, with the closed-ball
/// tolerance `tol` in squared units. Degenerate input falls back to the
/// Čech complex with max_dim 2.
SimplicialComplex build_weighted_alpha(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                       double tol = 1e-9);

enum class NerveKind { Auto, Cech, Alpha };
NerveKind parse_nerve_kind(std::string_view name);
std::string_view to_string(NerveKind kind);

/// Auto picks the alpha complex when d = 2 and max_dim = 2, the Čech
/// complex truncated at max_dim otherwise.
SimplicialComplex build_union_nerve(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                    int max_dim, NerveKind kind = NerveKind::Auto);

}  // namespace cracklelab
