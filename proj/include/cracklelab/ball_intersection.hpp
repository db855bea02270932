#pragma once

// Closed-ball intersection in R^d as an LP-type problem.
//
// ∩ B(x_i, ρ_i) ≠ ∅  ⇔  min_p max_i π_i(p) ≤ 0,  π_i(p) = |p − x_i|² − ρ_i².
//
// All π_i share the leading term |p|², so the objective is |p|² plus a
// piecewise-linear convex function: a convex QP whose optimum is fixed by at
// most d+1 tight constraints. Welzl's recursion applies unchanged: a
// constraint violated by the optimum of the others is tight at the optimum
// of all. The basis problem is the equal-power point in the affine hull of
// the support centers (the power analogue of the circumcenter).

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cracklelab/errors.hpp"

namespace cracklelab {

template <typename Scalar>
struct PowerMinimum {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> point;
  Scalar value = std::numeric_limits<Scalar>::infinity();
  std::vector<Eigen::Index> support;
  bool valid = false;
};

namespace detail {

template <typename Scalar>
class MinMaxPowerSolver {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  MinMaxPowerSolver(const Matrix& centers, const Vector& weights)
      : centers_(centers), weights_(weights) {
    const Scalar extent = centers_.cwiseAbs().maxCoeff() + std::sqrt(weights_.cwiseAbs().maxCoeff());
    slack_ = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
             std::max(Scalar(1), extent * extent);
  }

  PowerMinimum<Scalar> solve() {
    std::vector<Eigen::Index> pending(static_cast<std::size_t>(centers_.cols()));
    for (Eigen::Index i = 0; i < centers_.cols(); ++i) pending[static_cast<std::size_t>(i)] = i;
    std::vector<Eigen::Index> support;
    return recurse(pending, pending.size(), support);
  }

  Scalar power(Eigen::Index i, const Vector& p) const {
    return (p - centers_.col(i)).squaredNorm() - weights_[i];
  }

 private:
  PowerMinimum<Scalar> recurse(const std::vector<Eigen::Index>& pending, std::size_t count,
                               std::vector<Eigen::Index>& support) {
    const auto dim = static_cast<std::size_t>(centers_.rows());
    if (count == 0 || support.size() == dim + 1) return basis(support);
    const Eigen::Index candidate = pending[count - 1];
    auto best = recurse(pending, count - 1, support);
    if (best.valid && power(candidate, best.point) <= best.value + slack_) return best;
    support.push_back(candidate);
    auto forced = recurse(pending, count - 1, support);
    support.pop_back();
    return forced;
  }

  PowerMinimum<Scalar> basis(const std::vector<Eigen::Index>& support) const {
    PowerMinimum<Scalar> out;
    out.support = support;
    if (support.empty()) return out;  // unconstrained: every point violates
    const Eigen::Index base = support.front();
    const auto m = static_cast<Eigen::Index>(support.size()) - 1;
    if (m == 0) {
      out.point = centers_.col(base);
      out.value = -weights_[base];
      out.valid = true;
      return out;
    }
    Matrix q(centers_.rows(), m);
    Vector rhs(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index idx = support[static_cast<std::size_t>(j + 1)];
      q.col(j) = centers_.col(idx) - centers_.col(base);
      rhs[j] = q.col(j).squaredNorm() - weights_[idx] + weights_[base];
    }
    const Matrix gram = Scalar(2) * q.transpose() * q;
    Eigen::FullPivLU<Matrix> lu(gram);
    if (!lu.isInvertible()) return out;  // affinely dependent support
    const Vector mu = lu.solve(rhs);
    const Vector offset = q * mu;
    out.point = centers_.col(base) + offset;
    out.value = offset.squaredNorm() - weights_[base];
    out.valid = std::isfinite(static_cast<double>(out.value));
    return out;
  }

  const Matrix& centers_;
  const Vector& weights_;
  Scalar slack_;
};

}  // namespace detail

/// min_p max_i (|p − x_i|² − ρ_i²) for the balls whose centers are the columns
/// of `centers`. Any number of balls is accepted.
template <typename DerivedC, typename DerivedR>
PowerMinimum<typename DerivedC::Scalar> min_max_power(const Eigen::MatrixBase<DerivedC>& centers,
                                                      const Eigen::MatrixBase<DerivedR>& radii) {
  using Scalar = typename DerivedC::Scalar;
  if (centers.cols() != radii.size()) throw DomainError("min_max_power: one radius per center");
  if (centers.cols() == 0) throw DomainError("min_max_power: at least one ball required");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c = centers;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = radii.derived().array().square().matrix();
  detail::MinMaxPowerSolver<Scalar> solver(c, w);
  auto result = solver.solve();
  if (!result.valid) throw DomainError("min_max_power: degenerate configuration without a basis");
  // Report the true objective at the returned point.
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < c.cols(); ++i) worst = std::max(worst, solver.power(i, result.point));
  result.value = worst;
  return result;
}

inline constexpr double kBallTolerance = 1e-9;

/// True iff the closed balls B(x_i, ρ_i) share a point, with tangency within
/// `tol` (squared units) counted as intersection. Between 1 and d+1 balls.
template <typename DerivedC, typename DerivedR>
bool balls_intersect(const Eigen::MatrixBase<DerivedC>& centers,
                     const Eigen::MatrixBase<DerivedR>& radii, double tol = kBallTolerance) {
  const auto count = centers.cols();
  if (count < 1 || count > centers.rows() + 1) {
    throw DomainError("balls_intersect: expected between 1 and d+1 balls, got " +
                      std::to_string(count));
  }
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw DomainError("balls_intersect: radii must be positive");
  }
  if (count == 1) return true;
  return static_cast<double>(min_max_power(centers, radii).value) <= tol;
}

}  // namespace cracklelab
