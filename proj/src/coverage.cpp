#include "cracklelab/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cracklelab/errors.hpp"
#include "cracklelab/geometric_complex.hpp"

namespace cracklelab {

namespace {

// Balls bucketed on a uniform grid over the box [-extent, extent]^d. Each
// ball is listed in every cell its bounding box touches, so a point only
// needs the balls of its own cell: all others miss it.
class BallIndex {
 public:
  BallIndex(const Eigen::MatrixXd& centers, const Eigen::VectorXd& radii, double extent)
      : centers_(centers), radii_(radii), dim_(static_cast<int>(centers.rows())), extent_(extent) {
    const double mean_radius = radii.size() ? radii.mean() : extent;
    double cell = std::max(mean_radius, 2.0 * extent / 256.0);
    per_axis_ = std::max<long>(1, static_cast<long>(std::ceil(2.0 * extent / cell)));
    while (std::pow(static_cast<double>(per_axis_), dim_) > 4e6) per_axis_ = (per_axis_ + 1) / 2;
    cell_ = 2.0 * extent / static_cast<double>(per_axis_);
    std::size_t total = 1;
    for (int k = 0; k < dim_; ++k) total *= static_cast<std::size_t>(per_axis_);
    buckets_.resize(total);
    std::vector<long> lo(static_cast<std::size_t>(dim_)), hi(static_cast<std::size_t>(dim_));
    for (Eigen::Index i = 0; i < centers.cols(); ++i) {
      bool inside = true;
      for (int k = 0; k < dim_; ++k) {
        const double a = centers(k, i) - radii[i];
        const double b = centers(k, i) + radii[i];
        if (b < -extent || a > extent) inside = false;
        lo[static_cast<std::size_t>(k)] = axis_cell(a);
        hi[static_cast<std::size_t>(k)] = axis_cell(b);
      }
      if (!inside) continue;
      std::vector<long> at = lo;
      while (true) {
        buckets_[flat(at)].push_back(static_cast<std::uint32_t>(i));
        int k = 0;
        for (; k < dim_; ++k) {
          auto& c = at[static_cast<std::size_t>(k)];
          if (c < hi[static_cast<std::size_t>(k)]) {
            ++c;
            break;
          }
          c = lo[static_cast<std::size_t>(k)];
        }
        if (k == dim_) break;
      }
    }
  }

  // min_i (|p − x_i| − ρ_i) over the balls of p's cell; +inf when none.
  // Stops early at a value ≤ stop, trying `hint` first.
  double min_gap(const Eigen::VectorXd& p, double stop, std::int64_t& hint) const {
    if (hint >= 0) {
      const double g = gap(p, static_cast<Eigen::Index>(hint));
      if (g <= stop) return g;
    }
    std::size_t index = 0;
    std::size_t stride = 1;
    for (int k = 0; k < dim_; ++k) {
      index += static_cast<std::size_t>(axis_cell(p[k])) * stride;
      stride *= static_cast<std::size_t>(per_axis_);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto i : buckets_[index]) {
      const double g = gap(p, i);
      if (g < best) {
        best = g;
        if (g <= stop) {
          hint = i;
          return g;
        }
      }
    }
    return best;
  }

  double gap(const Eigen::VectorXd& p, Eigen::Index i) const {
    return (p - centers_.col(i)).norm() - radii_[i];
  }

 private:
  long axis_cell(double x) const {
    const long c = static_cast<long>(std::floor((x + extent_) / cell_));
    return std::clamp(c, 0L, per_axis_ - 1);
  }

  std::size_t flat(const std::vector<long>& at) const {
    std::size_t index = 0;
    std::size_t stride = 1;
    for (int k = 0; k < dim_; ++k) {
      index += static_cast<std::size_t>(at[static_cast<std::size_t>(k)]) * stride;
      stride *= static_cast<std::size_t>(per_axis_);
    }
    return index;
  }

  const Eigen::MatrixXd& centers_;
  const Eigen::VectorXd& radii_;
  int dim_;
  double extent_;
  long per_axis_ = 1;
  double cell_ = 1.0;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

}  // namespace

std::string_view to_string(CoverageStatus status) {
  switch (status) {
    case CoverageStatus::Covered: return "covered";
    case CoverageStatus::NotCovered: return "not_covered";
    case CoverageStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(ChainStatus status) {
  switch (status) {
    case ChainStatus::Holds: return "holds";
    case ChainStatus::Fails: return "fails";
    case ChainStatus::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

CoverageVerdict covers_ball(const Eigen::MatrixXd& centers, const Eigen::VectorXd& radii, double R,
                            double h) {
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("covers_ball requires R > 0");
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("covers_ball requires h > 0");
  if (radii.size() != centers.cols()) throw DomainError("one radius per ball is required");
  const int d = static_cast<int>(centers.rows());
  if (d < 1) throw DomainError("covers_ball requires dimension >= 1");
  const double slack = h * std::sqrt(static_cast<double>(d)) / 2.0;
  const double reach = R + slack;
  const long half = static_cast<long>(std::floor(reach / h));
  const double side = 2.0 * static_cast<double>(half) + 1.0;
  if (std::pow(side, d) > static_cast<double>(kMaxGridPoints)) {
    throw ResourceError("coverage grid would exceed 1e8 points (h=" + std::to_string(h) +
                        ", R=" + std::to_string(R) + "); use a coarser h or a smaller R");
  }

  CoverageVerdict verdict;
  verdict.h = h;
  BallIndex index(centers, radii, reach + h);
  std::vector<long> at(static_cast<std::size_t>(d), -half);
  Eigen::VectorXd p(d);
  std::int64_t hint = -1;
  bool all_certified = true;
  while (true) {
    double norm2 = 0.0;
    for (int k = 0; k < d; ++k) {
      p[k] = h * static_cast<double>(at[static_cast<std::size_t>(k)]);
      norm2 += p[k] * p[k];
    }
    const double norm = std::sqrt(norm2);
    if (norm <= reach) {
      ++verdict.grid_points;
      const double g = index.min_gap(p, -slack, hint);
      if (g > 0.0 && norm <= R) {
        verdict.status = CoverageStatus::NotCovered;
        verdict.witness = p;
        return verdict;
      }
      if (g > -slack) all_certified = false;
    }
    int k = 0;
    for (; k < d; ++k) {
      auto& c = at[static_cast<std::size_t>(k)];
      if (c < half) {
        ++c;
        break;
      }
      c = -half;
    }
    if (k == d) break;
  }
  verdict.status = all_certified ? CoverageStatus::Covered : CoverageStatus::Unknown;
  return verdict;
}

CoverageVerdict covers_ball_refined(const Eigen::MatrixXd& centers, const Eigen::VectorXd& radii,
                                    double R, double h, int refinements) {
  if (h <= 0.0) {
    h = radii.size() ? radii.minCoeff() / 8.0 : R / 8.0;
  }
  CoverageVerdict verdict = covers_ball(centers, radii, R, h);
  for (int step = 0; step < refinements && verdict.status == CoverageStatus::Unknown; ++step) {
    h /= 2.0;
    verdict = covers_ball(centers, radii, R, h);
  }
  return verdict;
}

std::vector<Eigen::Index> points_outside(const Eigen::MatrixXd& points, double R) {
  if (!(R >= 0)) throw DomainError("points_outside requires R >= 0");
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    if (points.col(i).norm() > R) out.push_back(i);
  }
  return out;
}

std::vector<Eigen::Index> points_outside(const PointCloud& cloud, double R) {
  return points_outside(cloud.points, R);
}

ContractibilityProxy contractibility_proxy(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                           double R_bar) {
  ContractibilityProxy out;
  if (points.cols() == 0) {
    out.empty_cloud = true;
    out.status = ChainStatus::Holds;
    return out;
  }
  out.doubled_radii = 2.0 * radii;
  out.outside = points_outside(points, R_bar);
  out.coverage = covers_ball_refined(points, out.doubled_radii, R_bar);
  if (!out.outside.empty() || out.coverage.status == CoverageStatus::NotCovered) {
    out.status = ChainStatus::Fails;
  } else if (out.coverage.status == CoverageStatus::Covered) {
    out.status = ChainStatus::Holds;
  } else {
    out.status = ChainStatus::Indeterminate;
  }
  return out;
}

ContractibilityProxy contractibility_proxy(const PointCloud& cloud, const ScalingPolicy& policy,
                                           const TailProfile& profile,
                                           const RadiusSequences& sequences) {
  if (cloud.size() == 0) return contractibility_proxy(cloud.points, Eigen::VectorXd(), sequences.R_bar);
  return contractibility_proxy(cloud.points, vertex_radii(policy, profile, cloud), sequences.R_bar);
}

}  // namespace cracklelab
