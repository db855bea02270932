#include "cracklelab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cracklelab/errors.hpp"
#include "cracklelab/quadrature.hpp"

namespace cracklelab {

namespace {

constexpr double kTableTailMass = 1e-14;
constexpr double kInversionTol = 1e-10;

}  // namespace

void SampleConfig::validate() const {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw DomainError("sample intensity n must be finite and >= 0");
  }
}

RadialSampler::RadialSampler(const TailProfile& profile, int knots) : profile_(profile) {
  if (knots < 8) throw DomainError("radial table needs at least 8 knots");
  radial_norm_ = profile.norm_constant() * unit_sphere_area(profile.dimension());

  double scale = profile.kind() == TailKind::WeibullType ? profile.tau() : 1.0;
  double t_max = scale;
  while (tail_mass(profile, t_max) >= kTableTailMass) t_max *= 2.0;

  const double t_min = t_max * 1e-9;
  knots_.resize(knots);
  cdf_.resize(knots);
  knots_[0] = 0.0;
  const double ratio = std::log(t_max / t_min) / (knots - 2);
  for (int k = 1; k < knots; ++k) knots_[k] = t_min * std::exp(ratio * (k - 1));
  knots_.back() = t_max;

  auto pdf = [this](double t) { return density(t); };
  cdf_[0] = 0.0;
  for (int k = 1; k < knots; ++k) {
    cdf_[k] = cdf_[k - 1] + quadrature::kronrod15(pdf, knots_[k - 1], knots_[k]);
  }
}

double RadialSampler::density(double t) const {
  if (t <= 0.0) return profile_.dimension() == 1 ? radial_norm_ * profile_.shape(0.0) : 0.0;
  const double value = std::pow(t, profile_.dimension() - 1) * profile_.shape(t);
  return std::isfinite(value) ? radial_norm_ * value : 0.0;
}

double RadialSampler::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= knots_.back()) return 1.0 - tail_mass(profile_, t);
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const auto k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  auto pdf = [this](double s) { return density(s); };
  return cdf_[k] + quadrature::kronrod15(pdf, knots_[k], t);
}

double RadialSampler::operator()(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    std::ostringstream msg;
    msg << "sample_radius requires u in [0,1), got " << u;
    throw DomainError(msg.str());
  }
  if (u == 0.0) return 0.0;
  if (u >= cdf_.back()) return invert_tail(u);

  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto k = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  double lo = knots_[k];
  double hi = knots_[k + 1];
  const double base = cdf_[k];
  auto pdf = [this](double s) { return density(s); };

  const double span = cdf_[k + 1] - base;
  double t = span > 0.0 ? lo + (hi - lo) * (u - base) / span : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double tol = std::max(kInversionTol, 4.0 * std::numeric_limits<double>::epsilon() * t);
    const double g = base + quadrature::kronrod15(pdf, knots_[k], t) - u;
    if (g > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double slope = density(t);
    double next = slope > 0.0 ? t - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < tol || hi - lo < tol) return next;
    t = next;
  }
  return t;
}

double RadialSampler::invert_tail(double u) const {
  const double target = 1.0 - u;
  double lo = knots_.back();
  double hi = 2.0 * lo;
  while (tail_mass(profile_, hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > std::max(kInversionTol, 1e-15 * hi)) {
    const double mid = 0.5 * (lo + hi);
    if (tail_mass(profile_, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::uint64_t draw_count(double n, RandomStream& rng) {
  if (!(n >= 0.0)) throw DomainError("draw_count requires n >= 0");
  return rng.poisson(n);
}

double sample_radius(const TailProfile& profile, double u) { return RadialSampler(profile)(u); }

Eigen::VectorXd sample_direction(int dimension, RandomStream& rng) {
  if (dimension < 1) throw DomainError("sample_direction requires d >= 1");
  Eigen::VectorXd g(dimension);
  double norm = 0.0;
  do {
    for (int i = 0; i < dimension; ++i) g[i] = rng.normal();
    norm = g.norm();
  } while (norm == 0.0);
  return g / norm;
}

PointCloud sample_point_cloud(const SampleConfig& config, const RadialSampler& radial) {
  config.validate();
  if (!(radial.profile() == config.profile)) {
    throw DomainError("radial table was built for a different profile");
  }
  RandomStream rng(config.seed);
  const auto count = static_cast<Eigen::Index>(draw_count(config.intensity, rng));
  const int d = config.profile.dimension();
  PointCloud cloud{Eigen::MatrixXd(d, count), config};
  for (Eigen::Index i = 0; i < count; ++i) {
    const double r = radial(rng.uniform());
    cloud.points.col(i) = r * sample_direction(d, rng);
  }
  return cloud;
}

PointCloud sample_point_cloud(const SampleConfig& config) {
  return sample_point_cloud(config, RadialSampler(config.profile));
}

}  // namespace cracklelab
