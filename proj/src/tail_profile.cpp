#include "cracklelab/tail_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cracklelab/errors.hpp"
#include "cracklelab/quadrature.hpp"

namespace cracklelab {

namespace {

constexpr double kLogGuard = 1e-9;

double checked_log(double argument, const char* what) {
  if (!(argument >= kLogGuard) || !std::isfinite(argument)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "log argument " << what << " = " << argument << " is below " << kLogGuard;
    throw DomainError(msg.str());
  }
  return std::log(argument);
}

void require_weibull(const TailProfile& profile, const char* op) {
  if (profile.kind() != TailKind::WeibullType) {
    throw DomainError(std::string(op) +
                      ": power-law profiles have no psi machinery (psi, psi_inv, a)");
  }
}

// log(e + exp(x)) without overflow.
double log_e_plus_exp(double x) {
  if (x > 30.0) return x + std::log1p(std::numbers::e * std::exp(-x));
  return std::log(std::numbers::e + std::exp(x));
}

// log(1 + exp(x)) without overflow.
double log1p_exp(double x) {
  if (x > 30.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double log_phi_at_radius(const TailProfile& profile, double radius) {
  const double d = profile.dimension();
  const double log_c = std::log(profile.norm_constant());
  if (profile.kind() == TailKind::WeibullType) {
    return (psi(profile, radius) - log_c) / d;
  }
  // q = C/(1+t^α)  ⇒  log φ = (log(1+t^α) − log C)/d
  const double log_t_alpha = profile.alpha() * std::log(std::max(radius, 1e-300));
  return (log1p_exp(log_t_alpha) - log_c) / d;
}

double scale_factor_from_log_phi(ScalingKind kind, const TailProfile& profile, double log_phi) {
  switch (kind) {
    case ScalingKind::Constant: return 1.0;
    case ScalingKind::Naive: return std::exp(log_phi);
    case ScalingKind::LightTail: return psi_inv(profile, log_e_plus_exp(log_phi));
    case ScalingKind::SuperExp: return std::log(std::numbers::e + log1p_exp(log_phi));
    case ScalingKind::EmpiricalKNN:
      throw DomainError("knn scaling has no closed-form scale factor; it depends on the cloud");
  }
  return 1.0;
}

// t^{d-1}·shape(t), written to stay finite for very large t.
double radial_integrand(const TailProfile& profile, double t) {
  const int d = profile.dimension();
  if (profile.kind() == TailKind::WeibullType) {
    const double s = std::pow(t / profile.tau(), profile.v());
    if (s > 745.0) return 0.0;
    return std::pow(t, d - 1) * std::exp(-s);
  }
  if (t <= 1.0) return std::pow(t, d - 1) / (1.0 + std::pow(t, profile.alpha()));
  return std::pow(t, d - 1 - profile.alpha()) / (1.0 + std::pow(t, -profile.alpha()));
}

// ∫_lo^∞ t^{d-1} shape(t) dt with a substitution scaled to the profile.
double radial_tail_integral(const TailProfile& profile, double lo, double rel_tol) {
  double scale = 1.0;
  if (profile.kind() == TailKind::WeibullType) {
    scale = lo > profile.tau() ? a_of(profile, lo) : profile.tau();
  } else {
    scale = std::max(lo, 1.0);
  }
  auto scaled = [&](double u) { return scale * radial_integrand(profile, lo + scale * u); };
  quadrature::Options opt;
  opt.rel_tol = rel_tol;
  opt.max_segments = 20000;
  return quadrature::integrate_to_infinity(scaled, 0.0, opt).value;
}

}  // namespace

TailProfile::TailProfile(TailKind kind, double v, double tau, double alpha, int dimension)
    : kind_(kind), v_(v), tau_(tau), alpha_(alpha), dimension_(dimension) {
  if (dimension < 1) throw DomainError("dimension must be >= 1");
  if (kind == TailKind::WeibullType) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("Weibull-type profile requires v > 0");
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw DomainError("Weibull-type profile requires tau > 0");
    }
  } else if (!(alpha > dimension) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "power-law profile requires alpha > d (got alpha=" << alpha << ", d=" << dimension
        << "); the density is not normalizable otherwise";
    throw DomainError(msg.str());
  }
  norm_constant_ = cracklelab::norm_constant(*this);
}

TailProfile TailProfile::weibull(double v, double tau, int dimension) {
  return TailProfile(TailKind::WeibullType, v, tau, 0.0, dimension);
}

TailProfile TailProfile::power_law(double alpha, int dimension) {
  return TailProfile(TailKind::PowerLaw, 0.0, 0.0, alpha, dimension);
}

TailRegime TailProfile::regime() const {
  if (kind_ == TailKind::PowerLaw) return TailRegime::HeavyTail;
  if (v_ < 1.0) return TailRegime::Subexponential;
  if (v_ == 1.0) return TailRegime::Exponential;
  return TailRegime::Superexponential;
}

double TailProfile::shape(double t) const {
  if (kind_ == TailKind::WeibullType) return std::exp(-std::pow(t / tau_, v_));
  return 1.0 / (1.0 + std::pow(t, alpha_));
}

bool TailProfile::operator==(const TailProfile& other) const {
  return kind_ == other.kind_ && v_ == other.v_ && tau_ == other.tau_ &&
         alpha_ == other.alpha_ && dimension_ == other.dimension_;
}

double unit_sphere_area(int dimension) {
  const double half = 0.5 * dimension;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double psi(const TailProfile& profile, double z) {
  require_weibull(profile, "psi");
  if (!(z >= 0.0)) throw DomainError("psi requires z >= 0");
  return std::pow(z / profile.tau(), profile.v());
}

double psi_inv(const TailProfile& profile, double y) {
  require_weibull(profile, "psi_inv");
  if (!(y > 0.0)) return 1.0;
  return std::max(1.0, profile.tau() * std::pow(y, 1.0 / profile.v()));
}

double a_of(const TailProfile& profile, double z) {
  require_weibull(profile, "a_of");
  if (!(z > 0.0)) throw DomainError("a_of requires z > 0");
  const double v = profile.v();
  return std::pow(profile.tau(), v) / v * std::pow(z, 1.0 - v);
}

double norm_constant(const TailProfile& profile) {
  const double radial = radial_tail_integral(profile, 0.0, 1e-10);
  const double total = unit_sphere_area(profile.dimension()) * radial;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw QuadratureError("normalizing integral is not positive and finite");
  }
  return 1.0 / total;
}

double density(const TailProfile& profile, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return profile.density_at_radius(x.norm());
}

double phi_at_radius(const TailProfile& profile, double radius) {
  return std::exp(log_phi_at_radius(profile, radius));
}

double phi(const TailProfile& profile, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return phi_at_radius(profile, x.norm());
}

double tail_mass(const TailProfile& profile, double radius) {
  if (!(radius >= 0.0)) throw DomainError("tail_mass requires R >= 0");
  if (radius == 0.0) return 1.0;
  const double radial = radial_tail_integral(profile, radius, 1e-9);
  return std::min(1.0, profile.norm_constant() * unit_sphere_area(profile.dimension()) * radial);
}

double scale_factor(ScalingKind kind, const TailProfile& profile, double phi_value) {
  if (!(phi_value >= 0.0)) throw DomainError("scale_factor requires phi >= 0");
  switch (kind) {
    case ScalingKind::Constant: return 1.0;
    case ScalingKind::Naive: return phi_value;
    case ScalingKind::LightTail: return psi_inv(profile, std::log(std::numbers::e + phi_value));
    case ScalingKind::SuperExp: return std::log(std::numbers::e + std::log1p(phi_value));
    case ScalingKind::EmpiricalKNN: break;
  }
  return scale_factor_from_log_phi(kind, profile, 0.0);
}

double scaling_value_at_radius(const ScalingPolicy& policy, const TailProfile& profile,
                               double radius) {
  policy.validate();
  if (policy.kind == ScalingKind::Constant) return policy.r_n;
  return policy.r_n *
         scale_factor_from_log_phi(policy.kind, profile, log_phi_at_radius(profile, radius));
}

double scaling_value(const ScalingPolicy& policy, const TailProfile& profile,
                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  return scaling_value_at_radius(policy, profile, x.norm());
}

RadiusSequences radius_sequences(const TailProfile& profile, double n, double r_n,
                                 double delta) {
  require_weibull(profile, "radius_sequences");
  const int d = profile.dimension();
  const double log_n = checked_log(n, "n");
  const double log_log_n = checked_log(log_n, "log n");
  const double log_r = checked_log(r_n, "r_n");
  const double core = psi_inv(profile, log_n);
  const double log_core_over_r = checked_log(core / r_n, "psi_inv(log n)/r_n");
  const double log_log_core_over_r = checked_log(log_core_over_r, "log(psi_inv(log n)/r_n)");

  RadiusSequences seq;
  seq.n = n;
  seq.r_n = r_n;
  seq.delta = delta;
  seq.A_n = log_n + d * log_r - log_log_core_over_r - delta;
  seq.B_n = log_n + (d - 1) * std::log(core) + checked_log(a_of(profile, core), "a(psi_inv(log n))") +
            log_log_n;
  seq.R_crit = psi_inv(profile, seq.A_n);
  seq.R_bar = psi_inv(profile, seq.B_n);
  return seq;
}

double default_delta(const TailProfile& profile) {
  return std::max(0.0, std::log(profile.dimension() / profile.norm_constant())) + 1.0;
}

BandwidthRegime natural_regime(const TailProfile& profile) {
  require_weibull(profile, "natural_regime");
  return profile.v() <= 1.0 ? BandwidthRegime::LightTail : BandwidthRegime::SuperExp;
}

double default_bandwidth(const TailProfile& profile, double n, BandwidthRegime regime) {
  require_weibull(profile, "default_bandwidth");
  const double log_n = checked_log(n, "n");
  if (!(log_n >= std::numbers::e)) {
    throw DomainError("default_bandwidth requires n >= e^e so that log log n >= 1");
  }
  const double log_log_n = std::log(log_n);
  const double core = psi_inv(profile, log_n);
  const double a = a_of(profile, core);
  if (regime == BandwidthRegime::LightTail) return a * std::pow(log_log_n, 1.5) / core;
  return a * std::sqrt(log_log_n);
}

double default_bandwidth(const TailProfile& profile, double n) {
  return default_bandwidth(profile, n, natural_regime(profile));
}

double bandwidth_condition_ratio(const TailProfile& profile, double n, double r_n,
                                 BandwidthRegime regime) {
  const double log_n = checked_log(n, "n");
  const double log_log_n = checked_log(log_n, "log n");
  const double core = psi_inv(profile, log_n);
  const double a = a_of(profile, core);
  if (regime == BandwidthRegime::LightTail) return a * log_log_n / (r_n * core);
  return a / r_n;
}

ValidityDiagnostics validity_diagnostics(const TailProfile& profile, const ScalingPolicy& policy,
                                         const RadiusSequences& seq) {
  const double sigma = scaling_value_at_radius(policy.with_bandwidth(seq.r_n), profile, seq.R_crit);
  ValidityDiagnostics out;
  out.noise_killing_ratio = (seq.R_bar - seq.R_crit) / sigma;
  out.nontriviality_ratio = sigma / seq.R_crit;
  return out;
}

ValidityDiagnostics validity_diagnostics(const TailProfile& profile, const ScalingPolicy& policy,
                                         double n, double r_n, double delta) {
  return validity_diagnostics(profile, policy, radius_sequences(profile, n, r_n, delta));
}

std::string to_string(TailRegime regime) {
  switch (regime) {
    case TailRegime::Subexponential: return "subexponential";
    case TailRegime::Exponential: return "exponential";
    case TailRegime::Superexponential: return "superexponential";
    case TailRegime::HeavyTail: return "heavy_tail";
  }
  return "unknown";
}

}  // namespace cracklelab
