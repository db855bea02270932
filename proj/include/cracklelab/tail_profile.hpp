#pragma once

// Radial density families q(x) = C·e^{-ψ(|x|)} with ψ(z) = (z/τ)^v, plus the
// power-law contrast density q(x) = C/(1+|x|^α). This header carries the
// whole formula layer: ψ and its clamped inverse, a = 1/ψ', φ = q^{-1/d},
// the core/crackle radius sequences, default bandwidths and the validity
// ratios of a scaling.

#include <Eigen/Core>
#include <string>

#include "cracklelab/scaling_policy.hpp"

namespace cracklelab {

enum class TailKind { WeibullType, PowerLaw };
enum class TailRegime { Subexponential, Exponential, Superexponential, HeavyTail };

/// Immutable radial profile. Construction validates parameters and computes
/// the normalizing constant by quadrature.
class TailProfile {
 public:
  static TailProfile weibull(double v, double tau, int dimension);
  static TailProfile power_law(double alpha, int dimension);

  TailKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double v() const { return v_; }
  double tau() const { return tau_; }
  double alpha() const { return alpha_; }
  double norm_constant() const { return norm_constant_; }
  TailRegime regime() const;

  /// Unnormalized density at radius t (C omitted).
  double shape(double t) const;
  /// q at radius t.
  double density_at_radius(double t) const { return norm_constant_ * shape(t); }

  bool operator==(const TailProfile& other) const;

 private:
  TailProfile(TailKind kind, double v, double tau, double alpha, int dimension);

  TailKind kind_;
  double v_ = 0.0;
  double tau_ = 0.0;
  double alpha_ = 0.0;
  int dimension_ = 1;
  double norm_constant_ = 0.0;
};

/// Surface area of the unit sphere S^{d-1} ⊂ R^d.
double unit_sphere_area(int dimension);

double psi(const TailProfile& profile, double z);
/// max(1, τ·y^{1/v}) for y > 0, 1 otherwise.
double psi_inv(const TailProfile& profile, double y);
/// a(z) = 1/ψ'(z) = (τ^v/v)·z^{1-v}.
double a_of(const TailProfile& profile, double z);

/// Recomputes C from scratch: ∫_{R^d} C·e^{-ψ(|x|)} dx = 1 (or the power-law
/// analogue) by adaptive radial quadrature at relative tolerance 1e-10.
double norm_constant(const TailProfile& profile);

double density(const TailProfile& profile, const Eigen::Ref<const Eigen::VectorXd>& x);
double phi_at_radius(const TailProfile& profile, double radius);
/// φ(x) = q(x)^{-1/d}.
double phi(const TailProfile& profile, const Eigen::Ref<const Eigen::VectorXd>& x);

/// ∫_{|x| ≥ R} q(x) dx, relative tolerance 1e-9.
double tail_mass(const TailProfile& profile, double radius);

/// σ̂ as a function of φ: 1, φ, ψ^←(log(e+φ)) or log(e+log(1+φ)).
double scale_factor(ScalingKind kind, const TailProfile& profile, double phi_value);
/// r_n·σ̂(x). EmpiricalKNN depends on the cloud and is rejected here.
double scaling_value(const ScalingPolicy& policy, const TailProfile& profile,
                     const Eigen::Ref<const Eigen::VectorXd>& x);
double scaling_value_at_radius(const ScalingPolicy& policy, const TailProfile& profile,
                               double radius);

struct RadiusSequences {
  double n = 0.0;
  double r_n = 0.0;
  double delta = 0.0;
  double A_n = 0.0;
  double B_n = 0.0;
  double R_crit = 0.0;  // ψ^←(A_n)
  double R_bar = 0.0;   // ψ^←(B_n)
};

/// A_n = log n + d log r_n − log log(r_n^{-1} ψ^←(log n)) − δ and
/// B_n = log n + (d−1) log ψ^←(log n) + log a∘ψ^←(log n) + log log n.
/// Every inner log argument must be ≥ 1e-9; otherwise DomainError.
RadiusSequences radius_sequences(const TailProfile& profile, double n, double r_n, double delta);

/// δ = max(0, log(d/C)) + 1.
double default_delta(const TailProfile& profile);

enum class BandwidthRegime { LightTail, SuperExp };
BandwidthRegime natural_regime(const TailProfile& profile);

/// LightTail (v ≤ 1): a∘ψ^←(log n)·(log log n)^{1.5}/ψ^←(log n).
/// SuperExp (v > 1): a∘ψ^←(log n)·(log log n)^{0.5}. Requires n ≥ e^e.
double default_bandwidth(const TailProfile& profile, double n, BandwidthRegime regime);
double default_bandwidth(const TailProfile& profile, double n);

/// The o(1) quantity the bandwidth must drive to zero:
/// a∘ψ^←(log n)·log log n/(r_n ψ^←(log n)) for LightTail,
/// a∘ψ^←(log n)/r_n for SuperExp.
double bandwidth_condition_ratio(const TailProfile& profile, double n, double r_n,
                                 BandwidthRegime regime);

struct ValidityDiagnostics {
  double noise_killing_ratio = 0.0;  // (R̄ − R^c)/(r_n σ̂(R^c))
  double nontriviality_ratio = 0.0;  // r_n σ̂(R^c)/R^c
};

ValidityDiagnostics validity_diagnostics(const TailProfile& profile, const ScalingPolicy& policy,
                                         double n, double r_n, double delta);
ValidityDiagnostics validity_diagnostics(const TailProfile& profile, const ScalingPolicy& policy,
                                         const RadiusSequences& sequences);

std::string to_string(TailRegime regime);

}  // namespace cracklelab
