#pragma once

#include <string>
#include <string_view>

namespace cracklelab {

enum class ScalingKind { Constant, Naive, LightTail, SuperExp, EmpiricalKNN };

/// Rule x ↦ radius. Profile-driven kinds return r_n times a scale factor of
/// φ(x) = q(x)^{-1/d}; EmpiricalKNN uses the distance to the k-th neighbour.
struct ScalingPolicy {
  ScalingKind kind = ScalingKind::Constant;
  double r_n = 1.0;
  int k = 0;  // EmpiricalKNN only

  static ScalingPolicy constant(double r_n) { return {ScalingKind::Constant, r_n, 0}; }
  static ScalingPolicy naive(double r_n) { return {ScalingKind::Naive, r_n, 0}; }
  static ScalingPolicy light_tail(double r_n) { return {ScalingKind::LightTail, r_n, 0}; }
  static ScalingPolicy super_exp(double r_n) { return {ScalingKind::SuperExp, r_n, 0}; }
  static ScalingPolicy empirical_knn(int k) { return {ScalingKind::EmpiricalKNN, 1.0, k}; }

  ScalingPolicy with_bandwidth(double bandwidth) const {
    ScalingPolicy copy = *this;
    copy.r_n = bandwidth;
    return copy;
  }

  /// Throws DomainError on r_n <= 0 or k < 1 for EmpiricalKNN.
  void validate() const;
};

std::string_view to_string(ScalingKind kind);
/// Accepts "constant", "naive", "light_tail", "super_exp", "knn".
ScalingKind parse_scaling_kind(std::string_view name);

}  // namespace cracklelab
