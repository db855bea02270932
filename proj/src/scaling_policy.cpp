#include "cracklelab/scaling_policy.hpp"

#include <cmath>
#include <string>

#include "cracklelab/errors.hpp"

namespace cracklelab {

void ScalingPolicy::validate() const {
  if (kind == ScalingKind::EmpiricalKNN) {
    if (k < 1) throw DomainError("knn scaling requires k >= 1, got " + std::to_string(k));
    return;
  }
  if (!(r_n > 0.0) || !std::isfinite(r_n)) {
    throw DomainError("bandwidth r_n must be positive and finite, got " + std::to_string(r_n));
  }
}

std::string_view to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::Constant: return "constant";
    case ScalingKind::Naive: return "naive";
    case ScalingKind::LightTail: return "light_tail";
    case ScalingKind::SuperExp: return "super_exp";
    case ScalingKind::EmpiricalKNN: return "knn";
  }
  return "unknown";
}

ScalingKind parse_scaling_kind(std::string_view name) {
  if (name == "constant") return ScalingKind::Constant;
  if (name == "naive") return ScalingKind::Naive;
  if (name == "light_tail") return ScalingKind::LightTail;
  if (name == "super_exp") return ScalingKind::SuperExp;
  if (name == "knn") return ScalingKind::EmpiricalKNN;
  throw ConfigError("unknown scaling kind '" + std::string(name) +
                    "' (expected constant, naive, light_tail, super_exp or knn)");
}

}  // namespace cracklelab
