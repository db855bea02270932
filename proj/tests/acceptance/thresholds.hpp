#pragma once

// Pass thresholds for the acceptance runner. Monte Carlo thresholds were
// fixed before the pilot runs; change them only with a recorded reason.

#include <array>
#include <cstdint>

namespace cracklelab::acceptance {

inline constexpr std::uint64_t kMasterSeed = 20240601;

// 1: formula layer
inline constexpr std::array<double, 3> kFormulaV{0.5, 1.0, 2.0};
inline constexpr std::array<int, 2> kFormulaD{1, 2};
inline constexpr double kPsiIdentityTol = 1e-12;
inline constexpr double kDerivativeRelTol = 1e-6;
inline constexpr double kDerivativeZMin = 5.0;
inline constexpr double kDerivativeZMax = 500.0;
inline constexpr double kNormConstantTol = 1e-8;
inline constexpr double kFormulaSeconds = 5.0;

// 2: asymptotic trends
inline constexpr std::array<double, 4> kAsymptoticGrid{1e3, 1e6, 1e9, 1e12};
inline constexpr double kValidRatioCeiling = 0.2;
inline constexpr double kNaiveNontrivialityFloor = 0.5;
inline constexpr double kAsymptoticSeconds = 5.0;

// 3: geometry
inline constexpr int kBallInstances = 1000;
inline constexpr double kBallToleranceBand = 1e-9;
inline constexpr double kEquilateralTol = 1e-8;
inline constexpr int kNestingClouds = 100;
inline constexpr int kNestingPoints = 10;
inline constexpr double kGeometrySeconds = 60.0;

// 4: homology
inline constexpr int kRandomComplexes = 200;
inline constexpr int kRandomComplexVertices = 7;
inline constexpr int kConeComplexes = 100;
inline constexpr double kHomologySeconds = 60.0;

// 5: void probability
inline constexpr double kVoidN = 1e4;
inline constexpr int kVoidTrials = 200;
inline constexpr double kVoidTolerance = 0.1;
inline constexpr double kVoidSeconds = 600.0;

// 6-8: Monte Carlo
inline constexpr std::array<double, 4> kDecrackleGrid{1000.0, 2000.0, 4000.0, 8000.0};
inline constexpr int kDecrackleTrials = 50;
inline constexpr double kChainHoldsFloor = 0.9;
inline constexpr double kTrivialHomologyFloor = 0.9;
inline constexpr double kSuperExpN = 8000.0;
inline constexpr double kMonteCarloSeconds = 1800.0;

}  // namespace cracklelab::acceptance
