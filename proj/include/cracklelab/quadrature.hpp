#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite and semi-infinite
// intervals. Subdivision is global: the interval with the largest error
// estimate is bisected until the summed estimate meets the tolerance.

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "cracklelab/errors.hpp"

namespace cracklelab::quadrature {

namespace detail {

// Kronrod nodes (positive half, descending) and weights; Gauss weights apply to
// the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment kronrod15(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

struct Result {
  double value = 0.0;
  double error = 0.0;
  int segments = 0;
};

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_segments = 4000;
};

/// Single 15-point Kronrod rule; used for short subintervals where adaptivity
/// is unnecessary.
template <typename F>
double kronrod15(F&& f, double lo, double hi) {
  return detail::kronrod15(f, lo, hi).value;
}

/// ∫_lo^hi f. Throws QuadratureError when the tolerance is not met within
/// `max_segments` subdivisions.
template <typename F>
Result integrate(F&& f, double lo, double hi, const Options& opt = {}) {
  std::priority_queue<detail::Segment> heap;
  auto first = detail::kronrod15(f, lo, hi);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int segments = 1;
  auto converged = [&] {
    return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  };
  while (!converged()) {
    if (segments >= opt.max_segments) {
      throw QuadratureError("quadrature did not converge: estimate " + std::to_string(total) +
                            " with error " + std::to_string(total_err) + " after " +
                            std::to_string(segments) + " segments");
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::kronrod15(f, worst.lo, mid);
    auto right = detail::kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
    // Guard against accumulated cancellation drift in the running sums.
    if (segments % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_err, segments};
}

/// ∫_lo^∞ f, via the substitution t = lo + s/(1-s) on s ∈ [0,1).
template <typename F>
Result integrate_to_infinity(F&& f, double lo, const Options& opt = {}) {
  auto mapped = [&](double s) {
    if (s >= 1.0) return 0.0;
    const double one_minus = 1.0 - s;
    const double t = lo + s / one_minus;
    const double value = f(t);
    if (value == 0.0) return 0.0;
    return value / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace cracklelab::quadrature
