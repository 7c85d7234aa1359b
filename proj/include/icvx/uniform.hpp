#pragma once

#include <span>
#include <vector>

#include "icvx/convex_fn.hpp"

namespace icvx {

// Grid diagnostics for the uniform infimum Lambda_U and the firm quantity
// Theta_U of a finite list of functions. These are heuristics: the double
// limit is replaced by a grid and an extrapolation in the window size h.

struct UniformGrid {
  /// Grid points per axis (including both ends of the box).
  int points_per_axis = 41;
};

struct UniformTracePoint {
  double h = 0.0;
  /// Value at window size h; +inf when no admissible tuple exists or every
  /// tuple gives +inf.
  ExtReal value;
};

struct UniformEstimate {
  /// Extrapolated value at h = 0 (+inf when the trace stays infinite or the
  /// estimate exceeds the divergence cap).
  ExtReal estimate;
  std::vector<UniformTracePoint> trace;
  /// min over grid points x of sum_t f_t(x).
  ExtReal grid_inf_sum;
  /// True when the raw estimate was clamped (Lambda above grid_inf_sum, or
  /// Theta below 0).
  bool clamped = false;
  /// Grid spacing per axis.
  double spacing = 0.0;
};

/// Lambda_h = inf over grid tuples (x_t), t < S_max, with sup-norm diameter
/// <= h, of sum_t f_t(x_t). h_grid must be decreasing and positive.
UniformEstimate lambda_uniform_infimum(std::span<const ConvexFn> fns, const Box& U, int s_max,
                                       std::span<const double> h_grid, UniformGrid grid = {});

/// Theta_h = sup over grid tuples in the domains with diameter <= h of
/// inf over grid x in U of max(max_t |x - x_t|, F(x) - sum_t f_t(x_t)),
/// where F = sum of all the functions in `fns`.
UniformEstimate theta_firm_estimate(std::span<const ConvexFn> fns, const Box& U, int s_max,
                                    std::span<const double> h_grid, UniformGrid grid = {});

}  // namespace icvx
