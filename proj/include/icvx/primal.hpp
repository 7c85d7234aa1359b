#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icvx/ellipsoid.hpp"
#include "icvx/instance.hpp"

namespace icvx {

struct ValueReport {
  ExtValue value;
  std::optional<Vec> argmin;
  /// Certified lower bound from the inner solver (-inf if none).
  double lower_bound = -std::numeric_limits<double>::infinity();
  std::map<std::string, double> residuals;
  int iterations = 0;
  std::vector<std::string> flags;

  [[nodiscard]] bool has_flag(const std::string& f) const;
};

struct SolveOptions {
  double tol = 1e-9;
  int max_iter = 5000;
  /// Values below this are reported as -inf.
  double unbounded_threshold = -1e10;
  /// Enlargements tried on an artificial box before declaring -inf.
  int box_enlargements = 3;
  double enlarge_factor = 10.0;
};

/**
 * v(eps) = inf f0 over the box subject to f_k <= eps for all k. The tail is
 * replaced by the exact finite system {f_{P+1} <= eps, f_inf <= eps} (plus
 * f_k for P < k <= K_trunc), which has the same feasible set.
 */
ValueReport solve_primal(const Instance& inst, double eps, int K_trunc = 1, const SolveOptions& opts = {});

struct SlaterReport {
  bool holds = false;
  std::optional<Vec> witness;
  /// min over box and dom f0 of sup_k f_k.
  ExtReal min_sup;
};
SlaterReport slater_check(const Instance& inst, const SolveOptions& opts = {});

/// inf over the box of L; -inf detected through the artificial-box fallback
/// or the unbounded threshold.
ValueReport minimize_lagrangian(const Instance& inst, const SeriesObjective& L, const SolveOptions& opts = {});
/// Same, on a given box and without the artificial-box fallback.
ValueReport minimize_lagrangian_on(const Box& box, const SeriesObjective& L, const SolveOptions& opts = {});

struct ScanPoint {
  double eps = 0.0;
  ExtValue value;
};
struct ScanReport {
  std::vector<ScanPoint> points;
  /// Extrapolated limit at eps -> 0+, a proxy for (cl v)(0).
  ExtValue limit;
  ExtValue v0;
  bool monotone = true;
  /// limit differs from v(0) by more than the tolerance.
  bool jump = false;
};
/// eps_list must be positive and decreasing.
ScanReport value_function_scan(const Instance& inst, const std::vector<double>& eps_list,
                               const SolveOptions& opts = {});

struct GridResult {
  ExtReal value = ExtReal::infinity();
  std::optional<Vec> argmin;
};
/// Adaptive grid search (dim <= 2): each level refines around the best point
/// found so far. Ties go to the lexicographically smallest point.
GridResult grid_minimize(const Box& box, const std::function<ExtReal(const Vec&)>& f, int levels = 3,
                         int points_per_axis = 64);

}  // namespace icvx
