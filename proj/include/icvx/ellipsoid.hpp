#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "icvx/convex_fn.hpp"

namespace icvx {

/// What an objective oracle reports at a query point.
struct OracleAnswer {
  ExtReal value;
  /// A subgradient when value is finite.
  std::optional<Vec> subgradient;
  /// A halfspace containing the domain but not x, when value is +inf.
  std::optional<Halfspace> cut;
};

using Oracle = std::function<OracleAnswer(const Vec&)>;
/// Returns a halfspace violated by x when x breaks a constraint.
using FeasibilityOracle = std::function<std::optional<Halfspace>(const Vec&)>;

struct InnerProblem {
  Box box;
  Oracle objective;
  FeasibilityOracle feasibility;  // may be empty
};

struct InnerOptions {
  /// Stop when upper - lower <= tol * (1 + |upper|).
  double tol = 1e-8;
  int max_iter = 5000;
};

struct InnerResult {
  /// Best feasible objective value found (+inf if none).
  ExtReal upper = ExtReal::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  std::optional<Vec> argmin;
  int iterations = 0;
  bool converged = false;
  /// The localisation set collapsed before any feasible point was seen.
  bool infeasible = false;
};

/// Deep-cut ellipsoid method on a box. The lower bound is certified by the
/// ellipsoids: each objective cut at a feasible center x_j gives
/// f* >= f(x_j) - |L_j' g_j|.
InnerResult ellipsoid_minimize(const InnerProblem& prob, const InnerOptions& opts = {});

/// Objective oracle from a catalog function.
Oracle oracle_of(const ConvexFn& f);

}  // namespace icvx
