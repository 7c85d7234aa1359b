#pragma once

#include "icvx/extreal.hpp"

namespace icvx {

struct LpResult {
  enum Status { Optimal, Unbounded, IterationLimit } status = Optimal;
  Vec x;
  double value = 0.0;
  int pivots = 0;
};

/// maximize c'x subject to A x <= b, x >= 0, for b >= 0 (so x = 0 is
/// feasible). Dense condensed-tableau simplex; Dantzig pricing with a switch
/// to Bland's rule when pivots stall.
LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b, int max_pivots = 200000);

}  // namespace icvx
