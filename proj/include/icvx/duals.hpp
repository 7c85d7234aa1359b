#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "icvx/primal.hpp"

namespace icvx {

enum class SpaceTag { Haar, L1, Linf };
std::string to_string(SpaceTag t);

/**
 * Dual variable: finitely many explicit values lambda_1..lambda_N, a constant
 * tail value for k > N (Linf only) and lambda_inf (L1 only).
 */
struct Multiplier {
  std::vector<double> support;
  double tail_value = 0.0;
  double lambda_inf = 0.0;
  SpaceTag tag = SpaceTag::L1;

  /// Throws Error when the fields break the invariants of the tag.
  void validate() const;
  [[nodiscard]] double at(long long k) const;
  [[nodiscard]] double support_sum() const;
};

enum class DualForm { Haar, D, Dm };
std::string to_string(DualForm f);

/// Haar: f0 + sum lambda_k f_k. L1: adds lambda_inf f_inf. Linf: plain terms
/// for k <= m and positive parts for k > m, tail value for k > N.
SeriesObjective assemble_lagrangian(const Instance& inst, const Multiplier& mult, int m = 0);

/// Dual function: g(mult) = inf over the box of the assembled Lagrangian.
ValueReport dual_value(const Instance& inst, const Multiplier& mult, int m = 0, const SolveOptions& opts = {});

/// lambda-hat = (lambda_1..lambda_m, lambda_{m+1} + lambda_inf + alpha, ...),
/// alpha = 0 if lambda_inf > 0 and 1 otherwise.
Multiplier transfer_D_to_Dm(const Multiplier& mult, int m);

// ---------------------------------------------------------------------------
// Outer maximisation.

/// Value of a concave function at y together with an affine majorant
/// y -> cut_const + <slopes, y> touching it there.
struct ConcaveEval {
  ExtValue value;
  bool has_cut = false;
  double cut_const = 0.0;
  Vec slopes;
};
using ConcaveOracle = std::function<ConcaveEval(const Vec&)>;

struct KelleyProblem {
  ConcaveOracle oracle;
  Vec lo;
  Vec hi;
  /// Extra linear rows A y <= b (must hold at y = lo).
  Mat A;
  Vec b;
  /// Known upper bound on the maximum (e.g. a primal value).
  double upper_cap = std::numeric_limits<double>::infinity();
  std::vector<Vec> warm;
};

struct KelleyResult {
  Vec best_y;
  ExtValue best_value = ExtValue::minus_inf();
  double upper = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Kelley's cutting-plane method over a box with extra rows.
KelleyResult kelley_maximize(const KelleyProblem& p, double tol, int max_iter);

/// Projected supergradient ascent with step eta0/sqrt(j), best iterate kept.
KelleyResult supergradient_maximize(const KelleyProblem& p, double eta0, int iters);

struct DualOptions {
  enum class Method { CuttingPlane, Supergradient };
  int horizon = 32;
  double tol = 1e-7;
  int max_outer = 400;
  double multiplier_bound = 1e4;
  Method method = Method::CuttingPlane;
  int supergradient_iters = 2000;
  double eta0 = 1.0;
  SolveOptions inner;
  /// Try multipliers recovered from the primal KKT system as a warm start.
  bool kkt_warm_start = true;
  /// Primal value used as an upper cap; computed when absent.
  std::optional<ExtValue> primal_value;
};

struct DualResult {
  ValueReport report;
  Multiplier mult;
  /// Upper bound on the dual optimum from the cutting-plane model.
  double upper = std::numeric_limits<double>::infinity();
  int outer_iterations = 0;
  std::vector<std::string> flags;
};

/// Maximise the chosen dual. For D_m the multiplier prefix has length
/// max(N, m) and a free tail value.
DualResult solve_dual(const Instance& inst, DualForm form, int m, const DualOptions& opts = {},
                      const std::vector<Multiplier>& warm = {});

/// Multipliers recovered at a primal point from the active constraints.
std::optional<Multiplier> kkt_multiplier(const Instance& inst, const Vec& x, int horizon, bool with_lambda_inf,
                                         double active_tol = 1e-6);

struct ChainEntry {
  std::string name;
  ExtValue value;
  std::optional<Multiplier> mult;
};
struct ChainReport {
  ExtValue primal;
  std::optional<Vec> primal_argmin;
  DualResult haar;
  DualResult d;
  std::vector<std::pair<int, DualResult>> dm;
  ScanReport scan;
  bool ordered = true;
  bool scan_below_d = true;
  std::vector<std::string> violations;
};
ChainReport duality_chain_report(const Instance& inst, const std::vector<int>& m_list, const DualOptions& opts = {},
                                 const std::vector<double>& scan_eps = {1.0, 0.5, 0.1, 0.01});

struct MinimaxReport {
  ExtValue lhs;
  std::optional<Vec> lhs_point;
  ExtValue rhs;
  Multiplier witness;
  double gap = 0.0;
  bool holds = false;
};
/// inf_box sup_k f_k versus max over the simplex {sum lambda_k + lambda_inf = 1}
/// of inf_box (sum lambda_k f_k + lambda_inf f_inf).
MinimaxReport minimax_check(const ConstraintFamily& fam, const Box& box, int N, double tol = 1e-6,
                            const DualOptions& opts = {});

}  // namespace icvx
