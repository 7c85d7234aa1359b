#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icvx/duals.hpp"

namespace icvx {

struct SlacknessReport {
  bool pass = false;
  double max_violation = 0.0;
  /// (k, lambda_k f_k(x_bar)); k = 0 stands for the f_inf term.
  std::vector<std::pair<long long, double>> products;
};

/// L1/Haar: lambda_k f_k(x_bar) = 0 for every supported k (and the f_inf term
/// for L1). Linf: only k = 1..m. Throws Error when x_bar is infeasible by
/// more than tol.
SlacknessReport complementary_slackness(const Instance& inst, const Vec& x_bar, const Multiplier& mult,
                                        std::optional<int> m = std::nullopt, double tol = 1e-9);

struct AttainmentReport {
  bool pass = false;
  ExtValue lagrangian_at_xbar;
  ExtValue inner_inf;
  double f0_at_xbar = 0.0;
  /// max(L(x_bar) - inf L, |L(x_bar) - f0(x_bar)|).
  double residual = 0.0;
};
AttainmentReport lagrangian_attainment(const Instance& inst, const Vec& x_bar, const Multiplier& mult,
                                       std::optional<int> m = std::nullopt, double tol = 1e-7,
                                       const SolveOptions& opts = {});

/// One term of a fuzzy multiplier certificate.
struct FuzzyTerm {
  /// 0: objective; k >= 1: constraint k; -1: the f_inf term.
  long long index = 0;
  double weight = 1.0;
  bool positive_part = false;
  Vec point;
};

struct FuzzyCertificate {
  bool found = false;
  /// "", "budget_exhausted" or "hypothesis_violated".
  std::string failure;
  std::string form;
  int m = 0;
  double eps = 0.0;
  int n = 0;
  Vec x_bar;
  std::vector<FuzzyTerm> terms;
  double min_norm = std::numeric_limits<double>::infinity();
  Vec min_norm_vector;
  /// f0(x_0) + sum of the weighted terms, and the bound f0(x_bar).
  double sum_lhs = 0.0;
  double sum_rhs = 0.0;
  bool all_at_xbar = false;
  bool slater_holds = false;
  int candidates_tried = 0;
};

struct FuzzyOptions {
  /// Slack allowed in the sum condition.
  double sum_tol = 1e-9;
  int budget = 10000;
  /// Use exactly this n instead of the default candidates.
  std::optional<int> fixed_n;
  /// Largest n tried when extending the default candidates by doubling.
  int max_n = 4096;
  bool check_slater = true;
};

/// Searches for n > M and points in the eps-ball of x_bar with the sum
/// condition and 0 in sum of weighted subdifferentials + eps B.
FuzzyCertificate fuzzy_kkt_D(const Instance& inst, const Vec& x_bar, const Multiplier& mult, double eps, int M,
                             const FuzzyOptions& opts = {});
/// Same for (D_m): plain subdifferentials for k <= m, of f_k^+ beyond.
FuzzyCertificate fuzzy_kkt_Dm(const Instance& inst, const Vec& x_bar, const Multiplier& mult, int m, double eps,
                              int M, const FuzzyOptions& opts = {});

struct RecheckResult {
  double min_norm = 0.0;
  double sum_lhs = 0.0;
  bool in_ball = true;
  bool pass = false;
};
/// Recomputes the residuals of a certificate from its terms alone.
RecheckResult recheck_certificate(const Instance& inst, const FuzzyCertificate& cert, double eps);

}  // namespace icvx
