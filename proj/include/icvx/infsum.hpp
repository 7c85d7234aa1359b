#pragma once

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "icvx/convex_fn.hpp"

namespace icvx {

namespace tail {
/// Finite family: indices beyond the prefix do not exist.
struct None {};
/// f_k = f for every k past the prefix.
struct Constant {
  ConvexFn f;
};
/// f_k(x) = <c + d/k, x> + e + g/k for every k past the prefix.
struct RationalAffine {
  Vec c;
  Vec d;
  double e = 0.0;
  double g = 0.0;
};
}  // namespace tail

using Tail = std::variant<tail::None, tail::Constant, tail::RationalAffine>;

/// Countable constraint family k -> f_k, k = 1, 2, ...
class ConstraintFamily {
 public:
  ConstraintFamily(int dim, std::vector<ConvexFn> prefix, Tail tail);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int prefix_size() const { return static_cast<int>(prefix_.size()); }
  [[nodiscard]] const std::vector<ConvexFn>& prefix() const { return prefix_; }
  [[nodiscard]] const Tail& tail() const { return tail_; }
  [[nodiscard]] bool has_tail() const { return !std::holds_alternative<tail::None>(tail_); }
  /// Number of indices (infinite when a tail exists).
  [[nodiscard]] bool has_index(long long k) const { return k >= 1 && (has_tail() || k <= prefix_size()); }

  /// f_k as a catalog function (1-based index).
  [[nodiscard]] ConvexFn at(long long k) const;
  [[nodiscard]] ExtReal eval(long long k, const Vec& x) const;
  [[nodiscard]] std::optional<Vec> subgradient(long long k, const Vec& x) const;

  /// limsup_k f_k(x); throws Error for a finite family.
  [[nodiscard]] ExtReal f_infinity(const Vec& x) const;
  [[nodiscard]] ConvexFn f_infinity_fn() const;

  /// Exact sup_{k > P} f_k(x) (P = prefix size); -inf for a finite family is
  /// reported as nullopt.
  [[nodiscard]] std::optional<ExtReal> tail_sup(const Vec& x) const;
  /// Exact sup_k f_k(x) together with the index attaining it (0 means the
  /// limit f_inf is only approached).
  struct SupValue {
    ExtReal value;
    long long index = 0;
  };
  [[nodiscard]] SupValue sup(const Vec& x) const;
  /// A subgradient of x -> sup_k f_k(x); nullopt if the sup is +inf.
  [[nodiscard]] std::optional<Vec> sup_subgradient(const Vec& x) const;

 private:
  int dim_;
  std::vector<ConvexFn> prefix_;
  Tail tail_;
};

/// f_inf of the family at x; throws Error "f_inf undefined" for a finite family.
ExtReal f_infinity(const ConstraintFamily& fam, const Vec& x);

/**
 * Weights of a multiplier-weighted series sum_k w_k phi_k, with
 * w_k = weights[k-1] for k <= weights.size() and w_k = tail_weight beyond.
 * phi_k = f_k for k < positive_from and f_k^+ = max(f_k, 0) otherwise.
 */
struct WeightedSeries {
  std::vector<double> weights;
  double tail_weight = 0.0;
  long long positive_from = std::numeric_limits<long long>::max();

  [[nodiscard]] double weight(long long k) const {
    return k <= static_cast<long long>(weights.size()) ? weights[static_cast<std::size_t>(k - 1)]
                                                       : tail_weight;
  }
};

/// Partial sums beyond this magnitude are reported as +inf.
inline constexpr double kDivergenceCap = 1e12;

/// H_n = 1 + 1/2 + ... + 1/n (H_0 = 0).
double harmonic(long long n);

/**
 * Upper limit of the partial sums sum_{k=j+1}^n w_k phi_k(x) as n -> inf, in
 * closed form. A zero weight multiplies +inf to +inf. Divergence to -inf is
 * reported as ExtValue::minus_infinity.
 */
ExtValue upper_sum(const ConstraintFamily& fam, const WeightedSeries& s, const Vec& x,
                   long long j = 0);

/// The first n partial sums (k = j+1 .. j+i for i = 1..n), by direct summation.
std::vector<ExtReal> partial_sums(const ConstraintFamily& fam, const WeightedSeries& s,
                                  const Vec& x, long long n, long long j = 0);

/**
 * A subgradient of x -> upper_sum(fam, s, x) at a point where it is finite.
 * Only defined when each analytic tail sum is finite near x from one side;
 * returns nullopt where the series is +inf.
 */
std::optional<Vec> upper_sum_subgradient(const ConstraintFamily& fam, const WeightedSeries& s,
                                         const Vec& x);

/// Halfspace separating x from the set where the series is finite, if x lies
/// outside it.
std::optional<Halfspace> upper_sum_domain_cut(const ConstraintFamily& fam, const WeightedSeries& s,
                                              const Vec& x);

}  // namespace icvx
