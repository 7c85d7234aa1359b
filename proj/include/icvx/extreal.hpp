#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace icvx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when an argument violates a documented precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace diagnostics {
/// Number of times the convention (+inf) - (+inf) = +inf has been applied.
/// The function catalog never needs it, so a nonzero count flags a code path
/// worth reviewing.
std::uint64_t inf_minus_inf_count();
void reset_inf_minus_inf_count();
}  // namespace diagnostics

/**
 * A real number or +infinity.
 *
 * Arithmetic follows the conventions used throughout the library:
 *   0 * (+inf) = +inf,  (+inf) - (+inf) = +inf,  r + (+inf) = +inf.
 * There is no -infinity; an operation that would produce it throws, and
 * callers that can legitimately encounter it report ExtValue::minus_infinity.
 */
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v);  // NOLINT(google-explicit-constructor): finite values convert implicitly

  static constexpr ExtReal infinity() { return ExtReal(Inf{}); }

  [[nodiscard]] constexpr bool is_finite() const { return !inf_; }
  [[nodiscard]] constexpr bool is_infinite() const { return inf_; }

  /// The finite value; throws if +inf.
  [[nodiscard]] double value() const;
  /// The value as a double (+inf maps to HUGE_VAL).
  [[nodiscard]] constexpr double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b);
  /// Subtraction; (+inf) - (+inf) = +inf, r - (+inf) throws.
  friend ExtReal operator-(ExtReal a, ExtReal b);
  /// Scaling by a nonnegative real, with 0 * (+inf) = +inf.
  friend ExtReal operator*(double c, ExtReal x);

  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.v_ <=> b.v_;
  }

  [[nodiscard]] std::string str() const;

 private:
  struct Inf {};
  constexpr explicit ExtReal(Inf) : inf_(true) {}

  double v_ = 0.0;
  bool inf_ = false;
};

ExtReal max(ExtReal a, ExtReal b);
ExtReal min(ExtReal a, ExtReal b);

/// Outcome of an aggregate that may legitimately diverge to -infinity
/// (a divergent series, an unbounded inner infimum).
struct ExtValue {
  ExtReal value;
  bool minus_infinity = false;

  static ExtValue minus_inf() { return {ExtReal(0.0), true}; }
  static ExtValue plus_inf() { return {ExtReal::infinity(), false}; }

  [[nodiscard]] bool is_finite() const { return !minus_infinity && value.is_finite(); }
  [[nodiscard]] double to_double() const {
    return minus_infinity ? -std::numeric_limits<double>::infinity() : value.to_double();
  }
  [[nodiscard]] std::string str() const;
};

/// inf over an empty set.
inline ExtReal inf_of_empty() { return ExtReal::infinity(); }
/// sup over an empty subset of R_+.
inline double sup_of_empty_nonneg() { return 0.0; }

}  // namespace icvx
