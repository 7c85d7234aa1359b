#pragma once

#include <string>

#include "icvx/infsum.hpp"

namespace icvx {

/// minimize f0(x) over x in box subject to f_k(x) <= 0 for every k.
struct Instance {
  std::string name;
  int dim = 0;
  Box box;
  ConvexFn f0;
  ConstraintFamily family;
  /// False for instances that deliberately violate the Slater condition.
  bool slater_expected = true;

  Instance(std::string name, Box box, ConvexFn f0, ConstraintFamily family, bool slater_expected = true);
};

/**
 * f0 + sum_k w_k phi_k + lambda_inf * f_inf: a Lagrangian with its series
 * part evaluated in closed form.
 */
class SeriesObjective {
 public:
  SeriesObjective(ConvexFn f0, ConstraintFamily fam, WeightedSeries series,
                  std::optional<double> lambda_inf);

  [[nodiscard]] int dim() const { return f0_.dim(); }
  [[nodiscard]] const WeightedSeries& series() const { return series_; }
  [[nodiscard]] const ConstraintFamily& family() const { return fam_; }
  [[nodiscard]] const ConvexFn& f0() const { return f0_; }
  [[nodiscard]] std::optional<double> lambda_inf() const { return lambda_inf_; }

  /// Value; ExtValue::minus_infinity when the series diverges to -inf.
  [[nodiscard]] ExtValue eval(const Vec& x) const;
  [[nodiscard]] std::optional<Vec> subgradient(const Vec& x) const;
  [[nodiscard]] std::optional<Halfspace> domain_cut(const Vec& x) const;

 private:
  ConvexFn f0_;
  ConstraintFamily fam_;
  WeightedSeries series_;
  std::optional<double> lambda_inf_;
};

}  // namespace icvx
