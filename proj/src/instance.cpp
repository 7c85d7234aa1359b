#include "icvx/instance.hpp"

namespace icvx {

Instance::Instance(std::string name_, Box box_, ConvexFn f0_, ConstraintFamily family_, bool slater)
    : name(std::move(name_)),
      dim(box_.dim()),
      box(std::move(box_)),
      f0(std::move(f0_)),
      family(std::move(family_)),
      slater_expected(slater) {
  if (dim < 1 || dim > 3) throw Error("Instance: dimension must be 1, 2 or 3");
  if (box.hi.size() != dim) throw Error("Instance: box lo/hi size mismatch");
  for (int i = 0; i < dim; ++i)
    if (!(box.lo[i] < box.hi[i])) throw Error("Instance: box must have lo < hi");
  if (f0.dim() != dim) throw Error("Instance: objective has wrong dimension");
  if (family.dim() != dim) throw Error("Instance: constraints have wrong dimension");
}

SeriesObjective::SeriesObjective(ConvexFn f0, ConstraintFamily fam, WeightedSeries series,
                                 std::optional<double> lambda_inf)
    : f0_(std::move(f0)), fam_(std::move(fam)), series_(std::move(series)), lambda_inf_(lambda_inf) {
  if (lambda_inf_ && !(*lambda_inf_ >= 0.0)) throw Error("SeriesObjective: lambda_inf must be >= 0");
  if (lambda_inf_ && !fam_.has_tail()) throw Error("SeriesObjective: lambda_inf needs a family with a tail");
}

ExtValue SeriesObjective::eval(const Vec& x) const {
  const ExtReal a = f0_.eval(x);
  if (a.is_infinite()) return ExtValue::plus_inf();
  ExtReal li = 0.0;
  if (lambda_inf_) {
    li = *lambda_inf_ * fam_.f_infinity(x);
    if (li.is_infinite()) return ExtValue::plus_inf();
  }
  const ExtValue s = upper_sum(fam_, series_, x);
  if (s.minus_infinity || s.value.is_infinite()) return s;
  return {a + s.value + li, false};
}

std::optional<Vec> SeriesObjective::subgradient(const Vec& x) const {
  auto g = f0_.subgradient(x);
  if (!g) return std::nullopt;
  auto gs = upper_sum_subgradient(fam_, series_, x);
  if (!gs) return std::nullopt;
  Vec out = *g + *gs;
  if (lambda_inf_ && *lambda_inf_ > 0.0) {
    auto gi = fam_.f_infinity_fn().subgradient(x);
    if (!gi) return std::nullopt;
    out += *lambda_inf_ * *gi;
  }
  return out;
}

std::optional<Halfspace> SeriesObjective::domain_cut(const Vec& x) const {
  if (f0_.eval(x).is_infinite()) return f0_.domain_cut(x);
  if (lambda_inf_) {
    const ConvexFn finf = fam_.f_infinity_fn();
    if (finf.eval(x).is_infinite()) return finf.domain_cut(x);
  }
  return upper_sum_domain_cut(fam_, series_, x);
}

}  // namespace icvx
