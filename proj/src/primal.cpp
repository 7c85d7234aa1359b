#include "icvx/primal.hpp"

#include <algorithm>
#include <cmath>

namespace icvx {

bool ValueReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

namespace {

using ProblemFactory = std::function<InnerProblem(const Box&)>;

ValueReport from_inner(const InnerResult& r, const SolveOptions& opts) {
  ValueReport v;
  v.iterations = r.iterations;
  v.lower_bound = r.lower;
  if (!r.argmin) {
    v.value = ExtValue::plus_inf();
    v.flags.push_back(r.infeasible ? "infeasible" : "no_feasible_point_found");
    return v;
  }
  v.argmin = r.argmin;
  const double ub = r.upper.value();
  v.residuals["gap"] = ub - r.lower;
  if (!r.converged) v.flags.push_back("iteration_cap");
  if (ub < opts.unbounded_threshold || (r.converged && r.lower < opts.unbounded_threshold)) {
    v.value = ExtValue::minus_inf();
    v.flags.push_back("unbounded_threshold");
  } else {
    v.value = {ub, false};
  }
  return v;
}

ValueReport solve_with_fallback(const Box& box, const ProblemFactory& make, const SolveOptions& opts) {
  const InnerOptions io{opts.tol, opts.max_iter};
  ValueReport rep = from_inner(ellipsoid_minimize(make(box), io), opts);
  if (!box.artificial || !rep.value.is_finite()) return rep;

  Box cur = box;
  ValueReport last = rep;
  for (int e = 0; e < opts.box_enlargements; ++e) {
    cur = cur.scaled(opts.enlarge_factor);
    ValueReport next = from_inner(ellipsoid_minimize(make(cur), io), opts);
    if (next.value.minus_infinity) {
      next.flags.push_back("unbounded_on_enlarged_box");
      return next;
    }
    if (!next.value.is_finite()) return rep;
    const double v0 = last.value.value.value();
    const double v1 = next.value.value.value();
    const double thr = std::max(1e-6 * (1.0 + std::abs(v0)), 10.0 * opts.tol * (1.0 + std::abs(v0)));
    if (v1 >= v0 - thr) {
      rep.residuals["box_growth_drop"] = v0 - v1;
      return rep;
    }
    last = std::move(next);
  }
  ValueReport out = last;
  out.value = ExtValue::minus_inf();
  out.flags.push_back("unbounded_on_enlarged_box");
  return out;
}

// Constraint system f <= eps for a list of functions.
FeasibilityOracle system_oracle(std::vector<ConvexFn> fns, double eps, double feas_tol) {
  return [fns = std::move(fns), eps, feas_tol](const Vec& x) -> std::optional<Halfspace> {
    double worst = feas_tol;
    std::optional<Halfspace> cut;
    for (const auto& f : fns) {
      const ExtReal v = f.eval(x);
      if (v.is_infinite()) return f.domain_cut(x);
      const double over = v.value() - eps;
      if (over > worst) {
        auto g = f.subgradient(x);
        if (!g) continue;
        worst = over;
        // f(x) + <g, y - x> <= eps
        cut = Halfspace{*g, g->dot(x) - v.value() + eps};
      }
    }
    return cut;
  };
}

std::vector<ConvexFn> exact_system(const ConstraintFamily& fam, int K_trunc) {
  std::vector<ConvexFn> out = fam.prefix();
  const int P = fam.prefix_size();
  if (const auto* c = std::get_if<tail::Constant>(&fam.tail())) {
    out.push_back(c->f);
  } else if (std::holds_alternative<tail::RationalAffine>(fam.tail())) {
    for (long long k = P + 1; k <= std::max<long long>(K_trunc, P + 1); ++k) out.push_back(fam.at(k));
    out.push_back(fam.f_infinity_fn());
  }
  return out;
}

Oracle series_oracle(const SeriesObjective& L) {
  return [L](const Vec& x) {
    OracleAnswer a;
    const ExtValue v = L.eval(x);
    if (v.minus_infinity) {
      // Only reachable for plain (not positive-part) divergent tails.
      a.value = -1e300;
      a.subgradient = Vec::Zero(x.size());
      return a;
    }
    a.value = v.value;
    if (v.value.is_infinite())
      a.cut = L.domain_cut(x);
    else
      a.subgradient = L.subgradient(x);
    if (a.value.is_finite() && !a.subgradient) {
      a.value = ExtReal::infinity();
      a.cut = L.domain_cut(x);
    }
    return a;
  };
}

}  // namespace

ValueReport solve_primal(const Instance& inst, double eps, int K_trunc, const SolveOptions& opts) {
  if (K_trunc < 1) throw Error("solve_primal: K_trunc must be >= 1");
  if (!std::isfinite(eps)) throw Error("solve_primal: eps must be finite");
  const auto sys = exact_system(inst.family, K_trunc);
  const Oracle obj = oracle_of(inst.f0);
  const FeasibilityOracle feas = system_oracle(sys, eps, 1e-12);
  ValueReport r = solve_with_fallback(
      inst.box, [&](const Box& b) { return InnerProblem{b, obj, feas}; }, opts);
  if (r.argmin) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : sys) worst = std::max(worst, f.eval(*r.argmin).to_double() - eps);
    r.residuals["max_violation"] = std::max(0.0, worst);
  }
  return r;
}

SlaterReport slater_check(const Instance& inst, const SolveOptions& opts) {
  const ConstraintFamily& fam = inst.family;
  SlaterReport rep;
  if (fam.prefix_size() == 0 && !fam.has_tail()) {
    // Empty system: sup over no constraints is -inf.
    GridResult g = grid_minimize(inst.box, [&](const Vec& x) { return inst.f0.eval(x); }, 1, 9);
    rep.holds = g.argmin.has_value() && g.value.is_finite();
    rep.witness = g.argmin;
    rep.min_sup = -1e300;
    return rep;
  }
  const Oracle sup_oracle = [&fam](const Vec& x) {
    OracleAnswer a;
    const auto s = fam.sup(x);
    a.value = s.value;
    if (s.value.is_infinite()) {
      for (int k = 1; k <= fam.prefix_size(); ++k)
        if (fam.eval(k, x).is_infinite()) {
          a.cut = fam.at(k).domain_cut(x);
          return a;
        }
      a.cut = fam.at(fam.prefix_size() + 1).domain_cut(x);
      return a;
    }
    a.subgradient = fam.sup_subgradient(x);
    return a;
  };
  const ConvexFn& f0 = inst.f0;
  const FeasibilityOracle dom0 = [&f0](const Vec& x) -> std::optional<Halfspace> {
    if (f0.eval(x).is_finite()) return std::nullopt;
    return f0.domain_cut(x);
  };
  SolveOptions o = opts;
  o.box_enlargements = 0;
  const InnerResult r = ellipsoid_minimize(InnerProblem{inst.box, sup_oracle, dom0}, {o.tol, o.max_iter});
  rep.min_sup = r.argmin ? r.upper : ExtReal::infinity();
  if (r.argmin && r.upper.value() < -1e-12) {
    rep.holds = true;
    rep.witness = r.argmin;
  }
  return rep;
}

ValueReport minimize_lagrangian_on(const Box& box, const SeriesObjective& L, const SolveOptions& opts) {
  if (L.dim() != box.dim()) throw Error("minimize_lagrangian: dimension mismatch");
  Box b = box;
  b.artificial = false;
  return solve_with_fallback(b, [o = series_oracle(L)](const Box& bb) { return InnerProblem{bb, o, {}}; }, opts);
}

ValueReport minimize_lagrangian(const Instance& inst, const SeriesObjective& L, const SolveOptions& opts) {
  if (L.dim() != inst.dim) throw Error("minimize_lagrangian: dimension mismatch");
  return solve_with_fallback(
      inst.box, [o = series_oracle(L)](const Box& bb) { return InnerProblem{bb, o, {}}; }, opts);
}

ScanReport value_function_scan(const Instance& inst, const std::vector<double>& eps_list,
                               const SolveOptions& opts) {
  if (eps_list.empty()) throw Error("value_function_scan: empty eps list");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw Error("value_function_scan: eps must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw Error("value_function_scan: eps must decrease");
  }
  ScanReport rep;
  for (double e : eps_list) rep.points.push_back({e, solve_primal(inst, e, 1, opts).value});
  rep.v0 = solve_primal(inst, 0.0, 1, opts).value;

  for (std::size_t i = 1; i < rep.points.size(); ++i) {
    const double a = rep.points[i - 1].value.to_double();
    const double b = rep.points[i].value.to_double();
    if (std::isfinite(a) && std::isfinite(b)) {
      if (b < a - 1e-7 * (1.0 + std::abs(a))) rep.monotone = false;
    } else if (b < a) {
      rep.monotone = false;
    }
  }
  const ScanPoint& last = rep.points.back();
  if (!last.value.is_finite() || rep.points.size() == 1 || !rep.points[rep.points.size() - 2].value.is_finite()) {
    rep.limit = last.value;
  } else {
    const ScanPoint& prev = rep.points[rep.points.size() - 2];
    const double slope = (prev.value.value.value() - last.value.value.value()) / (prev.eps - last.eps);
    rep.limit = {last.value.value.value() - slope * last.eps, false};
  }
  if (rep.limit.is_finite() && rep.v0.is_finite()) {
    const double v0 = rep.v0.value.value();
    rep.jump = std::abs(rep.limit.value.value() - v0) > 1e-3 * (1.0 + std::abs(v0));
  } else {
    rep.jump = rep.limit.to_double() != rep.v0.to_double();
  }
  return rep;
}

GridResult grid_minimize(const Box& box, const std::function<ExtReal(const Vec&)>& f, int levels,
                         int points_per_axis) {
  const int d = box.dim();
  if (d < 1 || d > 3) throw Error("grid_minimize: dimension must be 1..3");
  if (points_per_axis < 2 || levels < 1) throw Error("grid_minimize: empty grid");
  int p = points_per_axis;
  while (d == 3 && p * p * p > 64 * 64 * 64) --p;

  GridResult best;
  Box cur = box;
  for (int level = 0; level < levels; ++level) {
    const Vec step = (cur.hi - cur.lo) / static_cast<double>(p - 1);
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    // Enumerate with the first axis slowest so the scan order is lexicographic.
    for (long long id = 0; id < total; ++id) {
      Vec x(d);
      long long rem = id;
      for (int i = d - 1; i >= 0; --i) {
        x[i] = cur.lo[i] + step[i] * static_cast<double>(rem % p);
        rem /= p;
      }
      const ExtReal v = f(x);
      if (v < best.value) {
        best.value = v;
        best.argmin = x;
      }
    }
    if (!best.argmin) break;
    Box next;
    next.lo = (*best.argmin - 2.0 * step).cwiseMax(box.lo);
    next.hi = (*best.argmin + 2.0 * step).cwiseMin(box.hi);
    cur = next;
  }
  return best;
}

}  // namespace icvx
