#include "icvx/ellipsoid.hpp"

#include <cmath>

namespace icvx {

namespace {

class Localizer {
 public:
  explicit Localizer(const Box& box) : n_(box.dim()) {
    c_ = box.center();
    const Vec half = 0.5 * (box.hi - box.lo);
    if (n_ == 1) {
      lo_ = box.lo[0];
      hi_ = box.hi[0];
    } else {
      L_ = Mat(half.asDiagonal()) * std::sqrt(static_cast<double>(n_));
    }
    scale_ = 1.0 + half.lpNorm<Eigen::Infinity>();
  }

  [[nodiscard]] const Vec& center() const { return c_; }

  // max over the localisation set of <a, c - y>.
  [[nodiscard]] double width(const Vec& a) const {
    if (n_ == 1) return std::abs(a[0]) * 0.5 * (hi_ - lo_);
    return (L_.transpose() * a).norm();
  }

  [[nodiscard]] bool collapsed() const {
    const double size = n_ == 1 ? (hi_ - lo_) : L_.norm();
    return !(size > 1e-14 * scale_);
  }

  // Keep {y : <a, y> <= b}; returns false when the set becomes empty.
  bool cut(const Vec& a, double b) {
    if (n_ == 1) {
      if (a[0] == 0.0) return b >= 0.0;
      const double t = b / a[0];
      if (a[0] > 0.0)
        hi_ = std::min(hi_, t);
      else
        lo_ = std::max(lo_, t);
      if (hi_ < lo_) return false;
      c_[0] = 0.5 * (lo_ + hi_);
      return true;
    }
    const Vec La = L_.transpose() * a;
    const double nrm = La.norm();
    if (!(nrm > 0.0)) return a.dot(c_) <= b;
    double alpha = (a.dot(c_) - b) / nrm;
    if (alpha >= 1.0) return false;
    alpha = std::max(alpha, 0.0);
    const double n = static_cast<double>(n_);
    const Vec u = La / nrm;
    c_ -= ((1.0 + n * alpha) / (n + 1.0)) * (L_ * u);
    const double delta = std::sqrt(n * n * (1.0 - alpha * alpha) / (n * n - 1.0));
    const double beta = 1.0 - std::sqrt((n - 1.0) * (1.0 - alpha) / ((n + 1.0) * (1.0 + alpha)));
    L_ = delta * (L_ - beta * (L_ * u) * u.transpose());
    return true;
  }

 private:
  int n_;
  Vec c_;
  Mat L_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double scale_ = 1.0;
};

}  // namespace

InnerResult ellipsoid_minimize(const InnerProblem& prob, const InnerOptions& opts) {
  const Box& box = prob.box;
  const int n = box.dim();
  if (n < 1) throw Error("ellipsoid_minimize: empty box");
  Localizer E(box);
  InnerResult res;
  double ub = std::numeric_limits<double>::infinity();
  bool emptied = false;

  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    if (E.collapsed()) {
      emptied = true;
      break;
    }
    const Vec x = E.center();
    bool ok = true;

    // Box.
    int bad = -1;
    double viol = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x[i] - box.hi[i] > viol) viol = x[i] - box.hi[i], bad = i;
      if (box.lo[i] - x[i] > viol) viol = box.lo[i] - x[i], bad = i + n;
    }
    if (bad >= 0) {
      const int i = bad % n;
      Vec a = Vec::Unit(n, i);
      ok = bad < n ? E.cut(a, box.hi[i]) : E.cut(-a, -box.lo[i]);
      if (!ok) {
        emptied = true;
        break;
      }
      continue;
    }
    if (prob.feasibility) {
      if (auto h = prob.feasibility(x)) {
        if (!E.cut(h->normal, h->offset)) {
          emptied = true;
          break;
        }
        continue;
      }
    }
    const OracleAnswer ans = prob.objective(x);
    if (ans.value.is_infinite()) {
      if (!ans.cut) throw Error("ellipsoid_minimize: oracle returned +inf without a domain cut");
      if (!E.cut(ans.cut->normal, ans.cut->offset)) {
        emptied = true;
        break;
      }
      continue;
    }
    if (!ans.subgradient) throw Error("ellipsoid_minimize: oracle returned no subgradient");
    const double fx = ans.value.value();
    const Vec& g = *ans.subgradient;
    if (fx < ub) {
      ub = fx;
      res.argmin = x;
    }
    const double w = E.width(g);
    res.lower = std::max(res.lower, fx - w);
    if (g.lpNorm<Eigen::Infinity>() == 0.0) res.lower = std::max(res.lower, fx);
    if (ub - res.lower <= opts.tol * (1.0 + std::abs(ub))) {
      res.converged = true;
      break;
    }
    if (!E.cut(g, g.dot(x) - (fx - ub))) {
      emptied = true;
      break;
    }
  }
  // An empty localisation set holds no feasible point better than ub.
  if (emptied && res.argmin) {
    res.converged = true;
    res.lower = ub;
  }
  if (res.argmin) {
    res.upper = ub;
    res.lower = std::min(res.lower, ub);
  } else if (emptied) {
    res.infeasible = true;
  }
  return res;
}

Oracle oracle_of(const ConvexFn& f) {
  return [f](const Vec& x) {
    OracleAnswer a;
    a.value = f.eval(x);
    if (a.value.is_infinite())
      a.cut = f.domain_cut(x);
    else
      a.subgradient = f.subgradient(x);
    return a;
  };
}

}  // namespace icvx
