#include "icvx/duals.hpp"

#include <algorithm>
#include <cmath>

#include "icvx/lp.hpp"
#include "icvx/parallel.hpp"

namespace icvx {

std::string to_string(SpaceTag t) {
  switch (t) {
    case SpaceTag::Haar: return "haar";
    case SpaceTag::L1: return "l1";
    case SpaceTag::Linf: return "linf";
  }
  return "?";
}

std::string to_string(DualForm f) {
  switch (f) {
    case DualForm::Haar: return "haar";
    case DualForm::D: return "d";
    case DualForm::Dm: return "dm";
  }
  return "?";
}

void Multiplier::validate() const {
  for (double v : support)
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("Multiplier: entries must be finite and >= 0");
  if (!(tail_value >= 0.0) || !std::isfinite(tail_value)) throw Error("Multiplier: tail value must be >= 0");
  if (!(lambda_inf >= 0.0) || !std::isfinite(lambda_inf)) throw Error("Multiplier: lambda_inf must be >= 0");
  if (tag == SpaceTag::Haar && (tail_value != 0.0 || lambda_inf != 0.0))
    throw Error("Multiplier: a Haar multiplier has finite support and no lambda_inf");
  if (tag == SpaceTag::L1 && tail_value != 0.0) throw Error("Multiplier: an L1 multiplier has zero tail");
  if (tag == SpaceTag::Linf && lambda_inf != 0.0) throw Error("Multiplier: an Linf multiplier has no lambda_inf");
}

double Multiplier::at(long long k) const {
  if (k >= 1 && k <= static_cast<long long>(support.size())) return support[static_cast<std::size_t>(k - 1)];
  return tail_value;
}

double Multiplier::support_sum() const {
  double s = 0.0;
  for (double v : support) s += v;
  return s;
}

SeriesObjective assemble_lagrangian(const Instance& inst, const Multiplier& mult, int m) {
  mult.validate();
  if (m < 0) throw Error("assemble_lagrangian: m must be >= 0");
  WeightedSeries s;
  s.weights = mult.support;
  std::optional<double> li;
  switch (mult.tag) {
    case SpaceTag::Haar:
      break;
    case SpaceTag::L1:
      if (inst.family.has_tail())
        li = mult.lambda_inf;
      else if (mult.lambda_inf != 0.0)
        throw Error("assemble_lagrangian: lambda_inf given for a finite family");
      break;
    case SpaceTag::Linf:
      s.tail_weight = mult.tail_value;
      s.positive_from = m + 1;
      break;
  }
  return SeriesObjective(inst.f0, inst.family, std::move(s), li);
}

ValueReport dual_value(const Instance& inst, const Multiplier& mult, int m, const SolveOptions& opts) {
  return minimize_lagrangian(inst, assemble_lagrangian(inst, mult, m), opts);
}

Multiplier transfer_D_to_Dm(const Multiplier& mult, int m) {
  if (mult.tag != SpaceTag::L1) throw Error("transfer_D_to_Dm: expects an L1 multiplier");
  if (m < 0) throw Error("transfer_D_to_Dm: m must be >= 0");
  mult.validate();
  const double alpha = mult.lambda_inf > 0.0 ? 0.0 : 1.0;
  const double shift = mult.lambda_inf + alpha;
  const std::size_t n = std::max(mult.support.size(), static_cast<std::size_t>(m));
  Multiplier out;
  out.tag = SpaceTag::Linf;
  out.support.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lk = i < mult.support.size() ? mult.support[i] : 0.0;
    out.support[i] = static_cast<int>(i) < m ? lk : lk + shift;
  }
  out.tail_value = shift;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool better(const ExtValue& a, const ExtValue& b) { return a.to_double() > b.to_double(); }

struct CutSet {
  std::vector<double> a;
  std::vector<Vec> s;
};

}  // namespace

KelleyResult kelley_maximize(const KelleyProblem& p, double tol, int max_iter) {
  const Eigen::Index n = p.lo.size();
  if (p.hi.size() != n) throw Error("kelley_maximize: bound size mismatch");
  const Eigen::Index rows = p.A.rows();
  if (rows > 0 && (p.A.cols() != n || p.b.size() != rows)) throw Error("kelley_maximize: row shape mismatch");
  const Vec rhs_rows = rows > 0 ? Vec(p.b - p.A * p.lo) : Vec();
  for (Eigen::Index i = 0; i < rows; ++i)
    if (rhs_rows[i] < -1e-12) throw Error("kelley_maximize: rows must hold at the lower bound");

  KelleyResult res;
  res.best_y = p.lo;
  res.upper = p.upper_cap;
  CutSet cuts;
  bool first = true;

  auto feasible = [&](const Vec& y) {
    for (Eigen::Index i = 0; i < n; ++i)
      if (y[i] < p.lo[i] - 1e-12 || y[i] > p.hi[i] + 1e-12) return false;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (p.A.row(i).dot(y) > p.b[i] + 1e-12) return false;
    return true;
  };
  auto evaluate = [&](const Vec& y) -> bool {
    const ConcaveEval e = p.oracle(y);
    if (first || better(e.value, res.best_value)) {
      res.best_value = e.value;
      res.best_y = y;
      first = false;
    }
    if (!e.has_cut) return false;
    for (std::size_t i = 0; i < cuts.a.size(); ++i)
      if (std::abs(cuts.a[i] - e.cut_const) <= 1e-13 * (1.0 + std::abs(e.cut_const)) &&
          (cuts.s[i] - e.slopes).lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + e.slopes.lpNorm<Eigen::Infinity>()))
        return false;
    cuts.a.push_back(e.cut_const);
    cuts.s.push_back(e.slopes);
    return true;
  };

  bool any = false;
  for (const auto& w : p.warm) {
    if (w.size() != n) continue;
    Vec y = w.cwiseMax(p.lo).cwiseMin(p.hi);
    if (!feasible(y)) continue;
    evaluate(y);
    any = true;
  }
  if (!any) evaluate(p.lo);

  for (; res.iterations < max_iter; ++res.iterations) {
    if (res.best_value.value.is_infinite() && !res.best_value.minus_infinity) {
      res.upper = std::numeric_limits<double>::infinity();
      res.converged = true;
      break;
    }
    if (cuts.a.empty()) break;
    // Variables: z = y - lo (n of them), then s = t + T0.
    const Eigen::Index nc = static_cast<Eigen::Index>(cuts.a.size());
    double lowest = 0.0;
    for (Eigen::Index i = 0; i < nc; ++i)
      lowest = std::min(lowest, cuts.a[static_cast<std::size_t>(i)] + cuts.s[static_cast<std::size_t>(i)].dot(p.lo));
    const double T0 = 1.0 - lowest;
    Mat A = Mat::Zero(nc + n + rows, n + 1);
    Vec b = Vec::Zero(nc + n + rows);
    for (Eigen::Index i = 0; i < nc; ++i) {
      const Vec& s = cuts.s[static_cast<std::size_t>(i)];
      A.block(i, 0, 1, n) = -s.transpose();
      A(i, n) = 1.0;
      b[i] = cuts.a[static_cast<std::size_t>(i)] + s.dot(p.lo) + T0;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      A(nc + j, j) = 1.0;
      b[nc + j] = p.hi[j] - p.lo[j];
    }
    if (rows > 0) {
      A.block(nc + n, 0, rows, n) = p.A;
      b.segment(nc + n, rows) = rhs_rows.cwiseMax(0.0);
    }
    Vec c = Vec::Zero(n + 1);
    c[n] = 1.0;
    const LpResult lp = lp_maximize(c, A, b);
    if (lp.status != LpResult::Optimal) break;
    const double model = lp.x[n] - T0;
    res.upper = std::min(res.upper, model);
    res.trace.push_back(res.best_value.to_double());
    const double best = res.best_value.to_double();
    if (std::isfinite(best) && res.upper - best <= tol * (1.0 + std::abs(best))) {
      res.converged = true;
      break;
    }
    const Vec y = p.lo + lp.x.head(n);
    if (!evaluate(y)) {
      // No new information at the model maximiser: the model is exact there.
      res.converged = std::isfinite(best) && res.upper - res.best_value.to_double() <= 1e3 * tol * (1.0 + std::abs(best));
      break;
    }
  }
  return res;
}

KelleyResult supergradient_maximize(const KelleyProblem& p, double eta0, int iters) {
  if (p.A.rows() > 0) throw Error("supergradient_maximize: extra rows are not supported");
  KelleyResult res;
  // Start from the best of lo and the warm starts.
  Vec y = p.lo;
  ConcaveEval e = p.oracle(y);
  for (const auto& w : p.warm) {
    if (w.size() != p.lo.size()) continue;
    const Vec c = w.cwiseMax(p.lo).cwiseMin(p.hi);
    ConcaveEval ec = p.oracle(c);
    if (better(ec.value, e.value)) {
      y = c;
      e = std::move(ec);
    }
  }
  res.best_y = y;
  res.best_value = e.value;
  Vec last_finite = y;
  bool have_finite = !e.value.minus_infinity;
  for (int j = 1; j <= iters; ++j) {
    if (j > 1) e = p.oracle(y);
    if (better(e.value, res.best_value)) {
      res.best_value = e.value;
      res.best_y = y;
    }
    res.trace.push_back(res.best_value.to_double());
    res.iterations = j;
    if (e.value.minus_infinity && have_finite) {
      // Step rejected: back off towards the last finite iterate.
      y = 0.5 * (y + last_finite);
      continue;
    }
    if (!e.value.minus_infinity) {
      last_finite = y;
      have_finite = true;
    }
    if (!e.has_cut) break;
    const double nrm = e.slopes.norm();
    if (nrm == 0.0) {
      res.converged = true;
      break;
    }
    y = (y + (eta0 / std::sqrt(static_cast<double>(j))) * e.slopes / nrm).cwiseMax(p.lo).cwiseMin(p.hi);
  }
  res.upper = p.upper_cap;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

// Coordinates of the dual variable for a form.
struct Layout {
  DualForm form;
  int m = 0;
  int n_support = 0;
  bool has_extra = false;  // lambda_inf (D) or tail value (Dm)

  [[nodiscard]] int size() const { return n_support + (has_extra ? 1 : 0); }

  [[nodiscard]] Multiplier to_mult(const Vec& y) const {
    Multiplier mu;
    mu.support.assign(y.data(), y.data() + n_support);
    for (double& v : mu.support) v = std::max(v, 0.0);
    switch (form) {
      case DualForm::Haar: mu.tag = SpaceTag::Haar; break;
      case DualForm::D:
        mu.tag = SpaceTag::L1;
        if (has_extra) mu.lambda_inf = std::max(0.0, y[n_support]);
        break;
      case DualForm::Dm:
        mu.tag = SpaceTag::Linf;
        if (has_extra) mu.tail_value = std::max(0.0, y[n_support]);
        break;
    }
    return mu;
  }

  [[nodiscard]] Vec to_y(const Multiplier& mu) const {
    Vec y(size());
    for (int k = 1; k <= n_support; ++k) {
      const bool explicit_k = k <= static_cast<int>(mu.support.size());
      y[k - 1] = explicit_k ? mu.support[static_cast<std::size_t>(k - 1)]
                            : (form == DualForm::Dm ? mu.tail_value : 0.0);
    }
    if (has_extra) y[n_support] = form == DualForm::D ? mu.lambda_inf : (form == DualForm::Dm ? mu.tail_value : 0.0);
    return y;
  }
};

Layout make_layout(const Instance& inst, DualForm form, int m, int N) {
  Layout L;
  L.form = form;
  L.m = form == DualForm::Dm ? m : 0;
  L.n_support = form == DualForm::Dm ? std::max(N, m) : N;
  if (!inst.family.has_tail()) L.n_support = std::min(L.n_support, inst.family.prefix_size());
  L.has_extra = form != DualForm::Haar && inst.family.has_tail();
  return L;
}

ConcaveEval dual_eval(const Instance& inst, const Box& box, const Layout& L, const Vec& y, const SolveOptions& so) {
  const Multiplier mu = L.to_mult(y);
  const SeriesObjective obj = assemble_lagrangian(inst, mu, L.m);
  const ValueReport r = minimize_lagrangian_on(box, obj, so);
  ConcaveEval e;
  e.value = r.value;
  if (!r.argmin) return e;
  const Vec& x = *r.argmin;
  const ExtReal f0 = inst.f0.eval(x);
  if (f0.is_infinite()) return e;
  e.cut_const = f0.value();
  e.slopes = Vec::Zero(L.size());
  const ConstraintFamily& fam = inst.family;
  for (int k = 1; k <= L.n_support; ++k) {
    ExtReal v = fam.eval(k, x);
    if (L.form == DualForm::Dm && k > L.m) v = max(v, 0.0);
    if (v.is_infinite()) return e;
    e.slopes[k - 1] = v.value();
  }
  if (L.has_extra) {
    if (L.form == DualForm::D) {
      const ExtReal v = fam.f_infinity(x);
      if (v.is_infinite()) return e;
      e.slopes[L.n_support] = v.value();
    } else {
      WeightedSeries unit;
      unit.weights.assign(static_cast<std::size_t>(L.n_support), 0.0);
      unit.tail_weight = 1.0;
      unit.positive_from = L.m + 1;
      const ExtValue v = upper_sum(fam, unit, x, L.n_support);
      if (!v.is_finite()) return e;
      e.slopes[L.n_support] = v.value.value();
    }
  }
  e.has_cut = true;
  return e;
}

}  // namespace

std::optional<Multiplier> kkt_multiplier(const Instance& inst, const Vec& x, int horizon, bool with_lambda_inf,
                                         double active_tol) {
  const auto g0 = inst.f0.subgradient(x);
  if (!g0) return std::nullopt;
  const ConstraintFamily& fam = inst.family;
  Subdifferential cone;
  cone.vertices.push_back(Vec::Zero(inst.dim));
  std::vector<long long> label;  // k, or 0 for f_inf, -1 for box
  const long long K = fam.has_tail() ? horizon : std::min<long long>(horizon, fam.prefix_size());
  for (long long k = 1; k <= K; ++k) {
    const ExtReal v = fam.eval(k, x);
    if (v.is_infinite() || v.value() < -active_tol) continue;
    auto g = fam.subgradient(k, x);
    if (!g) continue;
    cone.rays.push_back(*g);
    label.push_back(k);
  }
  if (with_lambda_inf && fam.has_tail()) {
    const ConvexFn finf = fam.f_infinity_fn();
    const ExtReal v = finf.eval(x);
    if (v.is_finite() && v.value() >= -active_tol)
      if (auto g = finf.subgradient(x)) {
        cone.rays.push_back(*g);
        label.push_back(0);
      }
  }
  if (!inst.box.artificial) {
    for (int i = 0; i < inst.dim; ++i) {
      const double w = inst.box.hi[i] - inst.box.lo[i];
      if (x[i] >= inst.box.hi[i] - 1e-7 * w) {
        cone.rays.push_back(Vec::Unit(inst.dim, i));
        label.push_back(-1);
      }
      if (x[i] <= inst.box.lo[i] + 1e-7 * w) {
        cone.rays.push_back(-Vec::Unit(inst.dim, i));
        label.push_back(-1);
      }
    }
  }
  Multiplier mu;
  mu.tag = with_lambda_inf ? SpaceTag::L1 : SpaceTag::Haar;
  mu.support.assign(static_cast<std::size_t>(K), 0.0);
  if (!cone.rays.empty()) {
    const std::vector<Subdifferential> sets{Subdifferential{{*g0}, {}}, cone};
    const std::vector<double> scales{1.0, 1.0};
    const MinNormResult r = min_norm_point(sets, scales);
    for (std::size_t j = 0; j < label.size(); ++j) {
      const double c = r.ray_coeffs[1][j];
      if (label[j] > 0)
        mu.support[static_cast<std::size_t>(label[j] - 1)] += c;
      else if (label[j] == 0)
        mu.lambda_inf += c;
    }
  }
  return mu;
}

DualResult solve_dual(const Instance& inst, DualForm form, int m, const DualOptions& opts,
                      const std::vector<Multiplier>& warm) {
  if (opts.horizon < 1) throw Error("solve_dual: horizon must be >= 1");
  if (m < 0) throw Error("solve_dual: m must be >= 0");
  const Layout L = make_layout(inst, form, m, opts.horizon);

  ValueReport primal;
  if (opts.primal_value) {
    primal.value = *opts.primal_value;
  } else {
    primal = solve_primal(inst, 0.0, 1, opts.inner);
  }

  const int n = L.size();
  DualResult out;
  if (n == 0) {
    out.mult = L.to_mult(Vec());
    out.report = dual_value(inst, out.mult, L.m, opts.inner);
    return out;
  }

  Vec lo = Vec::Zero(n);
  Vec hi = Vec::Constant(n, opts.multiplier_bound);
  std::vector<Vec> starts{Vec::Zero(n)};
  for (const auto& w : warm) {
    const Vec y = L.to_y(w);
    starts.push_back(y);
    if (form == DualForm::Dm && w.tag == SpaceTag::Linf) {
      // g_m is nondecreasing in the positive-part coordinates.
      for (int j = L.m; j < n; ++j) lo[j] = std::max(lo[j], std::min(y[j], hi[j]));
    }
  }
  if (opts.kkt_warm_start && primal.argmin) {
    if (auto k = kkt_multiplier(inst, *primal.argmin, L.n_support, form != DualForm::Haar)) {
      if (form == DualForm::Dm) {
        Multiplier l1 = *k;
        l1.tag = SpaceTag::L1;
        starts.push_back(L.to_y(transfer_D_to_Dm(l1, L.m)));
      } else {
        starts.push_back(L.to_y(*k));
      }
    }
  }

  Box box = inst.box;
  for (int attempt = 0; attempt < 4; ++attempt) {
    KelleyProblem kp;
    SolveOptions so = opts.inner;
    kp.oracle = [&inst, &L, box, so](const Vec& y) { return dual_eval(inst, box, L, y, so); };
    kp.lo = lo;
    kp.hi = hi;
    for (auto& s : starts) s = s.cwiseMax(lo);
    kp.warm = starts;
    if (primal.value.is_finite()) kp.upper_cap = primal.value.value.value();
    const KelleyResult kr = opts.method == DualOptions::Method::CuttingPlane
                                ? kelley_maximize(kp, opts.tol, opts.max_outer)
                                : supergradient_maximize(kp, opts.eta0, opts.supergradient_iters);
    out.mult = L.to_mult(kr.best_y);
    out.upper = kr.upper;
    out.outer_iterations += kr.iterations;
    out.flags.clear();
    if (!kr.converged) out.flags.push_back("outer_not_converged");
    for (int j = 0; j < n; ++j)
      if (kr.best_y[j] >= hi[j] * (1.0 - 1e-9)) {
        out.flags.push_back("multiplier_bound_active");
        break;
      }
    if (form == DualForm::Dm && !out.flags.empty()) out.flags.push_back("sup_approached_not_attained");
    out.report = dual_value(inst, out.mult, L.m, opts.inner);
    if (!inst.box.artificial) break;
    // A drop against the box-restricted value means the box was binding.
    const double boxed = kr.best_value.to_double();
    const double truev = out.report.value.to_double();
    if (!(truev < boxed - std::max(1e-6 * (1.0 + std::abs(boxed)), 10.0 * opts.inner.tol))) break;
    out.flags.push_back("artificial_box_binding");
    starts.push_back(kr.best_y);
    box = box.scaled(10.0);
  }
  out.report.residuals["dual_gap_model"] = out.upper - out.report.value.to_double();
  if (primal.value.is_finite()) out.report.residuals["primal_minus_dual"] = primal.value.to_double() - out.report.value.to_double();
  for (const auto& f : out.flags) out.report.flags.push_back(f);
  return out;
}

ChainReport duality_chain_report(const Instance& inst, const std::vector<int>& m_list, const DualOptions& opts,
                                 const std::vector<double>& scan_eps) {
  ChainReport rep;
  const ValueReport p = solve_primal(inst, 0.0, 1, opts.inner);
  rep.primal = p.value;
  rep.primal_argmin = p.argmin;
  DualOptions o = opts;
  o.primal_value = p.value;

  rep.haar = solve_dual(inst, DualForm::Haar, 0, o);
  Multiplier haar_as_l1 = rep.haar.mult;
  haar_as_l1.tag = SpaceTag::L1;
  rep.d = solve_dual(inst, DualForm::D, 0, o, {haar_as_l1});
  rep.dm.resize(m_list.size());
  parallel_for(m_list.size(), [&](std::size_t i) {
    const int m = m_list[i];
    rep.dm[i] = {m, solve_dual(inst, DualForm::Dm, m, o, {transfer_D_to_Dm(rep.d.mult, m)})};
  });
  if (!scan_eps.empty()) rep.scan = value_function_scan(inst, scan_eps, opts.inner);

  const double tol = std::max(1e-6, 10 * opts.tol);
  auto le = [&](const ExtValue& a, const ExtValue& b) { return a.to_double() <= b.to_double() + tol; };
  if (!le(rep.haar.report.value, rep.d.report.value)) rep.violations.push_back("haar > d");
  for (const auto& [m, r] : rep.dm) {
    if (!le(rep.d.report.value, r.report.value)) rep.violations.push_back("d > dm(" + std::to_string(m) + ")");
    if (!le(r.report.value, rep.primal)) rep.violations.push_back("dm(" + std::to_string(m) + ") > primal");
  }
  if (!le(rep.d.report.value, rep.primal)) rep.violations.push_back("d > primal");
  rep.ordered = rep.violations.empty();
  if (!scan_eps.empty()) rep.scan_below_d = rep.scan.limit.to_double() <= rep.d.report.value.to_double() + 1e-3;
  return rep;
}

MinimaxReport minimax_check(const ConstraintFamily& fam, const Box& box_in, int N, double tol, const DualOptions& opts) {
  if (!fam.has_tail()) throw Error("minimax_check: the family needs a tail");
  if (N < 1) throw Error("minimax_check: N must be >= 1");
  Box box = box_in;
  box.artificial = false;
  MinimaxReport rep;

  // Left side: inf over the box of sup_k f_k.
  const Oracle sup_oracle = [&fam](const Vec& x) {
    OracleAnswer a;
    const auto s = fam.sup(x);
    a.value = s.value;
    if (s.value.is_infinite()) {
      for (int k = 1; k <= fam.prefix_size() + 1; ++k)
        if (fam.eval(k, x).is_infinite()) {
          a.cut = fam.at(k).domain_cut(x);
          break;
        }
    } else {
      a.subgradient = fam.sup_subgradient(x);
    }
    return a;
  };
  const InnerResult lr = ellipsoid_minimize(InnerProblem{box, sup_oracle, {}}, {opts.inner.tol, opts.inner.max_iter});
  if (!lr.argmin) throw Error("minimax_check: sup_k f_k is not proper on the box");
  rep.lhs = {lr.upper, false};
  rep.lhs_point = lr.argmin;

  const ConvexFn zero = ConvexFn::constant(fam.dim(), 0.0);
  const SolveOptions so = opts.inner;
  KelleyProblem kp;
  kp.lo = Vec::Zero(N);
  kp.hi = Vec::Ones(N);
  kp.A = Mat::Ones(1, N);
  kp.b = Vec::Ones(1);
  kp.upper_cap = lr.upper.value();
  kp.warm = {Vec::Zero(N), Vec::Constant(N, 1.0 / N)};
  kp.oracle = [&](const Vec& y) {
    ConcaveEval e;
    WeightedSeries s;
    s.weights.assign(y.data(), y.data() + N);
    for (double& v : s.weights) v = std::max(v, 0.0);
    const double li = std::max(0.0, 1.0 - y.sum());
    const SeriesObjective obj(zero, fam, s, li);
    const ValueReport r = minimize_lagrangian_on(box, obj, so);
    e.value = r.value;
    if (!r.argmin) return e;
    const Vec& x = *r.argmin;
    const ExtReal finf = fam.f_infinity(x);
    if (finf.is_infinite()) return e;
    e.cut_const = finf.value();
    e.slopes = Vec(N);
    for (int k = 1; k <= N; ++k) {
      const ExtReal v = fam.eval(k, x);
      if (v.is_infinite()) return e;
      e.slopes[k - 1] = v.value() - finf.value();
    }
    e.has_cut = true;
    return e;
  };
  const KelleyResult kr = kelley_maximize(kp, opts.tol, opts.max_outer);
  rep.rhs = kr.best_value;
  rep.witness.tag = SpaceTag::L1;
  rep.witness.support.assign(kr.best_y.data(), kr.best_y.data() + N);
  for (double& v : rep.witness.support) v = std::max(v, 0.0);
  rep.witness.lambda_inf = std::max(0.0, 1.0 - kr.best_y.sum());
  rep.gap = rep.lhs.to_double() - rep.rhs.to_double();
  rep.holds = std::abs(rep.gap) <= tol;
  return rep;
}

}  // namespace icvx
