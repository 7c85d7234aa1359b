#include "icvx/verify.hpp"

#include <algorithm>
#include <cmath>

namespace icvx {

namespace {

void check_point(const Instance& inst, const Vec& x) {
  if (x.size() != inst.dim) throw Error("verify: point has wrong dimension");
}

void check_feasible(const Instance& inst, const Vec& x, double tol) {
  const auto s = inst.family.sup(x);
  if (s.value.is_infinite() || s.value.value() > tol)
    throw Error("verify: x_bar is infeasible (sup_k f_k = " + s.value.str() + ")");
  if (inst.f0.eval(x).is_infinite()) throw Error("verify: f0(x_bar) = +inf");
}

}  // namespace

SlacknessReport complementary_slackness(const Instance& inst, const Vec& x_bar, const Multiplier& mult,
                                        std::optional<int> m, double tol) {
  check_point(inst, x_bar);
  mult.validate();
  check_feasible(inst, x_bar, tol);
  const ConstraintFamily& fam = inst.family;
  SlacknessReport rep;
  auto add = [&](long long k, double lam, ExtReal f) {
    // 0 * f is 0 for finite f; f is finite here since x_bar is feasible.
    const double p = lam == 0.0 ? 0.0 : lam * f.value();
    rep.products.emplace_back(k, p);
    rep.max_violation = std::max(rep.max_violation, std::abs(p));
  };
  long long last = static_cast<long long>(mult.support.size());
  if (mult.tag == SpaceTag::Linf) {
    if (!m) throw Error("complementary_slackness: an Linf multiplier needs m");
    last = *m;
  }
  for (long long k = 1; k <= last; ++k) {
    if (!fam.has_index(k)) break;
    add(k, mult.at(k), fam.eval(k, x_bar));
  }
  if (mult.tag == SpaceTag::L1 && fam.has_tail()) add(0, mult.lambda_inf, fam.f_infinity(x_bar));
  rep.pass = rep.max_violation <= tol;
  return rep;
}

AttainmentReport lagrangian_attainment(const Instance& inst, const Vec& x_bar, const Multiplier& mult,
                                       std::optional<int> m, double tol, const SolveOptions& opts) {
  check_point(inst, x_bar);
  const SeriesObjective L = assemble_lagrangian(inst, mult, m.value_or(0));
  AttainmentReport rep;
  rep.lagrangian_at_xbar = L.eval(x_bar);
  rep.inner_inf = minimize_lagrangian(inst, L, opts).value;
  rep.f0_at_xbar = inst.f0.eval(x_bar).to_double();
  if (!rep.lagrangian_at_xbar.is_finite() || !rep.inner_inf.is_finite() || !std::isfinite(rep.f0_at_xbar)) {
    rep.residual = std::numeric_limits<double>::infinity();
    return rep;
  }
  const double lx = rep.lagrangian_at_xbar.value.value();
  rep.residual = std::max(lx - rep.inner_inf.value.value(), std::abs(lx - rep.f0_at_xbar));
  rep.pass = rep.residual <= tol;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Term {
  long long index;
  double weight;
  bool positive_part;
  ConvexFn fn;
};

ConvexFn term_fn(const Instance& inst, long long index, bool positive_part) {
  if (index == 0) return inst.f0;
  if (index == -1) return inst.family.f_infinity_fn();
  ConvexFn f = inst.family.at(index);
  return positive_part ? ConvexFn::positive_part(f) : f;
}

std::vector<Term> build_terms(const Instance& inst, const Multiplier& mult, bool dm, int m, int n) {
  std::vector<Term> out;
  out.push_back({0, 1.0, false, inst.f0});
  const ConstraintFamily& fam = inst.family;
  for (long long k = 1; k <= n && fam.has_index(k); ++k) {
    const double w = mult.at(k);
    const bool pp = dm && k > m;
    ConvexFn f = term_fn(inst, k, pp);
    // Zero weight on a full-domain function contributes {0}.
    if (w > 0.0 || !f.full_domain()) out.push_back({k, w, pp, std::move(f)});
  }
  if (!dm && mult.tag == SpaceTag::L1 && fam.has_tail()) {
    ConvexFn f = fam.f_infinity_fn();
    if (mult.lambda_inf > 0.0 || !f.full_domain()) out.push_back({-1, mult.lambda_inf, false, std::move(f)});
  }
  return out;
}

struct Evaluation {
  bool valid = false;
  double sum = 0.0;
  double norm = std::numeric_limits<double>::infinity();
  Vec vec;
};

Evaluation evaluate(const std::vector<Term>& terms, const std::vector<Vec>& pts) {
  Evaluation ev;
  std::vector<Subdifferential> sets;
  std::vector<double> scales;
  sets.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const ExtReal v = terms[i].fn.eval(pts[i]);
    if (v.is_infinite()) return ev;
    ev.sum += terms[i].weight * v.value();
    sets.push_back(terms[i].fn.subdiff(pts[i]));
    scales.push_back(terms[i].weight);
  }
  const MinNormResult r = min_norm_point(sets, scales);
  ev.valid = true;
  ev.norm = r.norm;
  ev.vec = r.point;
  return ev;
}

std::vector<int> n_schedule(int M, const FuzzyOptions& opts) {
  if (opts.fixed_n) {
    if (*opts.fixed_n <= M) throw Error("fuzzy_kkt: n must exceed M");
    return {*opts.fixed_n};
  }
  std::vector<int> ns{M + 1, 2 * M, 50};
  std::erase_if(ns, [M](int n) { return n <= M; });
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n = 2 * ns.back(); n <= opts.max_n; n *= 2) ns.push_back(n);
  return ns;
}

FuzzyCertificate search(const Instance& inst, const Vec& x_bar, const Multiplier& mult, bool dm, int m, double eps,
                        int M, const FuzzyOptions& opts) {
  check_point(inst, x_bar);
  mult.validate();
  if (!(eps > 0.0)) throw Error("fuzzy_kkt: eps must be positive");
  if (M < m || M < 1) throw Error("fuzzy_kkt: M must be >= max(m, 1)");
  check_feasible(inst, x_bar, 1e-9);

  FuzzyCertificate cert;
  cert.form = dm ? "Dm" : "D";
  cert.m = m;
  cert.eps = eps;
  cert.x_bar = x_bar;
  cert.sum_rhs = inst.f0.eval(x_bar).value();
  cert.slater_holds = opts.check_slater ? slater_check(inst).holds : true;

  const int d = inst.dim;
  std::vector<Vec> offsets;
  for (double r : {0.5 * eps, eps})
    for (int i = 0; i < d; ++i)
      for (double sgn : {1.0, -1.0}) {
        Vec o = Vec::Zero(d);
        o[i] = sgn * r;
        offsets.push_back(o);
      }
  const bool keep_in_box = !inst.box.artificial;
  auto admissible = [&](const Vec& p) { return !keep_in_box || inst.box.contains(p, 1e-12); };

  bool have_best = false;
  double best_norm = std::numeric_limits<double>::infinity();
  int tried = 0;
  for (int n : n_schedule(M, opts)) {
    const std::vector<Term> terms = build_terms(inst, mult, dm, m, n);
    const std::size_t T = terms.size();
    auto record = [&](const std::vector<Vec>& pts, const Evaluation& ev, bool at_xbar) {
      cert.n = n;
      cert.terms.clear();
      for (std::size_t i = 0; i < T; ++i)
        cert.terms.push_back({terms[i].index, terms[i].weight, terms[i].positive_part, pts[i]});
      cert.min_norm = ev.norm;
      cert.min_norm_vector = ev.vec;
      cert.sum_lhs = ev.sum;
      cert.all_at_xbar = at_xbar;
    };
    // Returns true once a certificate is found.
    auto attempt = [&](const std::vector<Vec>& pts, bool at_xbar) {
      ++tried;
      for (const auto& p : pts)
        if (!admissible(p)) return false;
      const Evaluation ev = evaluate(terms, pts);
      if (!ev.valid) return false;
      const bool sum_ok = ev.sum <= cert.sum_rhs + opts.sum_tol;
      if (sum_ok && ev.norm <= eps) {
        record(pts, ev, at_xbar);
        return true;
      }
      if (sum_ok && ev.norm < best_norm) {
        best_norm = ev.norm;
        have_best = true;
        record(pts, ev, at_xbar);
      }
      return false;
    };
    auto done = [&]() { return tried >= opts.budget; };

    std::vector<Vec> pts(T, x_bar);
    if (attempt(pts, true)) {
      cert.found = true;
      break;
    }
    bool found = false;
    // Everything moved together.
    for (const auto& o : offsets) {
      if (done()) break;
      std::vector<Vec> q(T, x_bar + o);
      if ((found = attempt(q, false))) break;
    }
    // One term moved; only the leading terms and f_inf, the far tail terms are alike.
    for (std::size_t j = 0; j < T && !found && !done(); ++j) {
      if (j > 32 && terms[j].index != -1) continue;
      for (const auto& o : offsets) {
        if (done()) break;
        std::vector<Vec> q(T, x_bar);
        q[j] = x_bar + o;
        if ((found = attempt(q, false))) break;
      }
    }
    // Objective point and the rest moved independently.
    for (std::size_t a = 0; a < offsets.size() && !found && !done(); ++a)
      for (std::size_t b = 0; b < offsets.size(); ++b) {
        if (a == b || done()) continue;
        std::vector<Vec> q(T, x_bar + offsets[b]);
        q[0] = x_bar + offsets[a];
        if ((found = attempt(q, false))) break;
      }
    if (found) {
      cert.found = true;
      break;
    }
    if (done()) break;
  }
  cert.candidates_tried = tried;
  if (!cert.found) {
    cert.failure = cert.slater_holds ? "budget_exhausted" : "hypothesis_violated";
    if (!have_best) cert.terms.clear();
  }
  return cert;
}

}  // namespace

FuzzyCertificate fuzzy_kkt_D(const Instance& inst, const Vec& x_bar, const Multiplier& mult, double eps, int M,
                             const FuzzyOptions& opts) {
  if (mult.tag == SpaceTag::Linf) throw Error("fuzzy_kkt_D: expects an L1 or Haar multiplier");
  return search(inst, x_bar, mult, false, 0, eps, M, opts);
}

FuzzyCertificate fuzzy_kkt_Dm(const Instance& inst, const Vec& x_bar, const Multiplier& mult, int m, double eps,
                              int M, const FuzzyOptions& opts) {
  if (mult.tag != SpaceTag::Linf) throw Error("fuzzy_kkt_Dm: expects an Linf multiplier");
  if (m < 0) throw Error("fuzzy_kkt_Dm: m must be >= 0");
  if (M <= m) throw Error("fuzzy_kkt_Dm: M must exceed m");
  return search(inst, x_bar, mult, true, m, eps, M, opts);
}

RecheckResult recheck_certificate(const Instance& inst, const FuzzyCertificate& cert, double eps) {
  RecheckResult out;
  if (cert.terms.empty()) return out;
  std::vector<Term> terms;
  std::vector<Vec> pts;
  for (const auto& t : cert.terms) {
    if (t.point.size() != inst.dim) throw Error("recheck_certificate: point has wrong dimension");
    if ((t.point - cert.x_bar).norm() > eps * (1.0 + 1e-12)) out.in_ball = false;
    terms.push_back({t.index, t.weight, t.positive_part, term_fn(inst, t.index, t.positive_part)});
    pts.push_back(t.point);
  }
  const Evaluation ev = evaluate(terms, pts);
  if (!ev.valid) return out;
  out.min_norm = ev.norm;
  out.sum_lhs = ev.sum;
  const double rhs = inst.f0.eval(cert.x_bar).to_double();
  out.pass = out.in_ball && ev.norm <= eps && ev.sum <= rhs + 1e-9 && std::abs(ev.norm - cert.min_norm) <= 1e-10 &&
             std::abs(ev.sum - cert.sum_lhs) <= 1e-10 * (1.0 + std::abs(cert.sum_lhs));
  return out;
}

}  // namespace icvx
