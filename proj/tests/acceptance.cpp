// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "oracles.hpp"

using namespace icvx;

namespace {

int failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.size() < 600) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void report(int id, const std::string& name, const Check& c, double seconds, const std::string& summary) {
  std::printf("criterion %d %-28s %s  (%.1fs) %s%s%s\n", id, name.c_str(), c.ok ? "PASS" : "FAIL", seconds,
              summary.c_str(), c.ok ? "" : " | ", c.ok ? "" : c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

template <class F>
void run(int id, const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  std::string summary;
  try {
    summary = body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, name, c, s, summary);
}

double val(const ExtValue& v) { return v.to_double(); }

}  // namespace

int main() {
  const Instance karney = builtin("karney");

  run(1, "karney-golden", [&](Check& c) {
    const double vp = val(solve_primal(karney, 0.0).value);
    c.require(std::abs(vp) <= 1e-6, "v(P)=" + fmt(vp));

    const DualResult haar = solve_dual(karney, DualForm::Haar, 0);
    const double vh = val(haar.report.value);
    c.require(std::abs(vh + 1.0) <= 1e-4, "v(Haar)=" + fmt(vh));
    c.require(!haar.mult.support.empty() && std::abs(haar.mult.support[0] - 1.0) <= 1e-3,
              "Haar lambda_1=" + fmt(haar.mult.support.empty() ? NAN : haar.mult.support[0]));
    for (std::size_t k = 1; k < haar.mult.support.size(); ++k)
      c.require(haar.mult.support[k] <= 1e-3, "Haar lambda_" + std::to_string(k + 1) + "=" + fmt(haar.mult.support[k]));

    const DualResult d = solve_dual(karney, DualForm::D, 0);
    const double vd = val(d.report.value);
    c.require(std::abs(vd) <= 1e-4, "v(D)=" + fmt(vd));
    c.require(std::abs(d.mult.lambda_inf - 1.0) <= 1e-2, "lambda_inf=" + fmt(d.mult.lambda_inf));
    c.require(d.mult.support_sum() <= 1e-2, "sum lambda_k=" + fmt(d.mult.support_sum()));

    std::string dms;
    for (int m : {0, 3}) {
      const DualResult dm = solve_dual(karney, DualForm::Dm, m, {}, {transfer_D_to_Dm(d.mult, m)});
      const double v = val(dm.report.value);
      c.require(std::abs(v) <= 1e-3, "v(D_" + std::to_string(m) + ")=" + fmt(v));
      dms += " v(D_" + std::to_string(m) + ")=" + fmt(v);
    }
    return "v(P)=" + fmt(vp) + " v(Haar)=" + fmt(vh) + " v(D)=" + fmt(vd) + " lambda_inf=" + fmt(d.mult.lambda_inf) + dms;
  });

  run(2, "finite-reduction", [&](Check& c) {
    std::mt19937_64 rng(2024);
    double worst = 0.0, worst_li = 0.0;
    int made = 0;
    while (made < 10) {
      oracle::RandomQp qp = oracle::random_padded_qp(rng);
      const oracle::QpSolution ref = oracle::qp_kkt(qp.Q, qp.a, qp.A, qp.b);
      if (!ref.ok || ref.x.cwiseAbs().maxCoeff() > 9.0) continue;
      ++made;
      const DualResult d = solve_dual(qp.inst, DualForm::D, 0);
      const double ed = std::abs(val(d.report.value) - ref.dual_value);
      worst = std::max(worst, ed);
      worst_li = std::max(worst_li, d.mult.lambda_inf);
      c.require(ed <= 1e-5, "qp " + std::to_string(made) + " |v(D)-ref|=" + fmt(ed));
      c.require(d.mult.lambda_inf <= 1e-6, "qp " + std::to_string(made) + " lambda_inf=" + fmt(d.mult.lambda_inf));
      for (int m : {0, 3}) {
        const DualResult dm = solve_dual(qp.inst, DualForm::Dm, m, {}, {transfer_D_to_Dm(d.mult, m)});
        const double e = std::abs(val(dm.report.value) - ref.dual_value);
        worst = std::max(worst, e);
        c.require(e <= 1e-5, "qp " + std::to_string(made) + " |v(D_" + std::to_string(m) + ")-ref|=" + fmt(e));
      }
    }
    return "max |v-ref|=" + fmt(worst) + " max lambda_inf=" + fmt(worst_li);
  });

  run(3, "weak-duality", [&](Check& c) {
    std::mt19937_64 rng(7);
    int checked = 0;
    double worst = -1e300;
    for (int i = 0; i < 20; ++i) {
      const Instance inst = oracle::random_instance(rng, 2);
      const double vp = val(solve_primal(inst, 0.0).value);
      for (int j = 0; j < 50; ++j) {
        const int t = j % 4;
        const SpaceTag tag = t == 0 ? SpaceTag::Haar : t == 1 ? SpaceTag::L1 : SpaceTag::Linf;
        const int m = t == 3 ? 3 : 0;
        const Multiplier mu = oracle::random_multiplier(rng, tag, 6, inst.family.has_tail());
        const double g = val(dual_value(inst, mu, m).value);
        ++checked;
        worst = std::max(worst, g - vp);
        c.require(g <= vp + 1e-7, "instance " + std::to_string(i) + " g=" + fmt(g) + " > v(P)=" + fmt(vp));
      }
      DualOptions o;
      o.primal_value = ExtValue{ExtReal(vp), false};
      const ChainReport ch = duality_chain_report(inst, {0, 3}, o, {});
      const double h = val(ch.haar.report.value), d = val(ch.d.report.value);
      c.require(h <= d + 1e-6, "instance " + std::to_string(i) + " v(Haar)=" + fmt(h) + " > v(D)=" + fmt(d));
      for (const auto& [m, r] : ch.dm) {
        const double v = val(r.report.value);
        c.require(d <= v + 1e-6, "instance " + std::to_string(i) + " v(D)=" + fmt(d) + " > v(D_" +
                                     std::to_string(m) + ")=" + fmt(v));
        c.require(v <= vp + 1e-7, "instance " + std::to_string(i) + " v(D_" + std::to_string(m) + ") > v(P)");
      }
    }
    return std::to_string(checked) + " dual values, max g - v(P)=" + fmt(worst);
  });

  run(4, "transfer-dominance", [&](Check& c) {
    std::mt19937_64 rng(11);
    SolveOptions tight;
    tight.tol = 1e-12;
    double worst = 1e300;
    for (int i = 0; i < 10; ++i) {
      const Instance inst = oracle::random_instance(rng, 2);
      for (int j = 0; j < 10; ++j) {
        const Multiplier mu = oracle::random_multiplier(rng, SpaceTag::L1, 5, inst.family.has_tail());
        const int m = j % 4;
        const double g = val(dual_value(inst, mu, 0, tight).value);
        const double gm = val(dual_value(inst, transfer_D_to_Dm(mu, m), m, tight).value);
        worst = std::min(worst, gm - g);
        c.require(gm >= g - 1e-9, "instance " + std::to_string(i) + " g_m=" + fmt(gm) + " < g=" + fmt(g));
      }
    }
    return "100 multipliers, min g_m - g=" + fmt(worst);
  });

  run(5, "fuzzy-kkt", [&](Check& c) {
    const Vec xb = Vec::Zero(2);
    Multiplier d;
    d.lambda_inf = 1.0;
    const FuzzyCertificate cd = fuzzy_kkt_D(karney, xb, d, 1e-6, 5);
    c.require(cd.found && cd.min_norm <= 1e-10 && cd.all_at_xbar,
              "D certificate min-norm=" + fmt(cd.min_norm));

    const Multiplier hat = transfer_D_to_Dm(d, 3);
    FuzzyOptions fo;
    fo.fixed_n = 50;
    const FuzzyCertificate cm = fuzzy_kkt_Dm(karney, xb, hat, 3, 1e-3, 4, fo);
    c.require(cm.min_norm <= 1e-3, "D_m certificate at n=50 min-norm=" + fmt(cm.min_norm) +
                                       " (bound 1/sqrt(n^2+1)=" + fmt(1.0 / std::sqrt(2501.0)) + ")");

    const SlacknessReport cs = complementary_slackness(karney, xb, d);
    c.require(cs.max_violation == 0.0, "slackness=" + fmt(cs.max_violation));

    // Not part of the criterion: the same multiplier certifies once n >= 1000.
    fo.fixed_n = 1000;
    const FuzzyCertificate big = fuzzy_kkt_Dm(karney, xb, hat, 3, 1e-3, 4, fo);
    std::printf("criterion 5 info: D_m at n=1000 min-norm=%s found=%s\n", fmt(big.min_norm).c_str(),
                big.found ? "yes" : "no");
    return "D min-norm=" + fmt(cd.min_norm) + " D_m(n=50) min-norm=" + fmt(cm.min_norm) +
           " slackness=" + fmt(cs.max_violation);
  });

  run(6, "minimax", [&](Check& c) {
    std::string s;
    for (const char* name : {"minimax_abs", "karney"}) {
      const Instance inst = builtin(name);
      const MinimaxReport r = minimax_check(inst.family, inst.box, 32);
      const double lhs = val(r.lhs), rhs = val(r.rhs);
      c.require(std::abs(lhs - rhs) <= 1e-4, std::string(name) + " |lhs-rhs|=" + fmt(std::abs(lhs - rhs)));
      const double grid =
          oracle::grid_min(inst.box, [&](const Vec& x) { return inst.family.sup(x).value.to_double(); });
      c.require(std::abs(grid - lhs) <= 1e-4, std::string(name) + " grid inf-sup=" + fmt(grid) + " lhs=" + fmt(lhs));
      s += std::string(name) + ": lhs=" + fmt(lhs) + " rhs=" + fmt(rhs) + " grid=" + fmt(grid) + "  ";
    }
    return s;
  });

  run(7, "lambda-gap", [&](Check& c) {
    // i_{(0,1]} and i_{[-1,0)}, discretized with a small gap around 0.
    Vec lo1(1), hi1(1), lo2(1), hi2(1);
    lo1 << 0.01;
    hi1 << 1.0;
    lo2 << -1.0;
    hi2 << -0.01;
    const std::vector<ConvexFn> fns{ConvexFn::box_indicator(lo1, hi1), ConvexFn::box_indicator(lo2, hi2)};
    Box U{Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), false};
    const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
    const UniformEstimate e = lambda_uniform_infimum(fns, U, 2, h, {201});
    c.require(e.estimate.is_finite() && e.estimate.value() <= 1e-9, "Lambda=" + e.estimate.str());
    c.require(e.grid_inf_sum.is_infinite() || e.grid_inf_sum.value() > kDivergenceCap,
              "grid inf of sum=" + e.grid_inf_sum.str());
    return "Lambda=" + e.estimate.str() + " grid inf sum=" + e.grid_inf_sum.str();
  });

  run(8, "oracle-agreement", [&](Check& c) {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Instance inst = oracle::random_instance(rng, 2);
      const Multiplier mu = oracle::random_multiplier(rng, SpaceTag::L1, 4, inst.family.has_tail());
      const double inner = val(minimize_lagrangian(inst, assemble_lagrangian(inst, mu)).value);
      // Direct evaluation: the finite support and lambda_inf f_inf, no series code.
      auto L = [&](const Vec& x) {
        double v = inst.f0.eval(x).to_double();
        for (std::size_t k = 0; k < mu.support.size() && inst.family.has_index(static_cast<long long>(k) + 1); ++k)
          if (mu.support[k] > 0.0) v += mu.support[k] * inst.family.eval(static_cast<long long>(k) + 1, x).to_double();
        if (mu.lambda_inf > 0.0) v += mu.lambda_inf * inst.family.f_infinity(x).to_double();
        return v;
      };
      const double grid = oracle::grid_min(inst.box, L);
      worst = std::max(worst, std::abs(inner - grid));
      c.require(std::abs(inner - grid) <= 1e-4,
                "instance " + std::to_string(i) + " inner=" + fmt(inner) + " grid=" + fmt(grid));
    }
    const ScanReport s = value_function_scan(karney, {1.0, 0.5, 0.1, 0.01, 0.001});
    c.require(s.monotone, "v(eps) not monotone");
    c.require(s.limit.is_finite() && std::abs(s.limit.value.value()) <= 1e-3, "scan limit=" + s.limit.str());
    return "max |inner-grid|=" + fmt(worst) + " scan limit=" + s.limit.str();
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
