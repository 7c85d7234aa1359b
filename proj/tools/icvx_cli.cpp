// icvx: command-line front end. Every command writes a JSON report (stdout
// or --out). Exit codes: 0 pass, 2 verification failure, 1 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "icvx/instances.hpp"
#include "icvx/report.hpp"

using namespace icvx;

namespace {

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;

struct Common {
  std::string instance;
  std::string out;
  bool no_meta = false;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw Error("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (v != static_cast<int>(v)) throw Error("expected integers in '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void emit(const Common& c, const Report& r) {
  const std::string text = r.to_json(!c.no_meta).dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write '" + c.out + "'");
  f << text;
}

Report start(const Common& c, const Instance& inst, const std::string& command) {
  Report r;
  r.instance = inst.name.empty() ? c.instance : inst.name;
  r.command = command;
  return r;
}

void add_flags(Report& r, const std::vector<std::string>& flags, const std::string& prefix = "") {
  for (const auto& f : flags) r.flags.push_back(prefix + f);
}

DualForm form_of(const std::string& s) {
  if (s == "haar") return DualForm::Haar;
  if (s == "d") return DualForm::D;
  if (s == "dm") return DualForm::Dm;
  throw Error("unknown dual form '" + s + "'");
}

std::optional<Vec> parse_point(const std::string& s, int dim) {
  if (s.empty()) return std::nullopt;
  const auto v = parse_list(s);
  if (static_cast<int>(v.size()) != dim) throw Error("--x-bar needs " + std::to_string(dim) + " coordinates");
  return Eigen::Map<const Vec>(v.data(), dim);
}

Multiplier read_multiplier(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open multiplier file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return multiplier_from_json(json::parse(ss.str()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinite convex programs: duals, gaps and optimality certificates"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool needs_instance = true) {
    if (needs_instance)
      sub->add_option("instance", c.instance, "instance file or builtin:NAME")->required();
    sub->add_option("--out", c.out, "report path (default stdout)");
    sub->add_flag("--no-meta", c.no_meta, "omit the meta block (byte-identical reports)");
  };

  std::string form = "primal";
  int m = 0;
  double eps = 0.0;
  int horizon = 32;
  double tol = 1e-7;
  auto* solve = app.add_subcommand("solve", "primal value or one dual value");
  add_common(solve);
  solve->add_option("--form", form, "primal|haar|d|dm")->check(CLI::IsMember({"primal", "haar", "d", "dm"}));
  solve->add_option("--m", m, "plain terms in D_m")->check(CLI::NonNegativeNumber);
  solve->add_option("--eps", eps, "constraint relaxation for the primal");
  solve->add_option("--horizon", horizon, "explicit multiplier coordinates")->check(CLI::PositiveNumber);
  solve->add_option("--tol", tol, "outer tolerance")->check(CLI::PositiveNumber);

  std::string m_list = "0,3";
  auto* gap = app.add_subcommand("gap", "duality chain report");
  add_common(gap);
  gap->add_option("--m-list", m_list, "comma-separated m values");
  gap->add_option("--horizon", horizon, "explicit multiplier coordinates")->check(CLI::PositiveNumber);

  std::string kkt_form = "d";
  double kkt_eps = 1e-6;
  int cap = 5;
  int fixed_n = 0;
  std::string x_bar_s, mult_path;
  auto* kkt = app.add_subcommand("kkt", "fuzzy multiplier certificate");
  add_common(kkt);
  kkt->add_option("--form", kkt_form, "d|dm")->check(CLI::IsMember({"d", "dm"}));
  kkt->add_option("--m", m, "plain terms in D_m")->check(CLI::NonNegativeNumber);
  kkt->add_option("--eps", kkt_eps, "ball radius and residual bound")->check(CLI::PositiveNumber);
  kkt->add_option("--cap", cap, "M: certificates use n > M")->check(CLI::PositiveNumber);
  kkt->add_option("--n", fixed_n, "use exactly this n");
  kkt->add_option("--x-bar", x_bar_s, "candidate point, comma separated (default: primal solution)");
  kkt->add_option("--mult", mult_path, "multiplier JSON (default: solved dual)");
  kkt->add_option("--horizon", horizon, "explicit multiplier coordinates")->check(CLI::PositiveNumber);

  auto* slater = app.add_subcommand("slater", "Slater condition");
  add_common(slater);

  std::string eps_list = "1,0.5,0.1,0.01,0.001";
  auto* scan = app.add_subcommand("scan-v", "value function v(eps) near 0");
  add_common(scan);
  scan->add_option("--eps-list", eps_list, "positive, decreasing");

  int N = 32;
  auto* minimax = app.add_subcommand("minimax", "inf sup versus max inf over the simplex");
  add_common(minimax);
  minimax->add_option("--N", N, "explicit simplex coordinates")->check(CLI::PositiveNumber);

  std::string fns_s = "1,2";
  int smax = 0;
  std::string h_grid_s = "0.4,0.2,0.1,0.05";
  int ppa = 41;
  auto* uls = app.add_subcommand("uls", "uniform infimum and firm ULS diagnostics");
  add_common(uls);
  uls->add_option("--fns", fns_s, "indices: 0 is f0, k >= 1 is f_k");
  uls->add_option("--smax", smax, "size of the decoupled subset (default: all)");
  uls->add_option("--h-grid", h_grid_s, "decreasing window sizes");
  uls->add_option("--points", ppa, "grid points per axis")->check(CLI::Range(2, 2001));

  auto* list = app.add_subcommand("list", "builtin instance names");
  list->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (list->parsed()) {
      Report r;
      r.command = "list";
      json names = json::array();
      for (const auto& n : builtin_names()) names.push_back(n);
      r.values["builtins"] = names;
      c.no_meta = true;
      emit(c, r);
      return kPass;
    }

    const Instance inst = load_instance(c.instance);
    DualOptions dopts;
    dopts.horizon = horizon;

    if (solve->parsed()) {
      Report r = start(c, inst, "solve");
      r.values["form"] = form;
      if (form == "primal") {
        SolveOptions so;
        const ValueReport v = solve_primal(inst, eps, 1, so);
        r.values["eps"] = eps;
        r.values["value"] = ext_to_json(v.value);
        r.values["argmin"] = v.argmin ? vec_to_json(*v.argmin) : json(nullptr);
        for (const auto& [k, x] : v.residuals) r.residuals[k] = x;
        add_flags(r, v.flags);
      } else {
        dopts.tol = tol;
        const DualResult d = solve_dual(inst, form_of(form), m, dopts);
        r.values["m"] = m;
        r.values["value"] = ext_to_json(d.report.value);
        r.values["upper"] = d.upper;
        r.values["argmin"] = d.report.argmin ? vec_to_json(*d.report.argmin) : json(nullptr);
        r.multipliers.push_back(to_json(d.mult));
        r.residuals["outer_gap"] = d.upper - d.report.value.to_double();
        for (const auto& [k, x] : d.report.residuals) r.residuals[k] = x;
        add_flags(r, d.flags);
        add_flags(r, d.report.flags, "inner:");
      }
      emit(c, r);
      return kPass;
    }

    if (gap->parsed()) {
      Report r = start(c, inst, "gap");
      const ChainReport ch = duality_chain_report(inst, parse_int_list(m_list), dopts);
      r.values["primal"] = ext_to_json(ch.primal);
      r.values["haar"] = ext_to_json(ch.haar.report.value);
      r.values["d"] = ext_to_json(ch.d.report.value);
      json dm = json::object();
      for (const auto& [mm, res] : ch.dm) dm[std::to_string(mm)] = ext_to_json(res.report.value);
      r.values["dm"] = dm;
      r.values["chain"] = to_json(ch);
      r.multipliers.push_back(to_json(ch.haar.mult));
      r.multipliers.push_back(to_json(ch.d.mult));
      for (const auto& [mm, res] : ch.dm) r.multipliers.push_back(to_json(res.mult));
      r.residuals["haar_gap"] = ch.primal.to_double() - ch.haar.report.value.to_double();
      r.residuals["d_gap"] = ch.primal.to_double() - ch.d.report.value.to_double();
      for (const auto& v : ch.violations) r.flags.push_back("violation:" + v);
      emit(c, r);
      return ch.ordered ? kPass : kFail;
    }

    if (kkt->parsed()) {
      Report r = start(c, inst, "kkt");
      const bool dm = kkt_form == "dm";
      std::optional<Vec> xb = parse_point(x_bar_s, inst.dim);
      if (!xb) {
        const ValueReport p = solve_primal(inst, 0.0);
        if (!p.argmin || !p.value.is_finite()) throw Error("kkt: the primal has no finite solution");
        xb = p.argmin;
      }
      Multiplier mult;
      if (!mult_path.empty()) {
        mult = read_multiplier(mult_path);
      } else {
        const DualResult d = solve_dual(inst, DualForm::D, 0, dopts);
        mult = dm ? transfer_D_to_Dm(d.mult, m) : d.mult;
        add_flags(r, d.flags, "dual:");
      }
      r.multipliers.push_back(to_json(mult));
      r.values["x_bar"] = vec_to_json(*xb);
      FuzzyOptions fo;
      if (fixed_n > 0) fo.fixed_n = fixed_n;
      const int M = dm ? std::max(cap, m + 1) : cap;
      const FuzzyCertificate cert =
          dm ? fuzzy_kkt_Dm(inst, *xb, mult, m, kkt_eps, M, fo) : fuzzy_kkt_D(inst, *xb, mult, kkt_eps, M, fo);
      r.certificates.push_back(to_json(cert));
      const SlacknessReport cs =
          complementary_slackness(inst, *xb, mult, dm ? std::optional<int>(m) : std::nullopt, 1e-6);
      r.values["complementary_slackness"] = to_json(cs);
      r.values["found"] = cert.found;
      r.residuals["min_norm"] = cert.min_norm;
      r.residuals["sum_condition"] = cert.sum_lhs - cert.sum_rhs;
      r.residuals["slackness"] = cs.max_violation;
      if (!cert.found) r.flags.push_back(cert.failure);
      if (!cs.pass) r.flags.push_back("slackness_violated");
      emit(c, r);
      return cert.found ? kPass : kFail;
    }

    if (slater->parsed()) {
      Report r = start(c, inst, "slater");
      const SlaterReport s = slater_check(inst);
      r.values["slater"] = to_json(s);
      r.values["holds"] = s.holds;
      r.values["expected"] = inst.slater_expected;
      r.residuals["min_sup"] = s.min_sup.to_double();
      if (!s.holds) r.flags.push_back("slater_fails");
      emit(c, r);
      return s.holds ? kPass : kFail;
    }

    if (scan->parsed()) {
      Report r = start(c, inst, "scan-v");
      const ScanReport s = value_function_scan(inst, parse_list(eps_list));
      r.values["scan"] = to_json(s);
      r.values["limit"] = ext_to_json(s.limit);
      r.values["v0"] = ext_to_json(s.v0);
      if (!s.monotone) r.flags.push_back("not_monotone");
      if (s.jump) r.flags.push_back("jump_at_zero");
      emit(c, r);
      return s.monotone ? kPass : kFail;
    }

    if (minimax->parsed()) {
      Report r = start(c, inst, "minimax");
      const MinimaxReport mm = minimax_check(inst.family, inst.box, N, 1e-6, dopts);
      r.values["minimax"] = to_json(mm);
      r.values["lhs"] = ext_to_json(mm.lhs);
      r.values["rhs"] = ext_to_json(mm.rhs);
      r.multipliers.push_back(to_json(mm.witness));
      r.residuals["gap"] = mm.gap;
      if (!mm.holds) r.flags.push_back("minimax_gap");
      emit(c, r);
      return mm.holds ? kPass : kFail;
    }

    if (uls->parsed()) {
      Report r = start(c, inst, "uls");
      std::vector<ConvexFn> fns;
      for (int k : parse_int_list(fns_s)) {
        if (k < 0 || (k > 0 && !inst.family.has_index(k))) throw Error("uls: no function with index " + std::to_string(k));
        fns.push_back(k == 0 ? inst.f0 : inst.family.at(k));
      }
      const int s = smax > 0 ? smax : static_cast<int>(fns.size());
      const auto h = parse_list(h_grid_s);
      const UniformEstimate lam = lambda_uniform_infimum(fns, inst.box, s, h, {ppa});
      const UniformEstimate th = theta_firm_estimate(fns, inst.box, s, h, {ppa});
      r.values["lambda"] = to_json(lam);
      r.values["theta"] = to_json(th);
      r.values["lambda_estimate"] = ext_to_json(lam.estimate);
      r.values["theta_estimate"] = ext_to_json(th.estimate);
      r.flags.push_back("heuristic_grid_estimate");
      emit(c, r);
      return kPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "icvx: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
