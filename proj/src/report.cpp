#include "icvx/report.hpp"

#include <chrono>
#include <ctime>

namespace icvx {

namespace {

json opt_vec(const std::optional<Vec>& v) { return v ? vec_to_json(*v) : json(nullptr); }

json strings(const std::vector<std::string>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

json to_json(const Multiplier& m) {
  json j;
  j["space"] = to_string(m.tag);
  json s = json::array();
  for (double v : m.support) s.push_back(v);
  j["support"] = s;
  j["tail_value"] = m.tail_value;
  j["lambda_inf"] = m.lambda_inf;
  return j;
}

Multiplier multiplier_from_json(const json& j) {
  if (!j.is_object()) throw Error("multiplier: expected an object");
  Multiplier m;
  const std::string space = j.value("space", std::string("l1"));
  if (space == "haar")
    m.tag = SpaceTag::Haar;
  else if (space == "l1")
    m.tag = SpaceTag::L1;
  else if (space == "linf")
    m.tag = SpaceTag::Linf;
  else
    throw Error("multiplier.space: unknown space '" + space + "'");
  if (j.contains("support")) {
    const Vec v = vec_from_json(j.at("support"), -1, "multiplier.support");
    m.support.assign(v.data(), v.data() + v.size());
  }
  m.tail_value = j.value("tail_value", 0.0);
  m.lambda_inf = j.value("lambda_inf", 0.0);
  m.validate();
  return m;
}

json to_json(const ValueReport& r) {
  json j;
  j["value"] = ext_to_json(r.value);
  j["argmin"] = opt_vec(r.argmin);
  j["lower_bound"] = std::isfinite(r.lower_bound) ? json(r.lower_bound) : json("-inf");
  json res = json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  j["residuals"] = res;
  j["iterations"] = r.iterations;
  j["flags"] = strings(r.flags);
  return j;
}

json to_json(const DualResult& r) {
  json j;
  j["value"] = ext_to_json(r.report.value);
  j["upper"] = std::isfinite(r.upper) ? json(r.upper) : json("+inf");
  j["multiplier"] = to_json(r.mult);
  j["inner"] = to_json(r.report);
  j["outer_iterations"] = r.outer_iterations;
  j["flags"] = strings(r.flags);
  return j;
}

json to_json(const SlaterReport& r) {
  json j;
  j["holds"] = r.holds;
  j["witness"] = opt_vec(r.witness);
  j["min_sup"] = ext_to_json(r.min_sup);
  return j;
}

json to_json(const ScanReport& r) {
  json j;
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(json{{"eps", p.eps}, {"value", ext_to_json(p.value)}});
  j["points"] = pts;
  j["limit"] = ext_to_json(r.limit);
  j["v0"] = ext_to_json(r.v0);
  j["monotone"] = r.monotone;
  j["jump"] = r.jump;
  return j;
}

json to_json(const ChainReport& r) {
  json j;
  j["primal"] = ext_to_json(r.primal);
  j["primal_argmin"] = opt_vec(r.primal_argmin);
  j["haar"] = to_json(r.haar);
  j["d"] = to_json(r.d);
  json dm = json::array();
  for (const auto& [m, res] : r.dm) {
    json e = to_json(res);
    e["m"] = m;
    dm.push_back(e);
  }
  j["dm"] = dm;
  j["scan"] = to_json(r.scan);
  j["ordered"] = r.ordered;
  j["scan_below_d"] = r.scan_below_d;
  j["violations"] = strings(r.violations);
  return j;
}

json to_json(const MinimaxReport& r) {
  json j;
  j["lhs"] = ext_to_json(r.lhs);
  j["lhs_point"] = opt_vec(r.lhs_point);
  j["rhs"] = ext_to_json(r.rhs);
  j["witness"] = to_json(r.witness);
  j["gap"] = r.gap;
  j["holds"] = r.holds;
  return j;
}

json to_json(const FuzzyCertificate& c) {
  json j;
  j["form"] = c.form;
  j["found"] = c.found;
  j["failure"] = c.failure;
  j["m"] = c.m;
  j["eps"] = c.eps;
  j["n"] = c.n;
  j["x_bar"] = vec_to_json(c.x_bar);
  json terms = json::array();
  for (const auto& t : c.terms)
    terms.push_back(json{{"index", t.index},
                         {"weight", t.weight},
                         {"positive_part", t.positive_part},
                         {"point", vec_to_json(t.point)}});
  j["terms"] = terms;
  j["min_norm"] = std::isfinite(c.min_norm) ? json(c.min_norm) : json("+inf");
  j["min_norm_vector"] = c.min_norm_vector.size() ? vec_to_json(c.min_norm_vector) : json(nullptr);
  j["sum_lhs"] = c.sum_lhs;
  j["sum_rhs"] = c.sum_rhs;
  j["all_at_xbar"] = c.all_at_xbar;
  j["slater_holds"] = c.slater_holds;
  j["candidates_tried"] = c.candidates_tried;
  return j;
}

FuzzyCertificate certificate_from_json(const json& j) {
  FuzzyCertificate c;
  c.form = j.at("form").get<std::string>();
  c.found = j.at("found").get<bool>();
  c.failure = j.value("failure", std::string());
  c.m = j.at("m").get<int>();
  c.eps = j.at("eps").get<double>();
  c.n = j.at("n").get<int>();
  c.x_bar = vec_from_json(j.at("x_bar"), -1, "x_bar");
  for (const auto& t : j.at("terms"))
    c.terms.push_back({t.at("index").get<long long>(), t.at("weight").get<double>(),
                       t.at("positive_part").get<bool>(), vec_from_json(t.at("point"), -1, "terms.point")});
  if (j.at("min_norm").is_number()) c.min_norm = j.at("min_norm").get<double>();
  c.sum_lhs = j.at("sum_lhs").get<double>();
  c.sum_rhs = j.at("sum_rhs").get<double>();
  c.all_at_xbar = j.at("all_at_xbar").get<bool>();
  c.slater_holds = j.value("slater_holds", false);
  c.candidates_tried = j.value("candidates_tried", 0);
  return c;
}

json to_json(const SlacknessReport& r) {
  json j;
  j["pass"] = r.pass;
  j["max_violation"] = r.max_violation;
  json p = json::array();
  for (const auto& [k, v] : r.products) p.push_back(json{{"k", k}, {"product", v}});
  j["products"] = p;
  return j;
}

json to_json(const AttainmentReport& r) {
  json j;
  j["pass"] = r.pass;
  j["lagrangian_at_xbar"] = ext_to_json(r.lagrangian_at_xbar);
  j["inner_inf"] = ext_to_json(r.inner_inf);
  j["f0_at_xbar"] = r.f0_at_xbar;
  j["residual"] = std::isfinite(r.residual) ? json(r.residual) : json("+inf");
  return j;
}

json to_json(const UniformEstimate& e) {
  json j;
  j["estimate"] = ext_to_json(e.estimate);
  json t = json::array();
  for (const auto& p : e.trace) t.push_back(json{{"h", p.h}, {"value", ext_to_json(p.value)}});
  j["trace"] = t;
  j["grid_inf_sum"] = ext_to_json(e.grid_inf_sum);
  j["clamped"] = e.clamped;
  j["spacing"] = e.spacing;
  return j;
}

json Report::to_json(bool with_meta) const {
  json j;
  j["instance"] = instance;
  j["command"] = command;
  j["values"] = values;
  j["multipliers"] = multipliers;
  j["certificates"] = certificates;
  j["residuals"] = residuals;
  j["flags"] = flags;
  if (with_meta) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["meta"] = json{{"version", "0.1.0"}, {"timestamp", buf}};
  }
  return j;
}

}  // namespace icvx
