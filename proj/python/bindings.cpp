// Python bindings. Results cross the boundary as report JSON text; the
// package decodes it into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icvx/instances.hpp"
#include "icvx/report.hpp"

namespace py = pybind11;
using namespace icvx;

namespace {

std::string text(const json& j) { return j.dump(); }

Multiplier mult_of(const std::string& s) { return multiplier_from_json(json::parse(s)); }

DualForm form_of(const std::string& s) {
  if (s == "haar") return DualForm::Haar;
  if (s == "d") return DualForm::D;
  if (s == "dm") return DualForm::Dm;
  throw Error("unknown dual form '" + s + "'");
}

Vec vec_of(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

DualOptions dual_opts(int horizon) {
  DualOptions o;
  o.horizon = horizon;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("name", [](const Instance& i) { return i.name; })
      .def_property_readonly("dim", [](const Instance& i) { return i.dim; })
      .def_property_readonly("slater_expected", [](const Instance& i) { return i.slater_expected; })
      .def("to_json", [](const Instance& i) { return serialize_instance(i); })
      .def("__repr__", [](const Instance& i) { return "<Instance " + i.name + " dim=" + std::to_string(i.dim) + ">"; });

  m.def("builtin_names", &builtin_names);
  m.def("builtin", &builtin, py::arg("name"));
  m.def("load_instance", &load_instance, py::arg("ref"));
  m.def("parse_instance", &parse_instance, py::arg("text"));

  m.def(
      "solve_primal",
      [](const Instance& inst, double eps, int k_trunc) { return text(to_json(solve_primal(inst, eps, k_trunc))); },
      py::arg("inst"), py::arg("eps") = 0.0, py::arg("k_trunc") = 1);
  m.def(
      "solve_dual",
      [](const Instance& inst, const std::string& form, int mm, int horizon) {
        return text(to_json(solve_dual(inst, form_of(form), mm, dual_opts(horizon))));
      },
      py::arg("inst"), py::arg("form") = "d", py::arg("m") = 0, py::arg("horizon") = 32);
  m.def(
      "dual_value",
      [](const Instance& inst, const std::string& mult, int mm) { return text(to_json(dual_value(inst, mult_of(mult), mm))); },
      py::arg("inst"), py::arg("mult"), py::arg("m") = 0);
  m.def(
      "transfer_D_to_Dm", [](const std::string& mult, int mm) { return text(to_json(transfer_D_to_Dm(mult_of(mult), mm))); },
      py::arg("mult"), py::arg("m"));
  m.def(
      "duality_chain",
      [](const Instance& inst, const std::vector<int>& m_list, int horizon) {
        return text(to_json(duality_chain_report(inst, m_list, dual_opts(horizon))));
      },
      py::arg("inst"), py::arg("m_list") = std::vector<int>{0, 3}, py::arg("horizon") = 32);
  m.def(
      "slater_check", [](const Instance& inst) { return text(to_json(slater_check(inst))); }, py::arg("inst"));
  m.def(
      "value_function_scan",
      [](const Instance& inst, const std::vector<double>& eps) { return text(to_json(value_function_scan(inst, eps))); },
      py::arg("inst"), py::arg("eps_list"));
  m.def(
      "minimax_check",
      [](const Instance& inst, int n) { return text(to_json(minimax_check(inst.family, inst.box, n))); },
      py::arg("inst"), py::arg("n") = 32);
  m.def(
      "complementary_slackness",
      [](const Instance& inst, const std::vector<double>& x, const std::string& mult, std::optional<int> mm) {
        return text(to_json(complementary_slackness(inst, vec_of(x), mult_of(mult), mm)));
      },
      py::arg("inst"), py::arg("x_bar"), py::arg("mult"), py::arg("m") = py::none());
  m.def(
      "lagrangian_attainment",
      [](const Instance& inst, const std::vector<double>& x, const std::string& mult, std::optional<int> mm) {
        return text(to_json(lagrangian_attainment(inst, vec_of(x), mult_of(mult), mm)));
      },
      py::arg("inst"), py::arg("x_bar"), py::arg("mult"), py::arg("m") = py::none());
  m.def(
      "fuzzy_kkt",
      [](const Instance& inst, const std::string& form, const std::vector<double>& x, const std::string& mult, int mm,
         double eps, int cap, std::optional<int> n) {
        FuzzyOptions o;
        o.fixed_n = n;
        const FuzzyCertificate c = form == "d"    ? fuzzy_kkt_D(inst, vec_of(x), mult_of(mult), eps, cap, o)
                                   : form == "dm" ? fuzzy_kkt_Dm(inst, vec_of(x), mult_of(mult), mm, eps, cap, o)
                                                  : throw Error("fuzzy_kkt: form must be d or dm");
        json j = to_json(c);
        j["recheck"] = {{"pass", false}};
        if (!c.terms.empty()) {
          const RecheckResult r = recheck_certificate(inst, c, eps);
          j["recheck"] = {{"pass", r.pass}, {"min_norm", r.min_norm}, {"sum_lhs", r.sum_lhs}};
        }
        return text(j);
      },
      py::arg("inst"), py::arg("form"), py::arg("x_bar"), py::arg("mult"), py::arg("m") = 0, py::arg("eps") = 1e-6,
      py::arg("cap") = 5, py::arg("n") = py::none());
}
