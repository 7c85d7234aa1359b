#include "icvx/instances.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "icvx/json_io.hpp"

namespace icvx {

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Box make_box(int d, double lo, double hi, bool artificial) {
  return Box{Vec::Constant(d, lo), Vec::Constant(d, hi), artificial};
}

Instance karney() {
  // f0 = u2; f1 = -u2 - 1; f2 = u1; f_k = u1/k - u2 for k >= 3.
  std::vector<ConvexFn> prefix{ConvexFn::affine(vec({0, -1}), -1.0), ConvexFn::affine(vec({1, 0}), 0.0)};
  ConstraintFamily fam(2, std::move(prefix), tail::RationalAffine{vec({0, -1}), vec({1, 0}), 0.0, 0.0});
  return Instance("karney", make_box(2, -100.0, 100.0, true), ConvexFn::affine(vec({0, 1}), 0.0), std::move(fam));
}

Instance padded_finite_qp() {
  Mat Q(2, 2);
  Q << 2.0, 0.5, 0.5, 1.0;
  ConvexFn f0 = ConvexFn::quadratic(Q, vec({-2.0, -1.0}), 0.0);
  std::vector<ConvexFn> prefix{ConvexFn::affine(vec({1, 1}), -1.0), ConvexFn::affine(vec({-1, 0}), -0.5),
                               ConvexFn::affine(vec({1, -1}), -0.5)};
  ConstraintFamily fam(2, std::move(prefix), tail::Constant{ConvexFn::constant(2, -1.0)});
  return Instance("padded_finite_qp", make_box(2, -10.0, 10.0, false), f0, std::move(fam));
}

Instance onedim_tail() {
  Mat Q(1, 1);
  Q << 2.0;
  ConstraintFamily fam(1, {}, tail::RationalAffine{vec({1}), vec({0}), 0.0, -1.0});
  return Instance("onedim_tail", make_box(1, -2.0, 2.0, false), ConvexFn::quadratic(Q, vec({0}), 0.0),
                  std::move(fam));
}

Instance minimax_abs() {
  std::vector<ConvexFn> prefix{ConvexFn::affine(vec({1}), 0.0), ConvexFn::affine(vec({-1}), 0.0)};
  ConstraintFamily fam(1, std::move(prefix), tail::Constant{ConvexFn::constant(1, -1.0)});
  // sup_k f_k = |x| >= 0: no Slater point.
  return Instance("minimax_abs", make_box(1, -2.0, 2.0, false), ConvexFn::constant(1, 0.0), std::move(fam),
                  false);
}

}  // namespace

std::vector<std::string> builtin_names() { return {"karney", "padded_finite_qp", "onedim_tail", "minimax_abs"}; }

Instance builtin(const std::string& name) {
  if (name == "karney") return karney();
  if (name == "padded_finite_qp") return padded_finite_qp();
  if (name == "onedim_tail") return onedim_tail();
  if (name == "minimax_abs") return minimax_abs();
  throw Error("unknown builtin instance '" + name + "'");
}

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
    throw Error("line " + std::to_string(line) + ": " + e.what());
  }
  return instance_from_json(j);
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance load_instance(const std::string& ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) return builtin(ref.substr(prefix.size()));
  std::ifstream in(ref);
  if (!in) throw Error("cannot open instance file '" + ref + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace icvx
