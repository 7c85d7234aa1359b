#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "../oracles.hpp"
#include "icvx/instances.hpp"
#include "icvx/json_io.hpp"
#include "icvx/primal.hpp"

using namespace icvx;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({
  "dim": 1,
  "box": {"lo": [-1], "hi": [1]},
  "objective": {"kind": "affine", "a": [1], "b": 0},
  "constraints": {"prefix": [], "tail": {"kind": "none"}}
})";

}  // namespace

TEST_CASE("builtin library") {
  const auto names = builtin_names();
  CHECK(names == std::vector<std::string>{"karney", "padded_finite_qp", "onedim_tail", "minimax_abs"});
  const Instance k = builtin("karney");
  CHECK(k.dim == 2);
  CHECK(k.box.artificial);
  CHECK(k.family.at(3).eval(v2(6, 1)).value() == doctest::Approx(1.0));
  for (const Vec& x : {v2(0.3, -2), v2(-7, 4)}) CHECK(k.family.eval(3, x).value() == doctest::Approx(x[0] / 3 - x[1]));
  const Instance q = builtin("padded_finite_qp");
  CHECK(q.family.prefix_size() == 3);
  REQUIRE(std::holds_alternative<tail::Constant>(q.family.tail()));
  CHECK(q.family.eval(4, v2(1, 1)).value() == -1.0);
  CHECK(q.family.eval(99, v2(1, 1)).value() == -1.0);
  const Instance o = builtin("onedim_tail");
  CHECK(o.dim == 1);
  CHECK(o.f0.eval(Vec::Constant(1, 3.0)).value() == 9.0);
  CHECK(o.family.eval(4, Vec::Constant(1, 0.0)).value() == doctest::Approx(-0.25));
  CHECK(std::abs(solve_primal(o, 0.0).value.value.value()) <= 1e-8);
  CHECK_THROWS_WITH_AS(builtin("nope"), doctest::Contains("nope"), Error);
}

TEST_CASE("builtins satisfy slater unless marked") {
  for (const auto& n : builtin_names()) {
    const Instance inst = builtin(n);
    CHECK_MESSAGE(slater_check(inst).holds == inst.slater_expected, n);
  }
}

TEST_CASE("minimal document") {
  const Instance m = parse_instance(kMinimal);
  CHECK(m.dim == 1);
  CHECK_FALSE(m.family.has_tail());
  CHECK(m.family.prefix_size() == 0);
  CHECK(solve_primal(m, 0.0).value.value.value() == doctest::Approx(-1.0));
}

TEST_CASE("karney document in docs equals the builtin") {
  const std::string text = read_file(std::string(ICVX_SOURCE_DIR) + "/docs/karney.json");
  REQUIRE_FALSE(text.empty());
  const Instance k = parse_instance(text);
  CHECK(serialize_instance(k) == serialize_instance(builtin("karney")));
  CHECK(text == serialize_instance(builtin("karney")));
}

TEST_CASE("round trip") {
  for (const auto& n : builtin_names()) {
    const std::string s = serialize_instance(builtin(n));
    CHECK(serialize_instance(parse_instance(s)) == s);
  }
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = oracle::random_instance(rng, 1 + t % 3);
    const std::string s = serialize_instance(inst);
    const Instance back = parse_instance(s);
    CHECK(serialize_instance(back) == s);
    // Same functions, bit for bit.
    const Vec x = oracle::random_vec(rng, inst.dim, 2.0);
    CHECK(back.f0.eval(x) == inst.f0.eval(x));
    for (long long k = 1; k <= 6; ++k)
      if (inst.family.has_index(k)) CHECK(back.family.eval(k, x) == inst.family.eval(k, x));
  }
}

TEST_CASE("every function kind serializes") {
  const Vec a = v2(1, -2);
  const ConvexFn f = ConvexFn::sum({ConvexFn::scale(2.0, ConvexFn::positive_part(ConvexFn::affine(a, 0.5))),
                                    ConvexFn::shift(ConvexFn::max_affine({{a, 0}, {-a, 1}}), 3.0),
                                    ConvexFn::box_indicator(v2(-1, -1), v2(1, 2)),
                                    ConvexFn::quadratic(Mat::Identity(2, 2), a, 1.0)});
  const json j = fn_to_json(f);
  const ConvexFn g = fn_from_json(j, 2, "f");
  CHECK(fn_to_json(g) == j);
  for (const Vec& x : {v2(0, 0), v2(0.5, 1.5), v2(3, 0)}) CHECK(g.eval(x) == f.eval(x));
}

TEST_CASE("rejections and diagnostics") {
  const std::string nd = R"({
  "dim": 1,
  "box": {"lo": [-1], "hi": [1]},
  "objective": {"kind": "quadratic", "Q": [[-1]], "a": [0], "b": 0},
  "constraints": {"prefix": [], "tail": {"kind": "none"}}
})";
  CHECK(error_of(nd).find("objective") != std::string::npos);
  CHECK(error_of(nd).find("positive semidefinite") != std::string::npos);

  const std::string bad_len = R"({
  "dim": 2,
  "box": {"lo": [-1, -1], "hi": [1, 1]},
  "objective": {"kind": "affine", "a": [1, 0], "b": 0},
  "constraints": {"prefix": [{"kind": "affine", "a": [1, 0], "b": 0}, {"kind": "affine", "a": [1], "b": 0}],
                  "tail": {"kind": "none"}}
})";
  CHECK(error_of(bad_len).find("constraints.prefix[1].a") != std::string::npos);

  const std::string bad_kind = R"({
  "dim": 1,
  "box": {"lo": [-1], "hi": [1]},
  "objective": {"kind": "cubic"},
  "constraints": {"prefix": [], "tail": {"kind": "none"}}
})";
  CHECK(error_of(bad_kind).find("objective.kind") != std::string::npos);

  const std::string syntax = "{\n  \"dim\": 1,\n  \"box\": oops\n}";
  CHECK(error_of(syntax).find("line 3") != std::string::npos);

  CHECK(error_of(R"({"dim": 1})").find("box") != std::string::npos);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.json"), Error);
  CHECK_THROWS_AS(load_instance("builtin:missing"), Error);
  CHECK(load_instance("builtin:karney").name == "karney");
}
