#include "icvx/json_io.hpp"

#include <cmath>

namespace icvx {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw Error(path + ": " + what); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::string kind_of(const json& j, const std::string& path) {
  const json& k = field(j, "kind", path);
  if (!k.is_string()) fail(path + ".kind", "expected a string");
  return k.get<std::string>();
}

fn::Affine affine_piece(const json& j, int dim, const std::string& path) {
  return {vec_from_json(field(j, "a", path), dim, path + ".a"), number(field(j, "b", path), path + ".b")};
}

json piece_json(const json& kind, const Vec& a, double b) {
  json j;
  if (!kind.is_null()) j["kind"] = kind;
  j["a"] = vec_to_json(a);
  j["b"] = b;
  return j;
}

}  // namespace

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j, int dim, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (dim >= 0 && static_cast<int>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " numbers, got " + std::to_string(j.size()));
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json ext_to_json(const ExtReal& v) {
  if (v.is_infinite()) return "+inf";
  return v.value();
}

json ext_to_json(const ExtValue& v) {
  if (v.minus_infinity) return "-inf";
  return ext_to_json(v.value);
}

json fn_to_json(const ConvexFn& f) {
  return std::visit(
      [&](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, fn::Affine>) {
          return piece_json("affine", n.a, n.b);
        } else if constexpr (std::is_same_v<T, fn::ConvexQuadratic>) {
          json j;
          j["kind"] = "quadratic";
          json q = json::array();
          for (Eigen::Index r = 0; r < n.Q.rows(); ++r) q.push_back(vec_to_json(n.Q.row(r).transpose()));
          j["Q"] = q;
          j["a"] = vec_to_json(n.a);
          j["b"] = n.b;
          return j;
        } else if constexpr (std::is_same_v<T, fn::MaxAffine>) {
          json j;
          j["kind"] = "max_affine";
          json p = json::array();
          for (const auto& piece : n.pieces) p.push_back(piece_json(nullptr, piece.a, piece.b));
          j["pieces"] = p;
          return j;
        } else if constexpr (std::is_same_v<T, fn::BoxIndicator>) {
          json j;
          j["kind"] = "box_indicator";
          j["lo"] = vec_to_json(n.lo);
          j["hi"] = vec_to_json(n.hi);
          return j;
        } else if constexpr (std::is_same_v<T, fn::Scale>) {
          json j;
          j["kind"] = "scale";
          j["c"] = n.c;
          j["child"] = fn_to_json(*n.child);
          return j;
        } else if constexpr (std::is_same_v<T, fn::Sum>) {
          json j;
          j["kind"] = "sum";
          json c = json::array();
          for (const auto& ch : n.children) c.push_back(fn_to_json(ch));
          j["children"] = c;
          return j;
        } else if constexpr (std::is_same_v<T, fn::PositivePart>) {
          json j;
          j["kind"] = "positive_part";
          j["child"] = fn_to_json(*n.child);
          return j;
        } else {
          json j;
          j["kind"] = "shift";
          j["constant"] = n.constant;
          j["child"] = fn_to_json(*n.child);
          return j;
        }
      },
      f.node());
}

ConvexFn fn_from_json(const json& j, int dim, const std::string& path) {
  const std::string kind = kind_of(j, path);
  try {
    if (kind == "affine") {
      auto p = affine_piece(j, dim, path);
      return ConvexFn::affine(std::move(p.a), p.b);
    }
    if (kind == "quadratic") {
      const json& q = field(j, "Q", path);
      if (!q.is_array() || static_cast<int>(q.size()) != dim)
        fail(path + ".Q", "expected " + std::to_string(dim) + " rows");
      Mat Q(dim, dim);
      for (int r = 0; r < dim; ++r)
        Q.row(r) = vec_from_json(q[static_cast<std::size_t>(r)], dim, path + ".Q[" + std::to_string(r) + "]").transpose();
      return ConvexFn::quadratic(std::move(Q), vec_from_json(field(j, "a", path), dim, path + ".a"),
                                 number(field(j, "b", path), path + ".b"));
    }
    if (kind == "max_affine") {
      const json& p = field(j, "pieces", path);
      if (!p.is_array() || p.empty()) fail(path + ".pieces", "expected a nonempty array");
      std::vector<fn::Affine> pieces;
      for (std::size_t i = 0; i < p.size(); ++i)
        pieces.push_back(affine_piece(p[i], dim, path + ".pieces[" + std::to_string(i) + "]"));
      return ConvexFn::max_affine(std::move(pieces));
    }
    if (kind == "box_indicator")
      return ConvexFn::box_indicator(vec_from_json(field(j, "lo", path), dim, path + ".lo"),
                                     vec_from_json(field(j, "hi", path), dim, path + ".hi"));
    if (kind == "scale")
      return ConvexFn::scale(number(field(j, "c", path), path + ".c"),
                             fn_from_json(field(j, "child", path), dim, path + ".child"));
    if (kind == "sum") {
      const json& c = field(j, "children", path);
      if (!c.is_array() || c.empty()) fail(path + ".children", "expected a nonempty array");
      std::vector<ConvexFn> ch;
      for (std::size_t i = 0; i < c.size(); ++i)
        ch.push_back(fn_from_json(c[i], dim, path + ".children[" + std::to_string(i) + "]"));
      return ConvexFn::sum(std::move(ch));
    }
    if (kind == "positive_part")
      return ConvexFn::positive_part(fn_from_json(field(j, "child", path), dim, path + ".child"));
    if (kind == "shift")
      return ConvexFn::shift(fn_from_json(field(j, "child", path), dim, path + ".child"),
                             number(field(j, "constant", path), path + ".constant"));
  } catch (const Error& e) {
    const std::string msg = e.what();
    // Messages from nested calls already carry a path.
    if (msg.rfind(path, 0) == 0) throw;
    fail(path, msg);
  }
  fail(path + ".kind", "unknown function kind '" + kind + "'");
}

json instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["dim"] = inst.dim;
  json box;
  box["lo"] = vec_to_json(inst.box.lo);
  box["hi"] = vec_to_json(inst.box.hi);
  box["artificial"] = inst.box.artificial;
  j["box"] = box;
  j["objective"] = fn_to_json(inst.f0);
  json cons;
  json prefix = json::array();
  for (const auto& f : inst.family.prefix()) prefix.push_back(fn_to_json(f));
  cons["prefix"] = prefix;
  json t;
  std::visit(
      [&](const auto& tl) {
        using T = std::decay_t<decltype(tl)>;
        if constexpr (std::is_same_v<T, tail::None>) {
          t["kind"] = "none";
        } else if constexpr (std::is_same_v<T, tail::Constant>) {
          t["kind"] = "constant";
          t["f"] = fn_to_json(tl.f);
        } else {
          t["kind"] = "rational_affine";
          t["c"] = vec_to_json(tl.c);
          t["d"] = vec_to_json(tl.d);
          t["e"] = tl.e;
          t["g"] = tl.g;
        }
      },
      inst.family.tail());
  cons["tail"] = t;
  j["constraints"] = cons;
  j["slater_expected"] = inst.slater_expected;
  return j;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  std::string name = "unnamed";
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    name = it->get<std::string>();
  }
  const json& d = field(j, "dim", "$");
  if (!d.is_number_integer()) fail("dim", "expected an integer");
  const int dim = d.get<int>();
  if (dim < 1 || dim > 3) fail("dim", "must be 1, 2 or 3");

  const json& bj = field(j, "box", "$");
  Box box;
  box.lo = vec_from_json(field(bj, "lo", "box"), dim, "box.lo");
  box.hi = vec_from_json(field(bj, "hi", "box"), dim, "box.hi");
  if (auto it = bj.find("artificial"); it != bj.end()) {
    if (!it->is_boolean()) fail("box.artificial", "expected a boolean");
    box.artificial = it->get<bool>();
  }
  for (int i = 0; i < dim; ++i)
    if (!(box.lo[i] < box.hi[i])) fail("box", "lo must be below hi in every coordinate");

  ConvexFn f0 = fn_from_json(field(j, "objective", "$"), dim, "objective");

  const json& cj = field(j, "constraints", "$");
  const json& pj = field(cj, "prefix", "constraints");
  if (!pj.is_array()) fail("constraints.prefix", "expected an array");
  std::vector<ConvexFn> prefix;
  for (std::size_t i = 0; i < pj.size(); ++i)
    prefix.push_back(fn_from_json(pj[i], dim, "constraints.prefix[" + std::to_string(i) + "]"));

  const json& tj = field(cj, "tail", "constraints");
  const std::string tk = kind_of(tj, "constraints.tail");
  Tail tl;
  if (tk == "none") {
    tl = tail::None{};
  } else if (tk == "constant") {
    tl = tail::Constant{fn_from_json(field(tj, "f", "constraints.tail"), dim, "constraints.tail.f")};
  } else if (tk == "rational_affine") {
    const std::string p = "constraints.tail";
    tl = tail::RationalAffine{vec_from_json(field(tj, "c", p), dim, p + ".c"),
                              vec_from_json(field(tj, "d", p), dim, p + ".d"), number(field(tj, "e", p), p + ".e"),
                              number(field(tj, "g", p), p + ".g")};
  } else {
    fail("constraints.tail.kind", "unknown tail kind '" + tk + "'");
  }
  bool slater = true;
  if (auto it = j.find("slater_expected"); it != j.end()) {
    if (!it->is_boolean()) fail("slater_expected", "expected a boolean");
    slater = it->get<bool>();
  }
  return Instance(std::move(name), std::move(box), std::move(f0), ConstraintFamily(dim, std::move(prefix), std::move(tl)),
                  slater);
}

}  // namespace icvx
