#include "icvx/extreal.hpp"

#include <cmath>
#include <sstream>

namespace icvx {

namespace {
std::atomic<std::uint64_t> g_inf_minus_inf{0};
}

namespace diagnostics {
std::uint64_t inf_minus_inf_count() { return g_inf_minus_inf.load(); }
void reset_inf_minus_inf_count() { g_inf_minus_inf.store(0); }
}  // namespace diagnostics

ExtReal::ExtReal(double v) {
  if (std::isnan(v)) throw Error("ExtReal: NaN is not an extended real");
  if (v == -std::numeric_limits<double>::infinity())
    throw Error("ExtReal: -inf is not representable");
  if (v == std::numeric_limits<double>::infinity()) {
    inf_ = true;
  } else {
    v_ = v;
  }
}

double ExtReal::value() const {
  if (inf_) throw Error("ExtReal: value() on +inf");
  return v_;
}

ExtReal operator+(ExtReal a, ExtReal b) {
  if (a.inf_ || b.inf_) return ExtReal::infinity();
  return ExtReal(a.v_ + b.v_);
}

ExtReal operator-(ExtReal a, ExtReal b) {
  if (b.inf_) {
    if (!a.inf_) throw Error("ExtReal: finite - (+inf) would be -inf");
    g_inf_minus_inf.fetch_add(1);
    return ExtReal::infinity();
  }
  if (a.inf_) return a;
  return ExtReal(a.v_ - b.v_);
}

ExtReal operator*(double c, ExtReal x) {
  if (!(c >= 0.0)) throw Error("ExtReal: scaling requires a nonnegative factor");
  if (x.inf_) return ExtReal::infinity();
  return ExtReal(c * x.v_);
}

ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }

std::string ExtReal::str() const {
  if (inf_) return "+inf";
  std::ostringstream os;
  os.precision(17);
  os << v_;
  return os.str();
}

std::string ExtValue::str() const { return minus_infinity ? "-inf" : value.str(); }

}  // namespace icvx
