#include "icvx/infsum.hpp"

#include <algorithm>
#include <cmath>

namespace icvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest index we ever materialise when counting positive tail terms.
constexpr long long kIndexCeiling = 1'000'000'000'000'000'000LL;

ExtValue capped(double v) {
  if (v > kDivergenceCap) return ExtValue::plus_inf();
  if (v < -kDivergenceCap) return ExtValue::minus_inf();
  return {ExtReal(v), false};
}

// Outcome of one analytic segment of the series.
struct Segment {
  enum Kind { Finite, PlusInf, MinusInf } kind = Finite;
  double value = 0.0;
};

// sum_{k=a}^{b} (l + h/k), b may be kIndexCeiling.
double rational_block(double l, double h, long long a, long long b) {
  if (b < a) return 0.0;
  return static_cast<double>(b - a + 1) * l + h * (harmonic(b) - harmonic(a - 1));
}

// Last index k >= a with l + h/k > 0, given l < 0 < h; a-1 if none.
long long last_positive(double l, double h, long long a) {
  const double r = h / (-l);
  if (!(r < 1e18)) return kIndexCeiling;
  long long q = static_cast<long long>(std::floor(r));
  while (q >= 1 && l + h / static_cast<double>(q) <= 0.0) --q;
  while (l + h / static_cast<double>(q + 1) > 0.0) ++q;
  return std::max(q, a - 1);
}

}  // namespace

double harmonic(long long n) {
  if (n <= 0) return 0.0;
  if (n <= 1000) {
    double s = 0.0;
    for (long long k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
    return s;
  }
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  constexpr double euler_gamma = 0.57721566490153286061;
  return std::log(x) + euler_gamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2);
}

ConstraintFamily::ConstraintFamily(int dim, std::vector<ConvexFn> prefix, Tail tail)
    : dim_(dim), prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (const auto& f : prefix_)
    if (f.dim() != dim_) throw Error("ConstraintFamily: prefix function has wrong dimension");
  std::visit(overloaded{[](const tail::None&) {},
                        [&](const tail::Constant& t) {
                          if (t.f.dim() != dim_) throw Error("ConstraintFamily: tail has wrong dimension");
                        },
                        [&](const tail::RationalAffine& t) {
                          if (t.c.size() != dim_ || t.d.size() != dim_)
                            throw Error("ConstraintFamily: tail has wrong dimension");
                        }},
             tail_);
}

ConvexFn ConstraintFamily::at(long long k) const {
  if (!has_index(k)) throw Error("ConstraintFamily: index " + std::to_string(k) + " out of range");
  if (k <= prefix_size()) return prefix_[static_cast<std::size_t>(k - 1)];
  if (const auto* c = std::get_if<tail::Constant>(&tail_)) return c->f;
  const auto& r = std::get<tail::RationalAffine>(tail_);
  const double inv = 1.0 / static_cast<double>(k);
  return ConvexFn::affine(r.c + inv * r.d, r.e + inv * r.g);
}

ExtReal ConstraintFamily::eval(long long k, const Vec& x) const {
  if (k > prefix_size()) {
    if (const auto* r = std::get_if<tail::RationalAffine>(&tail_)) {
      const double inv = 1.0 / static_cast<double>(k);
      return r->c.dot(x) + r->e + inv * (r->d.dot(x) + r->g);
    }
  }
  return at(k).eval(x);
}

std::optional<Vec> ConstraintFamily::subgradient(long long k, const Vec& x) const {
  return at(k).subgradient(x);
}

ExtReal ConstraintFamily::f_infinity(const Vec& x) const {
  return std::visit(overloaded{[](const tail::None&) -> ExtReal { throw Error("f_inf undefined for a finite family"); },
                               [&](const tail::Constant& t) -> ExtReal { return t.f.eval(x); },
                               [&](const tail::RationalAffine& t) -> ExtReal { return t.c.dot(x) + t.e; }},
                    tail_);
}

ConvexFn ConstraintFamily::f_infinity_fn() const {
  return std::visit(overloaded{[](const tail::None&) -> ConvexFn { throw Error("f_inf undefined for a finite family"); },
                               [](const tail::Constant& t) { return t.f; },
                               [](const tail::RationalAffine& t) { return ConvexFn::affine(t.c, t.e); }},
                    tail_);
}

ExtReal f_infinity(const ConstraintFamily& fam, const Vec& x) { return fam.f_infinity(x); }

std::optional<ExtReal> ConstraintFamily::tail_sup(const Vec& x) const {
  return std::visit(
      overloaded{[](const tail::None&) -> std::optional<ExtReal> { return std::nullopt; },
                 [&](const tail::Constant& t) -> std::optional<ExtReal> { return t.f.eval(x); },
                 [&](const tail::RationalAffine& t) -> std::optional<ExtReal> {
                   const double l = t.c.dot(x) + t.e;
                   const double h = t.d.dot(x) + t.g;
                   // f_k = l + h/k is monotone in 1/k, so the sup is at k = P+1 or in the limit.
                   return std::max(l, l + h / static_cast<double>(prefix_size() + 1));
                 }},
      tail_);
}

ConstraintFamily::SupValue ConstraintFamily::sup(const Vec& x) const {
  SupValue best{ExtReal(0.0), -1};
  bool have = false;
  for (int k = 1; k <= prefix_size(); ++k) {
    const ExtReal v = prefix_[static_cast<std::size_t>(k - 1)].eval(x);
    if (!have || v > best.value) {
      best = {v, k};
      have = true;
    }
  }
  if (const auto* r = std::get_if<tail::RationalAffine>(&tail_)) {
    const double l = r->c.dot(x) + r->e;
    const double h = r->d.dot(x) + r->g;
    const long long k1 = prefix_size() + 1;
    const SupValue t = h >= 0.0 ? SupValue{l + h / static_cast<double>(k1), k1} : SupValue{l, 0};
    if (!have || t.value > best.value) {
      best = t;
      have = true;
    }
  } else if (const auto* c = std::get_if<tail::Constant>(&tail_)) {
    const ExtReal v = c->f.eval(x);
    if (!have || v > best.value) {
      best = {v, prefix_size() + 1};
      have = true;
    }
  }
  if (!have) throw Error("sup over an empty family");
  return best;
}

std::optional<Vec> ConstraintFamily::sup_subgradient(const Vec& x) const {
  const SupValue s = sup(x);
  if (s.value.is_infinite()) return std::nullopt;
  if (s.index == 0) return std::get<tail::RationalAffine>(tail_).c;
  return at(s.index).subgradient(x);
}

// ---------------------------------------------------------------------------

namespace {

// Shared walk over the explicit and analytic parts of a weighted series.
struct SeriesLayout {
  long long first = 1;          // first index included
  long long explicit_last = 0;  // explicit terms: first .. explicit_last
  long long analytic_first = 0; // analytic tail starts here (0 if finite family)
};

SeriesLayout layout(const ConstraintFamily& fam, const WeightedSeries& s, long long j) {
  SeriesLayout L;
  L.first = j + 1;
  const long long P = fam.prefix_size();
  const long long N = static_cast<long long>(s.weights.size());
  if (fam.has_tail()) {
    L.explicit_last = std::max(P, N);
    L.analytic_first = std::max(L.explicit_last, j) + 1;
  } else {
    L.explicit_last = P;
    L.analytic_first = 0;
  }
  return L;
}

ExtReal term_value(const ConstraintFamily& fam, const WeightedSeries& s, long long k, const Vec& x) {
  ExtReal v = fam.eval(k, x);
  if (k >= s.positive_from) v = max(v, 0.0);
  return s.weight(k) * v;
}

// Value of the analytic part; plain block [a, pf-1] then positive block [max(a,pf), inf).
Segment analytic_value(const ConstraintFamily& fam, const WeightedSeries& s, long long a, const Vec& x) {
  const double tau = s.tail_weight;
  const long long pf = std::max(a, s.positive_from);
  const bool plain_infinite = s.positive_from == std::numeric_limits<long long>::max();
  const long long plain_last = plain_infinite ? kIndexCeiling : pf - 1;

  if (const auto* c = std::get_if<tail::Constant>(&fam.tail())) {
    const ExtReal fv = c->f.eval(x);
    if (fv.is_infinite()) return {Segment::PlusInf, 0.0};
    const double f = fv.value();
    Segment out;
    if (plain_infinite) {
      if (tau == 0.0 || f == 0.0) return out;
      return {f > 0.0 ? Segment::PlusInf : Segment::MinusInf, 0.0};
    }
    out.value = tau * static_cast<double>(std::max(0LL, plain_last - a + 1)) * f;
    if (tau > 0.0 && f > 0.0) return {Segment::PlusInf, 0.0};
    return out;
  }

  const auto& r = std::get<tail::RationalAffine>(fam.tail());
  const double l = r.c.dot(x) + r.e;
  const double h = r.d.dot(x) + r.g;
  if (tau == 0.0) return {};
  if (plain_infinite) {
    const double lead = l != 0.0 ? l : h;
    if (lead == 0.0) return {};
    return {lead > 0.0 ? Segment::PlusInf : Segment::MinusInf, 0.0};
  }
  Segment out;
  out.value = tau * rational_block(l, h, a, plain_last);
  if (l > 0.0 || (l == 0.0 && h > 0.0)) return {Segment::PlusInf, 0.0};
  if (l < 0.0 && h > 0.0) {
    const long long q = last_positive(l, h, pf);
    out.value += tau * rational_block(l, h, pf, q);
  }
  return out;
}

}  // namespace

ExtValue upper_sum(const ConstraintFamily& fam, const WeightedSeries& s, const Vec& x, long long j) {
  if (x.size() != fam.dim()) throw Error("upper_sum: dimension mismatch");
  for (double w : s.weights)
    if (!(w >= 0.0)) throw Error("upper_sum: weights must be nonnegative");
  if (!(s.tail_weight >= 0.0)) throw Error("upper_sum: tail weight must be nonnegative");
  const SeriesLayout L = layout(fam, s, j);
  double total = 0.0;
  for (long long k = L.first; k <= L.explicit_last; ++k) {
    const ExtReal t = term_value(fam, s, k, x);
    if (t.is_infinite()) return ExtValue::plus_inf();
    total += t.value();
  }
  if (L.analytic_first > 0) {
    const Segment seg = analytic_value(fam, s, L.analytic_first, x);
    if (seg.kind == Segment::PlusInf) return ExtValue::plus_inf();
    if (seg.kind == Segment::MinusInf) return ExtValue::minus_inf();
    total += seg.value;
  }
  return capped(total);
}

std::vector<ExtReal> partial_sums(const ConstraintFamily& fam, const WeightedSeries& s, const Vec& x,
                                  long long n, long long j) {
  std::vector<ExtReal> out;
  out.reserve(static_cast<std::size_t>(std::max(0LL, n)));
  ExtReal acc = 0.0;
  for (long long k = j + 1; k <= j + n && fam.has_index(k); ++k) {
    acc += term_value(fam, s, k, x);
    out.push_back(acc);
  }
  return out;
}

std::optional<Vec> upper_sum_subgradient(const ConstraintFamily& fam, const WeightedSeries& s,
                                         const Vec& x) {
  const SeriesLayout L = layout(fam, s, 0);
  Vec g = Vec::Zero(fam.dim());
  for (long long k = L.first; k <= L.explicit_last; ++k) {
    const double w = s.weight(k);
    const ConvexFn f = fam.at(k);
    const ExtReal v = f.eval(x);
    if (v.is_infinite()) return std::nullopt;
    if (w == 0.0) continue;
    if (k >= s.positive_from && v.value() <= 0.0) continue;
    auto gk = f.subgradient(x);
    if (!gk) return std::nullopt;
    g += w * *gk;
  }
  if (L.analytic_first == 0 || s.tail_weight == 0.0) {
    if (L.analytic_first > 0)
      if (const auto* c = std::get_if<tail::Constant>(&fam.tail()))
        if (c->f.eval(x).is_infinite()) return std::nullopt;
    return g;
  }
  const double tau = s.tail_weight;
  const long long a = L.analytic_first;
  const bool plain_infinite = s.positive_from == std::numeric_limits<long long>::max();
  if (plain_infinite) return g;  // only finite on a set with empty interior
  const long long pf = std::max(a, s.positive_from);
  const long long plain_last = pf - 1;
  if (const auto* c = std::get_if<tail::Constant>(&fam.tail())) {
    const ExtReal fv = c->f.eval(x);
    if (fv.is_infinite()) return std::nullopt;
    auto gf = c->f.subgradient(x);
    if (!gf) return std::nullopt;
    if (plain_last >= a) g += tau * static_cast<double>(plain_last - a + 1) * *gf;
    if (fv.value() > 0.0) return std::nullopt;
    return g;
  }
  const auto& r = std::get<tail::RationalAffine>(fam.tail());
  const double l = r.c.dot(x) + r.e;
  const double h = r.d.dot(x) + r.g;
  if (plain_last >= a)
    g += tau * (static_cast<double>(plain_last - a + 1) * r.c + (harmonic(plain_last) - harmonic(a - 1)) * r.d);
  if (l > 0.0 || (l == 0.0 && h > 0.0)) return std::nullopt;
  if (l < 0.0 && h > 0.0) {
    const long long q = last_positive(l, h, pf);
    if (q >= pf)
      g += tau * (static_cast<double>(q - pf + 1) * r.c + (harmonic(q) - harmonic(pf - 1)) * r.d);
  }
  return g;
}

std::optional<Halfspace> upper_sum_domain_cut(const ConstraintFamily& fam, const WeightedSeries& s,
                                              const Vec& x) {
  const SeriesLayout L = layout(fam, s, 0);
  for (long long k = L.first; k <= L.explicit_last; ++k) {
    const ConvexFn f = fam.at(k);
    if (f.eval(x).is_infinite()) return f.domain_cut(x);
  }
  if (L.analytic_first == 0) return std::nullopt;
  const bool positive_tail = s.positive_from != std::numeric_limits<long long>::max();
  if (const auto* c = std::get_if<tail::Constant>(&fam.tail())) {
    const ExtReal fv = c->f.eval(x);
    if (fv.is_infinite()) return c->f.domain_cut(x);
    if (positive_tail && s.tail_weight > 0.0 && fv.value() > 0.0) {
      Vec g = *c->f.subgradient(x);
      return Halfspace{g, g.dot(x) - fv.value()};
    }
    return std::nullopt;
  }
  if (!positive_tail || s.tail_weight == 0.0) return std::nullopt;
  const auto& r = std::get<tail::RationalAffine>(fam.tail());
  const double l = r.c.dot(x) + r.e;
  const double h = r.d.dot(x) + r.g;
  if (l > 0.0) return Halfspace{r.c, -r.e};
  if (l == 0.0 && h > 0.0) {
    if (r.c.squaredNorm() > 0.0) return Halfspace{r.c, r.c.dot(x)};
    return Halfspace{r.d, -r.g};
  }
  return std::nullopt;
}

}  // namespace icvx
