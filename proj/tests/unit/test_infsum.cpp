#include <random>

#include "doctest.h"

#include "icvx/instances.hpp"
#include "icvx/uniform.hpp"

using namespace icvx;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// f_k(x) = x - 1/k for every k.
ConstraintFamily shifted_ones() { return ConstraintFamily(1, {}, tail::RationalAffine{v1(1), v1(0), 0.0, -1.0}); }

}  // namespace

TEST_CASE("family resolves indices") {
  const ConstraintFamily fam = builtin("karney").family;
  CHECK(fam.eval(1, v2(3, 5)).value() == -6.0);
  CHECK(fam.eval(2, v2(3, 5)).value() == 3.0);
  CHECK(fam.eval(3, v2(3, 5)).value() == doctest::Approx(1.0 - 5.0));
  CHECK(fam.eval(1000, v2(3, 5)).value() == doctest::Approx(0.003 - 5.0));
  CHECK_FALSE(fam.has_index(0));
  const ConstraintFamily fin(1, {ConvexFn::affine(v1(1), 0)}, tail::None{});
  CHECK(fin.has_index(1));
  CHECK_FALSE(fin.has_index(2));
  CHECK_THROWS_AS((void)fin.at(2), Error);
}

TEST_CASE("f_infinity examples") {
  const ConstraintFamily k = builtin("karney").family;
  CHECK(f_infinity(k, v2(7, 2)).value() == -2.0);
  CHECK(f_infinity(k, v2(-1, -3)).value() == 3.0);
  const ConstraintFamily c(1, {ConvexFn::affine(v1(5), 0)}, tail::Constant{ConvexFn::constant(1, -1.0)});
  for (double x : {-2.0, 0.0, 9.0}) CHECK(f_infinity(c, v1(x)).value() == -1.0);
  CHECK(f_infinity(shifted_ones(), v1(0)).value() == 0.0);
  const ConstraintFamily fin(1, {ConvexFn::affine(v1(1), 0)}, tail::None{});
  CHECK_THROWS_WITH_AS(f_infinity(fin, v1(0)), doctest::Contains("f_inf undefined"), Error);
}

TEST_CASE("rational tail approaches its limit at rate 1/k") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const Vec c = v2(u(rng), u(rng)), d = v2(u(rng), u(rng));
    const double e = u(rng), g = u(rng);
    const ConstraintFamily fam(2, {}, tail::RationalAffine{c, d, e, g});
    const Vec x = v2(u(rng), u(rng)), y = v2(u(rng), u(rng));
    for (long long k : {1LL, 2LL, 17LL, 1000LL, 1000000LL})
      CHECK(std::abs(fam.eval(k, x).value() - fam.f_infinity(x).value()) <= (std::abs(d.dot(x)) + std::abs(g)) / k + 1e-12);
    const double a = 0.3;
    CHECK(fam.f_infinity(a * x + (1 - a) * y).value() ==
          doctest::Approx(a * fam.f_infinity(x).value() + (1 - a) * fam.f_infinity(y).value()).epsilon(1e-14));
  }
}

TEST_CASE("sup over the family") {
  const ConstraintFamily k = builtin("karney").family;
  // At (0,0): f1 = -1, f2 = 0, f_k = 0.
  CHECK(k.sup(v2(0, 0)).value.value() == 0.0);
  // At (-1, 0.5): f1 = -1.5, f2 = -1, f_k = -1/k - 0.5 -> sup -0.5 approached.
  const auto s = k.sup(v2(-1, 0.5));
  CHECK(s.value.value() == doctest::Approx(-0.5));
  CHECK(s.index == 0);
  // At (3, 0): f2 = 3 beats every tail term.
  const auto t = k.sup(v2(3, 0));
  CHECK(t.value.value() == doctest::Approx(3.0));
  CHECK(t.index == 2);
  for (double x : {-1.5, -0.3, 0.0, 0.7}) {
    double brute = -1e300;
    for (long long i = 1; i <= 100000; ++i) brute = std::max(brute, shifted_ones().eval(i, v1(x)).value());
    CHECK(shifted_ones().sup(v1(x)).value.value() == doctest::Approx(std::max(brute, x)).epsilon(1e-9));
  }
}

TEST_CASE("upper_sum examples") {
  const Instance k = builtin("karney");
  WeightedSeries s;
  s.weights = {1.0};
  CHECK(upper_sum(k.family, s, v2(0, 0)).value.value() == -1.0);
  WeightedSeries z;
  z.weights = {0.0, 0.0, 0.0};
  const ExtValue zero = upper_sum(k.family, z, v2(0, 0));
  CHECK_FALSE(zero.minus_infinity);
  CHECK(zero.value.value() == 0.0);

  WeightedSeries tail_one;
  tail_one.tail_weight = 1.0;
  tail_one.positive_from = 1;
  CHECK(upper_sum(shifted_ones(), tail_one, v1(0)).value.value() == 0.0);
  const auto ps = partial_sums(shifted_ones(), tail_one, v1(0), 1000000);
  CHECK(std::all_of(ps.begin(), ps.end(), [](const ExtReal& v) { return v == ExtReal(0.0); }));
}

TEST_CASE("upper_sum closed forms") {
  WeightedSeries pos;
  pos.tail_weight = 1.0;
  pos.positive_from = 1;
  // limit > 0: diverges to +inf.
  CHECK(upper_sum(shifted_ones(), pos, v1(0.1)).value.is_infinite());
  // limit < 0: finitely many positive terms, here none.
  CHECK(upper_sum(shifted_ones(), pos, v1(-0.1)).value.value() == 0.0);
  // limit = 0 but <d,x> + g > 0: f_k = 1/k, harmonic divergence.
  const ConstraintFamily harm(1, {}, tail::RationalAffine{v1(0), v1(0), 0.0, 1.0});
  CHECK(upper_sum(harm, pos, v1(0)).value.is_infinite());
  // Plain (not positive part) terms with a negative limit diverge to -inf.
  WeightedSeries plain;
  plain.tail_weight = 1.0;
  CHECK(upper_sum(shifted_ones(), plain, v1(-0.5)).minus_infinity);
  // Constant tail f = -1 with tail weight 0 contributes nothing, with weight 2 to -inf.
  const ConstraintFamily c(1, {}, tail::Constant{ConvexFn::constant(1, -1.0)});
  WeightedSeries w0;
  w0.weights = {3.0};
  CHECK(upper_sum(c, w0, v1(0)).value.value() == -3.0);
  WeightedSeries w2;
  w2.tail_weight = 2.0;
  CHECK(upper_sum(c, w2, v1(0)).minus_infinity);
  // A zero weight on an infinite value is still +inf.
  const ConstraintFamily ind(1, {ConvexFn::box_indicator(v1(0), v1(1))}, tail::None{});
  WeightedSeries zw;
  zw.weights = {0.0};
  CHECK(upper_sum(ind, zw, v1(2)).value.is_infinite());
}

TEST_CASE("finite support equals the plain sum") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.0, 3.0);
  const ConstraintFamily k = builtin("karney").family;
  for (int t = 0; t < 100; ++t) {
    WeightedSeries s;
    const int N = 1 + t % 12;
    for (int i = 0; i < N; ++i) s.weights.push_back(w(rng));
    const Vec x = v2(u(rng), u(rng));
    double direct = 0.0;
    for (int i = 1; i <= N; ++i) direct += s.weights[static_cast<std::size_t>(i - 1)] * k.eval(i, x).value();
    CHECK(upper_sum(k, s, x).value.value() == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("partial sums of nonnegative terms are nondecreasing and bounded by the upper sum") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const ConstraintFamily fam(1, {ConvexFn::affine(v1(u(rng)), u(rng))},
                               tail::RationalAffine{v1(u(rng)), v1(u(rng)), -1.0, u(rng)});
    WeightedSeries s;
    s.tail_weight = 0.5;
    s.weights = {0.7};
    s.positive_from = 1;
    const Vec x = v1(u(rng));
    const auto ps = partial_sums(fam, s, x, 5000);
    for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i - 1] <= ps[i]);
    const ExtValue us = upper_sum(fam, s, x);
    REQUIRE(us.value.is_finite());
    CHECK(ps.back().value() <= us.value.value() + 1e-12);
    CHECK(ps.back().value() == doctest::Approx(us.value.value()).epsilon(1e-9));
  }
}

TEST_CASE("lambda uniform infimum examples") {
  const std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
  {
    Mat Q(1, 1);
    Q << 2.0;
    const std::vector<ConvexFn> f{ConvexFn::quadratic(Q, v1(-1), 0.0)};  // x^2 - x, min -1/4
    const Box U{v1(-1), v1(1), false};
    const UniformEstimate e = lambda_uniform_infimum(f, U, 2, hs, {201});
    CHECK(e.estimate.value() == doctest::Approx(-0.25).epsilon(1e-6));
  }
  {
    Mat Q(1, 1);
    Q << 2.0;
    const std::vector<ConvexFn> f{ConvexFn::quadratic(Q, v1(0), 0.0), ConvexFn::quadratic(Q, v1(-2), 1.0)};
    const Box U{v1(0), v1(1), false};
    const UniformEstimate e = lambda_uniform_infimum(f, U, 3, hs, {201});
    CHECK(e.estimate.value() == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(e.estimate <= e.grid_inf_sum);
  }
  {
    const std::vector<ConvexFn> f{ConvexFn::box_indicator(v1(0.01), v1(1)), ConvexFn::box_indicator(v1(-1), v1(-0.01))};
    const Box U{v1(-1), v1(1), false};
    const UniformEstimate e = lambda_uniform_infimum(f, U, 3, hs, {201});
    CHECK(e.grid_inf_sum.is_infinite());
    REQUIRE(e.estimate.is_finite());
    CHECK(std::abs(e.estimate.value()) <= 1e-9);
  }
}

TEST_CASE("lambda never exceeds the grid infimum of the sum") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    std::vector<ConvexFn> f;
    for (int i = 0; i < 3; ++i) f.push_back(ConvexFn::max_affine({{v1(u(rng)), u(rng)}, {v1(u(rng)), u(rng)}}));
    const Box U{v1(-1), v1(1), false};
    const std::vector<double> hs{0.4, 0.2, 0.1};
    const UniformEstimate e = lambda_uniform_infimum(f, U, 4, hs, {41});
    CHECK(e.estimate <= e.grid_inf_sum);
    for (const auto& p : e.trace) CHECK(p.value <= e.grid_inf_sum);
  }
}

TEST_CASE("theta firm estimate examples") {
  const std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
  Mat Q(1, 1);
  Q << 2.0;
  {
    const std::vector<ConvexFn> f{ConvexFn::quadratic(Q, v1(0.3), 0.0)};
    const Box U{v1(-1), v1(1), false};
    const UniformEstimate e = theta_firm_estimate(f, U, 2, hs, {101});
    REQUIRE(e.estimate.is_finite());
    CHECK(std::abs(e.estimate.value()) <= 1e-9);
  }
  {
    const std::vector<ConvexFn> f{ConvexFn::quadratic(Q, v1(0), 0.0), ConvexFn::quadratic(Q, v1(0), 0.0)};
    const Box U{v1(-1), v1(1), false};
    const UniformEstimate e = theta_firm_estimate(f, U, 3, hs, {101});
    REQUIRE(e.estimate.is_finite());
    // The midpoint of an off-grid pair is not a grid point: one spacing of slack.
    CHECK(e.estimate.value() >= 0.0);
    CHECK(e.estimate.value() <= e.spacing + 1e-12);
  }
  {
    const std::vector<ConvexFn> f{ConvexFn::box_indicator(v1(0.01), v1(1)), ConvexFn::box_indicator(v1(-1), v1(-0.01))};
    const Box U{v1(-1), v1(1), false};
    const UniformEstimate e = theta_firm_estimate(f, U, 3, hs, {201});
    CHECK(e.estimate.is_infinite());
  }
}
