#pragma once
// Independent reference computations for the tests. Nothing here calls the
// library's solvers: grid search and active-set enumeration only.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "icvx/instances.hpp"
#include "icvx/report.hpp"

namespace oracle {

using icvx::ConvexFn;
using icvx::ExtReal;
using icvx::Mat;
using icvx::Vec;

/// Dense grid over the box followed by zooming around the best point. Each
/// level keeps a window of +-`keep` steps, so it shrinks by (ppa - 1) / (2 keep).
template <class F>
double grid_min(const icvx::Box& box, F&& f, int levels = 12, int ppa = 101, Vec* arg = nullptr, int keep = 10) {
  const int d = box.dim();
  Vec lo = box.lo, hi = box.hi;
  double best = std::numeric_limits<double>::infinity();
  Vec bx = box.center();
  for (int l = 0; l < levels; ++l) {
    const Vec step = (hi - lo) / (ppa - 1);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x[i] = lo[i] + step[i] * idx[static_cast<std::size_t>(i)];
      const double v = f(x);
      if (v < best) {
        best = v;
        bx = x;
      }
      int i = 0;
      while (i < d && ++idx[static_cast<std::size_t>(i)] == ppa) idx[static_cast<std::size_t>(i++)] = 0;
      if (i == d) break;
    }
    lo = (bx - keep * step).cwiseMax(box.lo);
    hi = (bx + keep * step).cwiseMin(box.hi);
  }
  if (arg) *arg = bx;
  return best;
}

/// Convex QP min 0.5 x'Qx + a'x s.t. A x <= b (Q positive definite, box
/// inactive), solved by enumerating active sets.
struct QpSolution {
  Vec x;
  Vec lambda;
  double value = 0.0;
  /// Lagrangian dual value at lambda, from the closed-form inner minimiser.
  double dual_value = 0.0;
  bool ok = false;
};

inline QpSolution qp_kkt(const Mat& Q, const Vec& a, const Mat& A, const Vec& b) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  QpSolution best;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> act;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) act.push_back(i);
    const int s = static_cast<int>(act.size());
    Mat K = Mat::Zero(n + s, n + s);
    Vec r(n + s);
    K.topLeftCorner(n, n) = Q;
    r.head(n) = -a;
    for (int j = 0; j < s; ++j) {
      K.block(0, n + j, n, 1) = A.row(act[static_cast<std::size_t>(j)]).transpose();
      K.block(n + j, 0, 1, n) = A.row(act[static_cast<std::size_t>(j)]);
      r[n + j] = b[act[static_cast<std::size_t>(j)]];
    }
    Eigen::FullPivLU<Mat> lu(K);
    if (lu.rank() < n + s) continue;
    const Vec sol = lu.solve(r);
    const Vec x = sol.head(n);
    Vec lam = Vec::Zero(m);
    bool ok = true;
    for (int j = 0; j < s; ++j) {
      lam[act[static_cast<std::size_t>(j)]] = sol[n + j];
      if (sol[n + j] < -1e-12) ok = false;
    }
    if ((A * x - b).maxCoeff() > 1e-10) ok = false;
    if (!ok) continue;
    best.x = x;
    best.lambda = lam.cwiseMax(0.0);
    best.value = 0.5 * x.dot(Q * x) + a.dot(x);
    // g(lambda) = min_x 0.5 x'Qx + (a + A'lambda)'x - b'lambda.
    const Vec c = a + A.transpose() * best.lambda;
    const Vec xs = -Q.ldlt().solve(c);
    best.dual_value = 0.5 * xs.dot(Q * xs) + c.dot(xs) - b.dot(best.lambda);
    best.ok = true;
    return best;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Random instances.

struct RandomQp {
  Mat Q;
  Vec a;
  Mat A;
  Vec b;
  icvx::Instance inst;
};

inline Mat random_pd(std::mt19937_64& rng, int n, double lo = 0.5, double hi = 3.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), e(lo, hi);
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = u(rng);
  Eigen::HouseholderQR<Mat> qr(M);
  const Mat U = qr.householderQ();
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev[i] = e(rng);
  Mat Q = U * ev.asDiagonal() * U.transpose();
  return 0.5 * (Q + Q.transpose());
}

/// Feasible QP in the plane with 3 affine constraints (0 strictly feasible)
/// padded by the constant tail -1, on the box [-10, 10]^2.
inline RandomQp random_padded_qp(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), ub(0.2, 1.0);
  const int n = 2;
  Mat Q = random_pd(rng, n);
  Vec a(n);
  for (int i = 0; i < n; ++i) a[i] = 3.0 * u(rng);
  Mat A(3, n);
  Vec b(3);
  std::vector<ConvexFn> prefix;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < n; ++i) A(k, i) = u(rng);
    b[k] = ub(rng);
    prefix.push_back(ConvexFn::affine(A.row(k).transpose(), -b[k]));
  }
  icvx::ConstraintFamily fam(n, std::move(prefix), icvx::tail::Constant{ConvexFn::constant(n, -1.0)});
  icvx::Box box{Vec::Constant(n, -10.0), Vec::Constant(n, 10.0), false};
  icvx::Instance inst("random_qp", box, ConvexFn::quadratic(Q, a, 0.0), std::move(fam));
  return {Q, a, A, b, std::move(inst)};
}

inline Vec random_vec(std::mt19937_64& rng, int n, double s) {
  std::uniform_real_distribution<double> u(-s, s);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

/// Random catalog function with f(x_s) = target.
inline ConvexFn random_fn(std::mt19937_64& rng, int n, const Vec& xs, double target, bool allow_quadratic = true) {
  std::uniform_int_distribution<int> kind(0, allow_quadratic ? 2 : 1);
  switch (kind(rng)) {
    case 0: {
      const Vec g = random_vec(rng, n, 1.0);
      return ConvexFn::affine(g, target - g.dot(xs));
    }
    case 1: {
      std::vector<icvx::fn::Affine> pieces;
      for (int p = 0; p < 3; ++p) {
        const Vec g = random_vec(rng, n, 1.0);
        pieces.push_back({g, -g.dot(xs)});
      }
      ConvexFn m = ConvexFn::max_affine(pieces);
      return ConvexFn::shift(m, target - m.eval(xs).value());
    }
    default: {
      const Mat Q = random_pd(rng, n, 0.1, 1.0);
      const Vec g = random_vec(rng, n, 1.0);
      ConvexFn q = ConvexFn::quadratic(Q, g, 0.0);
      return ConvexFn::shift(q, target - q.eval(xs).value());
    }
  }
}

/// Random instance on [-3, 3]^dim with a Slater point, random prefix and a
/// random tail (constant or rational affine).
inline icvx::Instance random_instance(std::mt19937_64& rng, int dim = 2) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> np(1, 3), tk(0, 2);
  const Vec xs = random_vec(rng, dim, 1.0);
  const Mat Q = random_pd(rng, dim, 0.2, 2.0);
  ConvexFn f0 = u01(rng) < 0.7 ? ConvexFn::quadratic(Q, random_vec(rng, dim, 2.0), 0.0)
                               : random_fn(rng, dim, xs, 0.0, false);
  std::vector<ConvexFn> prefix;
  const int P = np(rng);
  for (int k = 0; k < P; ++k) prefix.push_back(random_fn(rng, dim, xs, -0.2 - 0.8 * u01(rng)));
  icvx::Tail tail;
  switch (tk(rng)) {
    case 0:
      tail = icvx::tail::None{};
      break;
    case 1:
      tail = icvx::tail::Constant{random_fn(rng, dim, xs, -0.5 * u01(rng) - 0.1)};
      break;
    default: {
      // f_k(xs) = <c, xs> + e + (<d, xs> + g)/k with both parts negative.
      const Vec c = random_vec(rng, dim, 1.0), d = random_vec(rng, dim, 1.0);
      const double e = -c.dot(xs) - 0.1 - 0.5 * u01(rng);
      const double g = -d.dot(xs) - u01(rng);
      tail = icvx::tail::RationalAffine{c, d, e, g};
    }
  }
  icvx::ConstraintFamily fam(dim, std::move(prefix), std::move(tail));
  icvx::Box box{Vec::Constant(dim, -3.0), Vec::Constant(dim, 3.0), false};
  return icvx::Instance("random", box, f0, std::move(fam));
}

/// Random nonnegative multiplier of the given space with support N.
inline icvx::Multiplier random_multiplier(std::mt19937_64& rng, icvx::SpaceTag tag, int N, bool with_tail) {
  std::uniform_real_distribution<double> u(0.0, 2.0), z(0.0, 1.0);
  icvx::Multiplier m;
  m.tag = tag;
  for (int i = 0; i < N; ++i) m.support.push_back(z(rng) < 0.3 ? 0.0 : u(rng));
  if (tag == icvx::SpaceTag::L1 && with_tail) m.lambda_inf = u(rng);
  if (tag == icvx::SpaceTag::Linf) m.tail_value = u(rng);
  return m;
}

}  // namespace oracle
