#include "icvx/convex_fn.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace icvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dim(const Vec& x, int dim) {
  if (x.size() != dim)
    throw Error("dimension mismatch: expected " + std::to_string(dim) + ", got " +
                std::to_string(x.size()));
}

void push_unique(std::vector<Vec>& out, const Vec& v) {
  for (const auto& w : out)
    if ((w - v).lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + v.lpNorm<Eigen::Infinity>())) return;
  out.push_back(v);
}

double affine_value(const fn::Affine& p, const Vec& x) { return p.a.dot(x) + p.b; }

}  // namespace

bool Box::contains(const Vec& x, double tol) const {
  if (x.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  return true;
}

Box Box::scaled(double factor) const {
  const Vec c = center();
  return Box{c + factor * (lo - c), c + factor * (hi - c), artificial};
}

int Subdifferential::dim() const {
  if (!vertices.empty()) return static_cast<int>(vertices.front().size());
  if (!rays.empty()) return static_cast<int>(rays.front().size());
  return 0;
}

double ActiveTolerance::at(double v) const { return abs * (1.0 + std::abs(v)); }

ConvexFn::ConvexFn(Node node, int dim)
    : node_(std::make_shared<const Node>(std::move(node))), dim_(dim) {}

ConvexFn ConvexFn::affine(Vec a, double b) {
  const int d = static_cast<int>(a.size());
  return ConvexFn(fn::Affine{std::move(a), b}, d);
}

ConvexFn ConvexFn::constant(int dim, double c) { return affine(Vec::Zero(dim), c); }

ConvexFn ConvexFn::quadratic(Mat Q, Vec a, double b) {
  const auto d = a.size();
  if (Q.rows() != d || Q.cols() != d) throw Error("quadratic: Q must be n x n with n = |a|");
  if ((Q - Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + Q.lpNorm<Eigen::Infinity>()))
    throw Error("quadratic: Q must be symmetric");
  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * (1.0 + Q.lpNorm<Eigen::Infinity>()))
      throw Error("quadratic: Q is not positive semidefinite");
  }
  return ConvexFn(fn::ConvexQuadratic{std::move(Q), std::move(a), b}, static_cast<int>(d));
}

ConvexFn ConvexFn::max_affine(std::vector<fn::Affine> pieces) {
  if (pieces.empty()) throw Error("max_affine: needs at least one piece");
  const auto d = pieces.front().a.size();
  for (const auto& p : pieces)
    if (p.a.size() != d) throw Error("max_affine: pieces differ in dimension");
  return ConvexFn(fn::MaxAffine{std::move(pieces)}, static_cast<int>(d));
}

ConvexFn ConvexFn::box_indicator(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw Error("box_indicator: lo/hi size mismatch");
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw Error("box_indicator: empty box");
  const auto d = lo.size();
  return ConvexFn(fn::BoxIndicator{std::move(lo), std::move(hi)}, static_cast<int>(d));
}

ConvexFn ConvexFn::scale(double c, ConvexFn child) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error("scale: factor must be finite and >= 0");
  const int d = child.dim();
  return ConvexFn(fn::Scale{c, std::make_shared<const ConvexFn>(std::move(child))}, d);
}

ConvexFn ConvexFn::sum(std::vector<ConvexFn> children) {
  if (children.empty()) throw Error("sum: needs at least one child");
  const int d = children.front().dim();
  for (const auto& c : children)
    if (c.dim() != d) throw Error("sum: children differ in dimension");
  return ConvexFn(fn::Sum{std::move(children)}, d);
}

ConvexFn ConvexFn::positive_part(ConvexFn child) {
  const int d = child.dim();
  return ConvexFn(fn::PositivePart{std::make_shared<const ConvexFn>(std::move(child))}, d);
}

ConvexFn ConvexFn::shift(ConvexFn child, double constant) {
  if (!std::isfinite(constant)) throw Error("shift: constant must be finite");
  const int d = child.dim();
  return ConvexFn(fn::Shift{std::make_shared<const ConvexFn>(std::move(child)), constant}, d);
}

ExtReal ConvexFn::eval(const Vec& x) const {
  check_dim(x, dim_);
  return std::visit(
      overloaded{
          [&](const fn::Affine& f) -> ExtReal { return affine_value(f, x); },
          [&](const fn::ConvexQuadratic& f) -> ExtReal {
            return 0.5 * x.dot(f.Q * x) + f.a.dot(x) + f.b;
          },
          [&](const fn::MaxAffine& f) -> ExtReal {
            double m = affine_value(f.pieces.front(), x);
            for (const auto& p : f.pieces) m = std::max(m, affine_value(p, x));
            return m;
          },
          [&](const fn::BoxIndicator& f) -> ExtReal {
            for (Eigen::Index i = 0; i < x.size(); ++i)
              if (x[i] < f.lo[i] || x[i] > f.hi[i]) return ExtReal::infinity();
            return 0.0;
          },
          [&](const fn::Scale& f) -> ExtReal { return f.c * f.child->eval(x); },
          [&](const fn::Sum& f) -> ExtReal {
            ExtReal s = 0.0;
            for (const auto& c : f.children) s += c.eval(x);
            return s;
          },
          [&](const fn::PositivePart& f) -> ExtReal { return max(f.child->eval(x), 0.0); },
          [&](const fn::Shift& f) -> ExtReal { return f.child->eval(x) + f.constant; },
      },
      *node_);
}

std::optional<Vec> ConvexFn::subgradient(const Vec& x) const {
  check_dim(x, dim_);
  using R = std::optional<Vec>;
  return std::visit(
      overloaded{
          [&](const fn::Affine& f) -> R { return f.a; },
          [&](const fn::ConvexQuadratic& f) -> R { return Vec(f.Q * x + f.a); },
          [&](const fn::MaxAffine& f) -> R {
            std::size_t best = 0;
            double m = affine_value(f.pieces[0], x);
            for (std::size_t i = 1; i < f.pieces.size(); ++i) {
              const double v = affine_value(f.pieces[i], x);
              if (v > m) {
                m = v;
                best = i;
              }
            }
            return f.pieces[best].a;
          },
          [&](const fn::BoxIndicator& f) -> R {
            for (Eigen::Index i = 0; i < x.size(); ++i)
              if (x[i] < f.lo[i] || x[i] > f.hi[i]) return std::nullopt;
            return Vec(Vec::Zero(x.size()));
          },
          [&](const fn::Scale& f) -> R {
            auto g = f.child->subgradient(x);
            if (!g) return std::nullopt;
            return Vec(f.c * *g);
          },
          [&](const fn::Sum& f) -> R {
            Vec s = Vec::Zero(x.size());
            for (const auto& c : f.children) {
              auto g = c.subgradient(x);
              if (!g) return std::nullopt;
              s += *g;
            }
            return s;
          },
          [&](const fn::PositivePart& f) -> R {
            const ExtReal v = f.child->eval(x);
            if (v.is_infinite()) return std::nullopt;
            if (v.value() > 0.0) return f.child->subgradient(x);
            return Vec(Vec::Zero(x.size()));
          },
          [&](const fn::Shift& f) -> R { return f.child->subgradient(x); },
      },
      *node_);
}

Subdifferential ConvexFn::subdiff(const Vec& x, ActiveTolerance tol) const {
  check_dim(x, dim_);
  const auto n = x.size();
  return std::visit(
      overloaded{
          [&](const fn::Affine& f) { return Subdifferential{{f.a}, {}}; },
          [&](const fn::ConvexQuadratic& f) { return Subdifferential{{Vec(f.Q * x + f.a)}, {}}; },
          [&](const fn::MaxAffine& f) {
            double m = affine_value(f.pieces.front(), x);
            for (const auto& p : f.pieces) m = std::max(m, affine_value(p, x));
            Subdifferential s;
            for (const auto& p : f.pieces)
              if (affine_value(p, x) >= m - tol.at(m)) push_unique(s.vertices, p.a);
            return s;
          },
          [&](const fn::BoxIndicator& f) {
            Subdifferential s;
            s.vertices.push_back(Vec::Zero(n));
            for (Eigen::Index i = 0; i < n; ++i) {
              if (x[i] < f.lo[i] || x[i] > f.hi[i]) throw Error("subdiff: point outside domain");
              if (x[i] >= f.hi[i] - tol.at(f.hi[i])) s.rays.push_back(Vec::Unit(n, i));
              if (x[i] <= f.lo[i] + tol.at(f.lo[i])) s.rays.push_back(-Vec::Unit(n, i));
            }
            return s;
          },
          [&](const fn::Scale& f) {
            Subdifferential c = f.child->subdiff(x, tol);
            if (f.c == 0.0) {
              c.vertices.assign(1, Vec::Zero(n));
            } else {
              for (auto& v : c.vertices) v *= f.c;
            }
            return c;
          },
          [&](const fn::Sum& f) {
            Subdifferential acc{{Vec::Zero(n)}, {}};
            for (const auto& child : f.children) {
              Subdifferential c = child.subdiff(x, tol);
              std::vector<Vec> next;
              for (const auto& a : acc.vertices)
                for (const auto& b : c.vertices) push_unique(next, a + b);
              acc.vertices = std::move(next);
              for (auto& r : c.rays) push_unique(acc.rays, r);
            }
            return acc;
          },
          [&](const fn::PositivePart& f) {
            const ExtReal v = f.child->eval(x);
            if (v.is_infinite()) throw Error("subdiff: point outside domain");
            Subdifferential c = f.child->subdiff(x, tol);
            const double cv = v.value();
            if (cv > tol.at(0.0)) return c;
            Subdifferential s;
            s.vertices.push_back(Vec::Zero(n));
            s.rays = std::move(c.rays);
            if (cv >= -tol.at(0.0))
              for (const auto& g : c.vertices) push_unique(s.vertices, g);
            return s;
          },
          [&](const fn::Shift& f) { return f.child->subdiff(x, tol); },
      },
      *node_);
}

std::optional<Halfspace> ConvexFn::domain_cut(const Vec& x) const {
  check_dim(x, dim_);
  using R = std::optional<Halfspace>;
  return std::visit(overloaded{
                        [&](const fn::BoxIndicator& f) -> R {
                          Eigen::Index worst = -1;
                          double viol = 0.0;
                          bool upper = false;
                          for (Eigen::Index i = 0; i < x.size(); ++i) {
                            if (x[i] - f.hi[i] > viol) {
                              viol = x[i] - f.hi[i];
                              worst = i;
                              upper = true;
                            }
                            if (f.lo[i] - x[i] > viol) {
                              viol = f.lo[i] - x[i];
                              worst = i;
                              upper = false;
                            }
                          }
                          if (worst < 0) return std::nullopt;
                          Vec nrm = Vec::Unit(x.size(), worst);
                          if (upper) return Halfspace{nrm, f.hi[worst]};
                          return Halfspace{-nrm, -f.lo[worst]};
                        },
                        [&](const fn::Scale& f) -> R { return f.child->domain_cut(x); },
                        [&](const fn::Sum& f) -> R {
                          for (const auto& c : f.children)
                            if (auto h = c.domain_cut(x)) return h;
                          return std::nullopt;
                        },
                        [&](const fn::PositivePart& f) -> R { return f.child->domain_cut(x); },
                        [&](const fn::Shift& f) -> R { return f.child->domain_cut(x); },
                        [&](const auto&) -> R { return std::nullopt; },
                    },
                    *node_);
}

bool ConvexFn::full_domain() const {
  return std::visit(overloaded{
                        [](const fn::BoxIndicator&) { return false; },
                        [](const fn::Scale& f) { return f.child->full_domain(); },
                        [](const fn::Sum& f) {
                          return std::all_of(f.children.begin(), f.children.end(),
                                             [](const ConvexFn& c) { return c.full_domain(); });
                        },
                        [](const fn::PositivePart& f) { return f.child->full_domain(); },
                        [](const fn::Shift& f) { return f.child->full_domain(); },
                        [](const auto&) { return true; },
                    },
                    *node_);
}

// ---------------------------------------------------------------------------
// Minimum-norm point of a Minkowski sum.

namespace {

// A point of the (ray-bounded) Minkowski sum produced by the linear
// minimization oracle: one vertex index per set and the rays put at the bound.
struct Atom {
  Vec p;
  std::vector<int> vertex;
  std::vector<std::vector<bool>> ray_on;
};

class MinkowskiOracle {
 public:
  MinkowskiOracle(std::span<const Subdifferential> sets, std::span<const double> scales,
                  double ray_bound)
      : sets_(sets), scales_(scales), ray_bound_(ray_bound) {}

  [[nodiscard]] Atom minimize(const Vec& d) const {
    const auto n = d.size();
    Atom a{Vec::Zero(n), std::vector<int>(sets_.size(), 0), {}};
    a.ray_on.resize(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      const auto& s = sets_[i];
      int best = 0;
      double bv = d.dot(s.vertices[0]);
      for (std::size_t j = 1; j < s.vertices.size(); ++j) {
        const double v = d.dot(s.vertices[j]);
        if (v < bv) {
          bv = v;
          best = static_cast<int>(j);
        }
      }
      a.vertex[i] = best;
      a.p += scales_[i] * s.vertices[static_cast<std::size_t>(best)];
      a.ray_on[i].assign(s.rays.size(), false);
      for (std::size_t r = 0; r < s.rays.size(); ++r) {
        if (d.dot(s.rays[r]) < 0.0) {
          a.ray_on[i][r] = true;
          a.p += ray_bound_ * s.rays[r];
        }
      }
    }
    return a;
  }

 private:
  std::span<const Subdifferential> sets_;
  std::span<const double> scales_;
  double ray_bound_;
};

// Affine-hull minimum-norm point: minimize |P w|^2 subject to sum(w) = 1.
Vec affine_minimizer(const std::vector<Atom>& atoms) {
  const auto k = static_cast<Eigen::Index>(atoms.size());
  const auto n = atoms.front().p.size();
  Mat P(n, k);
  for (Eigen::Index j = 0; j < k; ++j) P.col(j) = atoms[static_cast<std::size_t>(j)].p;
  Mat K = Mat::Zero(k + 1, k + 1);
  K.topLeftCorner(k, k) = P.transpose() * P;
  K.block(0, k, k, 1).setOnes();
  K.block(k, 0, 1, k).setOnes();
  Vec rhs = Vec::Zero(k + 1);
  rhs[k] = 1.0;
  Vec sol = K.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(k);
}

}  // namespace

MinNormResult min_norm_point(std::span<const Subdifferential> sets, std::span<const double> scales,
                             const MinNormOptions& opts) {
  if (sets.empty()) throw Error("min_norm_point: empty list of sets");
  if (sets.size() != scales.size()) throw Error("min_norm_point: sets/scales length mismatch");
  const int n = sets.front().dim();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].vertices.empty()) throw Error("min_norm_point: set without vertices");
    if (sets[i].dim() != n) throw Error("min_norm_point: sets differ in dimension");
    if (!(scales[i] >= 0.0)) throw Error("min_norm_point: scales must be nonnegative");
  }

  MinkowskiOracle lmo(sets, scales, opts.ray_bound);
  std::vector<Atom> corral{lmo.minimize(Vec::Zero(n))};
  std::vector<double> w{1.0};
  Vec x = corral[0].p;
  int it = 0;

  for (; it < opts.max_iter; ++it) {
    Atom q = lmo.minimize(x);
    const double xx = x.squaredNorm();
    const double scale2 = std::max({1.0, q.p.squaredNorm(), xx});
    if (xx - x.dot(q.p) <= opts.tol * scale2) break;
    bool dup = false;
    for (const auto& a : corral)
      if ((a.p - q.p).squaredNorm() <= 1e-30 * scale2) dup = true;
    if (dup) break;
    corral.push_back(std::move(q));
    w.push_back(0.0);

    // Minor cycle: move towards the affine minimizer while staying in the hull.
    for (int minor = 0; minor < 64; ++minor) {
      Vec alpha = affine_minimizer(corral);
      if (!alpha.allFinite() || std::abs(alpha.sum() - 1.0) > 1e-8) {
        // Degenerate corral: drop the new atom and stop.
        corral.pop_back();
        w.pop_back();
        break;
      }
      if ((alpha.array() > 1e-14).all()) {
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = alpha[static_cast<Eigen::Index>(j)];
        break;
      }
      double theta = 1.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const double aj = alpha[static_cast<Eigen::Index>(j)];
        if (aj <= 1e-14 && w[j] - aj > 0.0) theta = std::min(theta, w[j] / (w[j] - aj));
      }
      for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = theta * alpha[static_cast<Eigen::Index>(j)] + (1.0 - theta) * w[j];
      std::vector<Atom> keep_atoms;
      std::vector<double> keep_w;
      const auto top = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j == top && w[j] <= 1e-14) {
          keep_atoms.push_back(std::move(corral[j]));
          keep_w.push_back(1.0);
          continue;
        }
        if (w[j] > 1e-14) {
          keep_atoms.push_back(std::move(corral[j]));
          keep_w.push_back(w[j]);
        }
      }
      corral = std::move(keep_atoms);
      w = std::move(keep_w);
      double tot = 0.0;
      for (double v : w) tot += v;
      for (double& v : w) v /= tot;
      if (corral.size() == 1) break;
    }
    x.setZero();
    for (std::size_t j = 0; j < corral.size(); ++j) x += w[j] * corral[j].p;
  }

  MinNormResult res;
  res.point = x;
  res.norm = x.norm();
  res.iterations = it;
  res.vertex_weights.resize(sets.size());
  res.ray_coeffs.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    res.vertex_weights[i].assign(sets[i].vertices.size(), 0.0);
    res.ray_coeffs[i].assign(sets[i].rays.size(), 0.0);
  }
  for (std::size_t j = 0; j < corral.size(); ++j) {
    const auto& a = corral[j];
    for (std::size_t i = 0; i < sets.size(); ++i) {
      res.vertex_weights[i][static_cast<std::size_t>(a.vertex[i])] += w[j];
      for (std::size_t r = 0; r < a.ray_on[i].size(); ++r)
        if (a.ray_on[i][r]) res.ray_coeffs[i][r] += w[j] * opts.ray_bound;
    }
  }
  for (const auto& rc : res.ray_coeffs)
    for (double c : rc)
      if (c >= opts.ray_bound * (1.0 - 1e-9)) res.ray_bound_active = true;
  return res;
}

Vec recompose(std::span<const Subdifferential> sets, std::span<const double> scales,
              const MinNormResult& r) {
  Vec out = Vec::Zero(sets.front().dim());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets[i].vertices.size(); ++j)
      out += scales[i] * r.vertex_weights[i][j] * sets[i].vertices[j];
    for (std::size_t k = 0; k < sets[i].rays.size(); ++k) out += r.ray_coeffs[i][k] * sets[i].rays[k];
  }
  return out;
}

}  // namespace icvx
