#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "icvx/extreal.hpp"

namespace icvx {

/// Halfspace {y : <normal, y> <= offset}.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// Axis-aligned box. `artificial` marks a large stand-in for X = R^n.
struct Box {
  Vec lo;
  Vec hi;
  bool artificial = false;

  [[nodiscard]] int dim() const { return static_cast<int>(lo.size()); }
  [[nodiscard]] bool contains(const Vec& x, double tol = 0.0) const;
  [[nodiscard]] Vec center() const { return 0.5 * (lo + hi); }
  [[nodiscard]] Box scaled(double factor) const;
};

/**
 * Subdifferential of a catalog function at a point, represented exactly as
 * conv(vertices) + cone(rays). Rays come only from box-indicator normal cones.
 */
struct Subdifferential {
  std::vector<Vec> vertices;
  std::vector<Vec> rays;

  [[nodiscard]] int dim() const;
};

/// Tolerance used to decide which pieces/bounds are active at a point.
struct ActiveTolerance {
  double abs = 1e-12;
  /// Threshold used for a value v: abs * (1 + |v|).
  [[nodiscard]] double at(double v) const;
};

class ConvexFn;

namespace fn {
struct Affine {
  Vec a;
  double b = 0.0;
};
/// 0.5 x'Qx + a'x + b with Q symmetric positive semidefinite.
struct ConvexQuadratic {
  Mat Q;
  Vec a;
  double b = 0.0;
};
struct MaxAffine {
  std::vector<Affine> pieces;
};
struct BoxIndicator {
  Vec lo;
  Vec hi;
};
struct Scale {
  double c = 1.0;
  std::shared_ptr<const ConvexFn> child;
};
struct Sum {
  std::vector<ConvexFn> children;
};
struct PositivePart {
  std::shared_ptr<const ConvexFn> child;
};
struct Shift {
  std::shared_ptr<const ConvexFn> child;
  double constant = 0.0;
};
}  // namespace fn

/**
 * Immutable expression tree over a closed catalog of proper convex functions
 * on R^n. Copies share structure.
 */
class ConvexFn {
 public:
  using Node = std::variant<fn::Affine, fn::ConvexQuadratic, fn::MaxAffine, fn::BoxIndicator,
                            fn::Scale, fn::Sum, fn::PositivePart, fn::Shift>;

  static ConvexFn affine(Vec a, double b);
  static ConvexFn constant(int dim, double c);
  /// Throws Error if Q is not symmetric PSD (within 1e-10).
  static ConvexFn quadratic(Mat Q, Vec a, double b);
  static ConvexFn max_affine(std::vector<fn::Affine> pieces);
  static ConvexFn box_indicator(Vec lo, Vec hi);
  static ConvexFn scale(double c, ConvexFn child);
  static ConvexFn sum(std::vector<ConvexFn> children);
  static ConvexFn positive_part(ConvexFn child);
  static ConvexFn shift(ConvexFn child, double constant);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const Node& node() const { return *node_; }

  /// Exact extended-real value; throws Error on dimension mismatch.
  [[nodiscard]] ExtReal eval(const Vec& x) const;

  /// One subgradient at x (nullopt when f(x) = +inf). Cheaper than subdiff().
  [[nodiscard]] std::optional<Vec> subgradient(const Vec& x) const;

  /// Full subdifferential; throws Error when f(x) = +inf.
  [[nodiscard]] Subdifferential subdiff(const Vec& x, ActiveTolerance tol = {}) const;

  /// A halfspace containing dom f but not x, when x is outside dom f.
  [[nodiscard]] std::optional<Halfspace> domain_cut(const Vec& x) const;

  /// True when the tree contains no box indicator (dom f = R^n).
  [[nodiscard]] bool full_domain() const;

 private:
  ConvexFn(Node node, int dim);

  std::shared_ptr<const Node> node_;
  int dim_ = 0;
};

struct MinNormOptions {
  /// Bound on ray coefficients; solutions touching it are flagged.
  double ray_bound = 1e6;
  double tol = 1e-15;
  int max_iter = 10000;
};

struct MinNormResult {
  Vec point;
  double norm = 0.0;
  /// weights[i][j]: convex weight of vertex j of set i.
  std::vector<std::vector<double>> vertex_weights;
  /// ray_coeffs[i][r]: nonnegative coefficient of ray r of set i.
  std::vector<std::vector<double>> ray_coeffs;
  bool ray_bound_active = false;
  int iterations = 0;
};

/**
 * Minimum-norm element of sum_i scales[i] * sets[i] (a scale of 0 keeps the
 * rays of its set: 0 * subdifferential is the normal cone).
 *
 * Wolfe's algorithm driven by the linear minimization oracle of the Minkowski
 * sum, so the number of sets can be large. Ray coefficients are bounded by
 * MinNormOptions::ray_bound.
 */
MinNormResult min_norm_point(std::span<const Subdifferential> sets, std::span<const double> scales,
                             const MinNormOptions& opts = {});

/// Recompose sum_i scales[i] * (conv combination + ray combination) from a result.
Vec recompose(std::span<const Subdifferential> sets, std::span<const double> scales,
              const MinNormResult& r);

}  // namespace icvx
