#include "icvx/uniform.hpp"

#include <algorithm>
#include <cmath>

#include "icvx/infsum.hpp"

namespace icvx {

namespace {

class Grid {
 public:
  Grid(const Box& U, int p) : U_(U), p_(p), dim_(U.dim()) {
    if (dim_ < 1 || dim_ > 2) throw Error("uniform diagnostics: dimension must be 1 or 2");
    if (p_ < 2) throw Error("uniform diagnostics: empty grid");
    spacing_ = (U.hi - U.lo) / static_cast<double>(p_ - 1);
    const int n = size();
    pts_.reserve(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) {
      Vec x(dim_);
      for (int a = 0; a < dim_; ++a) x[a] = U.lo[a] + spacing_[a] * coord(id, a);
      pts_.push_back(x);
    }
  }

  [[nodiscard]] int size() const { return dim_ == 1 ? p_ : p_ * p_; }
  [[nodiscard]] int coord(int id, int axis) const { return axis == 0 ? id % p_ : id / p_; }
  [[nodiscard]] int id(int i, int j) const { return dim_ == 1 ? i : i + p_ * j; }
  [[nodiscard]] const Vec& point(int id) const { return pts_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double spacing() const { return spacing_.maxCoeff(); }

  // Window width in grid steps along an axis for sup-norm diameter h.
  [[nodiscard]] int steps(double h, int axis) const {
    if (spacing_[axis] <= 0.0) return 0;
    const int w = static_cast<int>(std::floor(h / spacing_[axis] + 1e-9));
    return std::clamp(w, 0, p_ - 1);
  }

  // Grid ids in the window anchored at (i, j).
  [[nodiscard]] std::vector<int> window(int i, int j, int wi, int wj) const {
    std::vector<int> out;
    for (int b = 0; b <= (dim_ == 1 ? 0 : wj); ++b)
      for (int a = 0; a <= wi; ++a) out.push_back(id(i + a, j + b));
    return out;
  }

  template <class F>
  void for_each_window(double h, F&& f) const {
    const int wi = steps(h, 0);
    const int wj = dim_ == 2 ? steps(h, 1) : 0;
    const int nj = dim_ == 2 ? p_ - wj : 1;
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i + wi < p_; ++i) f(window(i, j, wi, wj));
  }

 private:
  Box U_;
  int p_;
  int dim_;
  Vec spacing_;
  std::vector<Vec> pts_;
};

struct Tabulated {
  std::vector<std::vector<ExtReal>> vals;  // vals[t][grid id]
};

Tabulated tabulate(std::span<const ConvexFn> fns, const Grid& g) {
  Tabulated t;
  t.vals.resize(fns.size());
  for (std::size_t k = 0; k < fns.size(); ++k) {
    if (fns[k].dim() != g.dim()) throw Error("uniform diagnostics: function dimension mismatch");
    t.vals[k].resize(static_cast<std::size_t>(g.size()));
    for (int id = 0; id < g.size(); ++id) t.vals[k][static_cast<std::size_t>(id)] = fns[k].eval(g.point(id));
  }
  return t;
}

ExtReal sum_at(const Tabulated& t, std::size_t count, int id) {
  ExtReal s = 0.0;
  for (std::size_t k = 0; k < count; ++k) s += t.vals[k][static_cast<std::size_t>(id)];
  return s;
}

ExtReal grid_min_of_sum(const Tabulated& t, std::size_t count, const Grid& g) {
  ExtReal best = ExtReal::infinity();
  for (int id = 0; id < g.size(); ++id) best = min(best, sum_at(t, count, id));
  return best;
}

void check_h(std::span<const double> h_grid) {
  if (h_grid.empty()) throw Error("uniform diagnostics: empty h grid");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw Error("uniform diagnostics: h must be positive");
    if (i > 0 && !(h_grid[i] < h_grid[i - 1])) throw Error("uniform diagnostics: h grid must decrease");
  }
}

// Linear extrapolation to h = 0 from the last two points of the trace.
ExtReal extrapolate(const std::vector<UniformTracePoint>& trace) {
  if (trace.empty()) return ExtReal::infinity();
  const auto& b = trace.back();
  if (b.value.is_infinite()) return ExtReal::infinity();
  if (trace.size() == 1 || trace[trace.size() - 2].value.is_infinite()) return b.value;
  const auto& a = trace[trace.size() - 2];
  const double slope = (a.value.value() - b.value.value()) / (a.h - b.h);
  const double v = b.value.value() - slope * b.h;
  if (v > kDivergenceCap) return ExtReal::infinity();
  return v;
}

std::size_t used_count(std::span<const ConvexFn> fns, int s_max) {
  if (fns.empty()) throw Error("uniform diagnostics: empty function list");
  if (s_max < 1) throw Error("uniform diagnostics: S_max must be >= 1");
  return std::min(fns.size(), static_cast<std::size_t>(s_max));
}

}  // namespace

UniformEstimate lambda_uniform_infimum(std::span<const ConvexFn> fns, const Box& U, int s_max,
                                       std::span<const double> h_grid, UniformGrid grid) {
  check_h(h_grid);
  const std::size_t S = used_count(fns, s_max);
  const Grid g(U, grid.points_per_axis);
  const Tabulated t = tabulate(fns.first(S), g);

  UniformEstimate out;
  out.spacing = g.spacing();
  out.grid_inf_sum = grid_min_of_sum(t, S, g);
  for (double h : h_grid) {
    ExtReal best = ExtReal::infinity();
    g.for_each_window(h, [&](const std::vector<int>& w) {
      ExtReal s = 0.0;
      for (std::size_t k = 0; k < S; ++k) {
        ExtReal m = ExtReal::infinity();
        for (int id : w) m = min(m, t.vals[k][static_cast<std::size_t>(id)]);
        s += m;
      }
      best = min(best, s);
    });
    out.trace.push_back({h, best});
  }
  out.estimate = extrapolate(out.trace);
  if (out.estimate > out.grid_inf_sum) {
    out.estimate = out.grid_inf_sum;
    out.clamped = true;
  }
  return out;
}

UniformEstimate theta_firm_estimate(std::span<const ConvexFn> fns, const Box& U, int s_max,
                                    std::span<const double> h_grid, UniformGrid grid) {
  check_h(h_grid);
  const std::size_t S = used_count(fns, s_max);
  const Grid g(U, grid.points_per_axis);
  const Tabulated t = tabulate(fns, g);

  std::vector<ExtReal> total(static_cast<std::size_t>(g.size()));
  for (int id = 0; id < g.size(); ++id) total[static_cast<std::size_t>(id)] = sum_at(t, fns.size(), id);

  UniformEstimate out;
  out.spacing = g.spacing();
  out.grid_inf_sum = grid_min_of_sum(t, fns.size(), g);

  for (double h : h_grid) {
    const int wi = g.steps(h, 0);
    const int wj = g.dim() == 2 ? g.steps(h, 1) : 0;
    const double tuples = std::pow(static_cast<double>((wi + 1) * (wj + 1)), static_cast<double>(S));
    if (tuples * g.size() * g.size() > 2e8) throw Error("theta_firm_estimate: grid too large for brute force");

    bool any = false;
    ExtReal worst = 0.0;
    g.for_each_window(h, [&](const std::vector<int>& w) {
      // Admissible points of each function inside the window.
      std::vector<std::vector<int>> dom(S);
      for (std::size_t k = 0; k < S; ++k)
        for (int id : w)
          if (t.vals[k][static_cast<std::size_t>(id)].is_finite()) dom[k].push_back(id);
      for (const auto& d : dom)
        if (d.empty()) return;
      std::vector<std::size_t> pick(S, 0);
      while (true) {
        double partial = 0.0;
        for (std::size_t k = 0; k < S; ++k)
          partial += t.vals[k][static_cast<std::size_t>(dom[k][pick[k]])].value();
        ExtReal inner = ExtReal::infinity();
        for (int id = 0; id < g.size(); ++id) {
          const ExtReal F = total[static_cast<std::size_t>(id)];
          if (F.is_infinite()) continue;
          double dist = 0.0;
          for (std::size_t k = 0; k < S; ++k)
            dist = std::max(dist, (g.point(id) - g.point(dom[k][pick[k]])).lpNorm<Eigen::Infinity>());
          inner = min(inner, std::max(dist, F.value() - partial));
        }
        any = true;
        worst = max(worst, inner);
        std::size_t k = 0;
        while (k < S && ++pick[k] == dom[k].size()) pick[k++] = 0;
        if (k == S) break;
      }
    });
    if (any) out.trace.push_back({h, worst});
  }
  out.estimate = extrapolate(out.trace);
  if (out.estimate.is_finite() && out.estimate.value() < 0.0) {
    out.estimate = 0.0;
    out.clamped = true;
  }
  return out;
}

}  // namespace icvx
