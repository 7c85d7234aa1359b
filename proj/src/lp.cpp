#include "icvx/lp.hpp"

#include <cmath>
#include <vector>

namespace icvx {

LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b, int max_pivots) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (c.size() != n || b.size() != m) throw Error("lp_maximize: shape mismatch");
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(b[i] >= 0.0)) throw Error("lp_maximize: right-hand side must be nonnegative");

  // Rows 0..m-1: basic variables; row m: objective. Column n: right-hand side.
  Mat T(m + 1, n + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, 1) = b;
  T.block(m, 0, 1, n) = -c.transpose();
  T(m, n) = 0.0;
  // Labels: 0..n-1 structural, n..n+m-1 slacks.
  std::vector<Eigen::Index> basic(static_cast<std::size_t>(m)), nonbasic(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < m; ++i) basic[static_cast<std::size_t>(i)] = n + i;
  for (Eigen::Index j = 0; j < n; ++j) nonbasic[static_cast<std::size_t>(j)] = j;

  const double scale = 1.0 + A.lpNorm<Eigen::Infinity>() + c.lpNorm<Eigen::Infinity>();
  const double eps = 1e-12 * scale;
  LpResult res;
  int stall = 0;
  double last_obj = 0.0;

  while (true) {
    const bool bland = stall > 50;
    Eigen::Index s = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (T(m, j) >= -eps) continue;
      if (s < 0) {
        s = j;
      } else if (bland) {
        if (nonbasic[static_cast<std::size_t>(j)] < nonbasic[static_cast<std::size_t>(s)]) s = j;
      } else if (T(m, j) < T(m, s)) {
        s = j;
      }
    }
    if (s < 0) break;

    Eigen::Index r = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, s) <= eps) continue;
      const double ratio = T(i, n) / T(i, s);
      if (r < 0 || ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && basic[static_cast<std::size_t>(i)] < basic[static_cast<std::size_t>(r)])) {
        r = i;
        best = ratio;
      }
    }
    if (r < 0) {
      res.status = LpResult::Unbounded;
      break;
    }
    if (res.pivots >= max_pivots) {
      res.status = LpResult::IterationLimit;
      break;
    }

    const double p = T(r, s);
    const Vec col = T.col(s);
    const Eigen::RowVectorXd row = T.row(r) / p;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == r) continue;
      if (col[i] != 0.0) T.row(i) -= col[i] * row;
    }
    T.row(r) = row;
    for (Eigen::Index i = 0; i <= m; ++i) T(i, s) = i == r ? 1.0 / p : -col[i] / p;
    for (Eigen::Index i = 0; i < m; ++i)
      if (T(i, n) < 0.0 && T(i, n) > -1e-11 * scale) T(i, n) = 0.0;
    std::swap(basic[static_cast<std::size_t>(r)], nonbasic[static_cast<std::size_t>(s)]);
    ++res.pivots;

    if (T(m, n) > last_obj + 1e-14 * (1.0 + std::abs(last_obj))) {
      stall = 0;
      last_obj = T(m, n);
    } else {
      ++stall;
    }
  }

  res.x = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index lbl = basic[static_cast<std::size_t>(i)];
    if (lbl < n) res.x[lbl] = std::max(0.0, T(i, n));
  }
  res.value = c.dot(res.x);
  return res;
}

}  // namespace icvx
