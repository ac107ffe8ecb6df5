#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "occ2vec/correlation.hpp"
#include "occ2vec/error.hpp"

namespace occ2vec::stats {

struct SmoothCurve {
  std::vector<double> grid_x;
  std::vector<double> fitted_y;
  double bandwidth = 0.6;
  int degree = 2;
};

/// 0, 1, ..., 100
inline std::vector<double> percentile_grid() {
  std::vector<double> g(101);
  for (int i = 0; i <= 100; ++i) g[static_cast<std::size_t>(i)] = i;
  return g;
}

namespace detail {

inline double tricube(double u) {
  u = std::abs(u);
  if (u >= 1.0) return 0.0;
  const double t = 1.0 - u * u * u;
  return t * t * t;
}

// Fit at one point using the `k` nearest observations; nullopt when the local
// design is singular.
inline std::optional<double> local_fit(std::span<const double> x, std::span<const double> y, double at, int degree,
                                       std::size_t k, std::vector<std::size_t>& order) {
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto closer = [&](std::size_t a, std::size_t b) {
    const double da = std::abs(x[a] - at), db = std::abs(x[b] - at);
    return da < db || (da == db && a < b);
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end(), closer);
  const double h = std::abs(x[order[k - 1]] - at);
  if (!(h > 0.0)) return std::nullopt;
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), closer);

  const auto p = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(k), p);
  Eigen::VectorXd b(static_cast<Eigen::Index>(k));
  Eigen::Index rows = 0;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = order[r];
    const double u = (x[i] - at) / h;
    const double sw = std::sqrt(tricube(u));
    if (sw == 0.0) continue;
    double pw = 1.0;
    for (Eigen::Index c = 0; c < p; ++c, pw *= u) a(rows, c) = sw * pw;
    b(rows) = sw * y[i];
    ++rows;
  }
  if (rows < p) return std::nullopt;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.topRows(rows));
  qr.setThreshold(1e-10);
  if (qr.rank() < p) return std::nullopt;
  const Eigen::VectorXd coef = qr.solve(b.head(rows));
  return coef(0);
}

}  // namespace detail

/// Locally weighted polynomial regression (tricube kernel, nearest-neighbour
/// bandwidth) evaluated at each grid point.
inline SmoothCurve local_poly_smooth(std::span<const double> x, std::span<const double> y, int degree = 2,
                                     double bandwidth = 0.6, std::vector<double> grid = percentile_grid()) {
  const std::size_t n = x.size();
  if (y.size() != n) throw InputError("local_poly_smooth: x and y differ in length");
  if (degree < 0) throw InputError("local_poly_smooth: negative degree");
  if (n < static_cast<std::size_t>(degree) + 2) throw InputError("local_poly_smooth: too few points for the degree");
  if (!(bandwidth > 0.0 && bandwidth <= 1.0)) throw InputError("local_poly_smooth: bandwidth must lie in (0, 1]");

  SmoothCurve c;
  c.bandwidth = bandwidth;
  c.degree = degree;
  c.grid_x = std::move(grid);
  c.fitted_y.reserve(c.grid_x.size());
  const std::size_t k = std::min(n, std::max<std::size_t>(static_cast<std::size_t>(std::ceil(bandwidth * static_cast<double>(n))),
                                                          static_cast<std::size_t>(degree) + 1));
  std::vector<std::size_t> order(n);
  for (double g : c.grid_x) {
    auto fit = detail::local_fit(x, y, g, degree, k, order);
    if (!fit) fit = detail::local_fit(x, y, g, degree, std::min(n, 2 * k), order);
    if (!fit) throw NumericalError("local_poly_smooth: singular local design at x = " + std::to_string(g));
    c.fitted_y.push_back(*fit);
  }
  return c;
}

/// 100 * (midrank - 1) / (n - 1).
inline std::vector<double> percentile_rank(std::span<const double> values) {
  if (values.size() < 2) throw InputError("percentile_rank: need at least two values");
  auto r = midranks(values);
  const double denom = static_cast<double>(values.size() - 1);
  for (auto& v : r) v = 100.0 * (v - 1.0) / denom;
  return r;
}

}  // namespace occ2vec::stats
