#pragma once

// Regression of y on one measure plus a constant and any number of sets of
// fixed-effect dummies. Dummies are absorbed by alternating projections
// (iterated within-group demeaning); by Frisch-Waugh-Lovell the slope and the
// residuals equal those of the explicit-dummy regression.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/moments.hpp"

namespace occ2vec::stats {

struct FixedEffect {
  std::string name;
  std::vector<std::size_t> codes;  // group label of each observation
};

struct OlsResult {
  double coefficient_on_measure = 0.0;
  double robust_se = 0.0;  // HC1
  double t_stat = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;  // constant + measure + identified dummies
  std::vector<std::string> effects;
  int sweeps = 0;
};

namespace detail {

struct DenseGroups {
  std::vector<std::size_t> id;
  std::size_t count = 0;
};

inline DenseGroups densify(std::span<const std::size_t> codes) {
  DenseGroups g;
  std::unordered_map<std::size_t, std::size_t> map;
  g.id.reserve(codes.size());
  for (auto c : codes) {
    auto [it, fresh] = map.try_emplace(c, map.size());
    g.id.push_back(it->second);
  }
  g.count = map.size();
  return g;
}

// True when every group of `fine` lies inside a single group of `coarse`.
inline bool nested_in(const DenseGroups& fine, const DenseGroups& coarse) {
  std::vector<std::size_t> owner(fine.count, SIZE_MAX);
  for (std::size_t i = 0; i < fine.id.size(); ++i) {
    auto& o = owner[fine.id[i]];
    if (o == SIZE_MAX) o = coarse.id[i];
    else if (o != coarse.id[i]) return false;
  }
  return true;
}

inline std::size_t components(const DenseGroups& a, const DenseGroups& b) {
  std::vector<std::size_t> parent(a.count + b.count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < a.id.size(); ++i) parent[find(a.id[i])] = find(a.count + b.id[i]);
  std::size_t c = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) c += find(i) == i ? 1 : 0;
  return c;
}

// Rank of [1, D_1, ..., D_m] for the given dummy sets.
inline std::size_t dummy_rank(std::vector<DenseGroups> sets) {
  if (sets.empty()) return 1;
  // A set whose groups are unions of another set's groups adds nothing.
  for (std::size_t i = 0; i < sets.size();) {
    bool redundant = false;
    for (std::size_t j = 0; j < sets.size() && !redundant; ++j)
      if (j != i && nested_in(sets[j], sets[i]) && (!nested_in(sets[i], sets[j]) || j < i)) redundant = true;
    if (redundant) sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  if (sets.size() == 1) return sets[0].count;
  if (sets.size() == 2) return sets[0].count + sets[1].count - components(sets[0], sets[1]);

  // General case: rank of D'D computed densely.
  std::size_t total = 0;
  std::vector<std::size_t> offset;
  for (const auto& s : sets) {
    offset.push_back(total);
    total += s.count;
  }
  if (total > 4000) throw InputError("ols: too many dummy columns to determine their rank");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < sets[0].id.size(); ++i)
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = 0; b < sets.size(); ++b)
        g(static_cast<Eigen::Index>(offset[a] + sets[a].id[i]), static_cast<Eigen::Index>(offset[b] + sets[b].id[i])) += 1.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  qr.setThreshold(1e-9);
  return static_cast<std::size_t>(qr.rank());
}

// Subtract group means until the largest adjustment in a full sweep is below tol.
inline int absorb(std::vector<double>& v, const std::vector<DenseGroups>& sets, double tol, int max_sweeps) {
  if (sets.empty()) {
    const double m = mean(v);
    for (auto& x : v) x -= m;
    return 1;
  }
  std::vector<double> sum;
  std::vector<std::size_t> cnt;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (const auto& s : sets) {
      sum.assign(s.count, 0.0);
      cnt.assign(s.count, 0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        sum[s.id[i]] += v[i];
        ++cnt[s.id[i]];
      }
      for (std::size_t g = 0; g < s.count; ++g) {
        sum[g] /= static_cast<double>(cnt[g]);
        max_change = std::max(max_change, std::abs(sum[g]));
      }
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= sum[s.id[i]];
    }
    if (max_change < tol || sets.size() == 1) return sweep;
  }
  throw NumericalError("ols: alternating projections did not converge in " + std::to_string(max_sweeps) + " sweeps");
}

}  // namespace detail

inline OlsResult ols_fixed_effects(std::span<const double> y, std::span<const double> measure,
                                   std::span<const FixedEffect> effects = {}, double tol = 1e-10,
                                   int max_sweeps = 10000) {
  const std::size_t n = y.size();
  if (measure.size() != n) throw InputError("ols: y and measure differ in length");
  std::vector<detail::DenseGroups> sets;
  OlsResult r;
  for (const auto& fe : effects) {
    if (fe.codes.size() != n) throw InputError("ols: fixed effect '" + fe.name + "' has wrong length");
    sets.push_back(detail::densify(fe.codes));
    r.effects.push_back(fe.name);
  }

  r.n_obs = n;
  r.n_params = detail::dummy_rank(sets) + 1;
  if (n <= r.n_params)
    throw InputError("ols: " + std::to_string(n) + " observations for " + std::to_string(r.n_params) + " parameters");

  std::vector<double> yt(y.begin(), y.end()), xt(measure.begin(), measure.end());
  const int sy = detail::absorb(yt, sets, tol, max_sweeps);
  const int sx = detail::absorb(xt, sets, tol, max_sweeps);
  r.sweeps = std::max(sy, sx);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += xt[i] * xt[i];
    sxy += xt[i] * yt[i];
  }
  double raw_var = 0.0;
  {
    const double m = mean(measure);
    for (double v : measure) raw_var += (v - m) * (v - m);
    raw_var /= static_cast<double>(n);
  }
  if (sxx / static_cast<double>(n) < 1e-12 * std::max(1.0, raw_var))
    throw NumericalError("ols: measure is collinear with the included dummies");

  const double beta = sxy / sxx;
  double ssr = 0.0, meat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = yt[i] - beta * xt[i];
    ssr += e * e;
    meat += xt[i] * xt[i] * e * e;
  }
  const double ym = mean(y);
  double sst = 0.0;
  for (double v : y) sst += (v - ym) * (v - ym);

  const double dn = static_cast<double>(n), dk = static_cast<double>(r.n_params);
  r.coefficient_on_measure = beta;
  r.robust_se = std::sqrt(dn / (dn - dk) * meat) / sxx;
  r.t_stat = r.robust_se > 0.0 ? beta / r.robust_se : std::copysign(HUGE_VAL, beta);
  r.r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  r.adj_r2 = 1.0 - (1.0 - r.r2) * (dn - 1.0) / (dn - dk);
  return r;
}

}  // namespace occ2vec::stats
