#pragma once

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "occ2vec/moments.hpp"

namespace occ2vec::stats {

struct TTestResult {
  double rho0 = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
};

/// Two-sided p-value 2 * (1 - F_t(|t|; df)).
inline double t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  const boost::math::students_t_distribution<double> dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

/// One-sample two-sided t-test of H0: mean == mu0.
inline TTestResult t_test_mean(std::span<const double> values, double mu0) {
  if (values.size() < 3) throw InputError("t_test_mean: need at least three values");
  const double m = mean(values);
  const double sd = sample_sd(values);
  if (!(sd > 0.0)) throw NumericalError("t_test_mean: zero sample standard deviation");
  const double n = static_cast<double>(values.size());
  TTestResult r;
  r.rho0 = mu0;
  r.df = values.size() - 1;
  r.t_stat = (m - mu0) / (sd / std::sqrt(n));
  r.p_value = t_two_sided_p(r.t_stat, static_cast<double>(r.df));
  return r;
}

struct RhoSweep {
  std::optional<double> first_not_rejected;
  std::vector<TTestResult> results;  // one per grid value, in grid order
};

/// Test H0: mean == rho0 for rho0 = 0.01, 0.02, ..., 0.99 and report the first
/// hypothesis with p > alpha.
inline RhoSweep rho_sweep(std::span<const double> values, double alpha = 0.05) {
  RhoSweep s;
  for (int k = 1; k <= 99; ++k) {
    auto r = t_test_mean(values, k / 100.0);
    if (!s.first_not_rejected && r.p_value > alpha) s.first_not_rejected = r.rho0;
    s.results.push_back(r);
  }
  return s;
}

}  // namespace occ2vec::stats
