#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "occ2vec/error.hpp"

namespace occ2vec {

inline double mean(std::span<const double> x) {
  if (x.empty()) throw InputError("mean of empty series");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

/// Sample standard deviation (divisor n - 1), two-pass.
inline double sample_sd(std::span<const double> x) {
  if (x.size() < 2) throw InputError("sample standard deviation needs at least two values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

/// (x - mean) / sample sd. Throws NumericalError on zero variance.
inline std::vector<double> standardize(std::span<const double> x, const std::string& what = "series") {
  if (x.size() < 2) throw InputError(what + ": standardization needs at least two values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  if (!(sd > 0.0) || !(sd > 1e-14 * (std::abs(m) + 1.0))) throw NumericalError(what + ": zero variance, cannot standardize");
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - m) / sd;
  return z;
}

}  // namespace occ2vec
