#pragma once

// Exact t-SNE: Gaussian input affinities with per-point bandwidth, Student-t
// output affinities, gradient descent with momentum, gains and early
// exaggeration. All loops run in index order so results are bitwise
// reproducible for a given seed.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/pca.hpp"
#include "occ2vec/random.hpp"

namespace occ2vec::dimred {

struct TsneConfig {
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch = 250;
  std::uint64_t seed = 0;

  void validate(std::size_t n) const {
    if (n < 4) throw InputError("tsne: need at least 4 points, got " + std::to_string(n));
    if (!(perplexity > 1.0)) throw InputError("tsne: perplexity must exceed 1");
    if (!(perplexity < (static_cast<double>(n) - 1.0) / 3.0))
      throw InputError("tsne: perplexity " + std::to_string(perplexity) + " must be below (n-1)/3 = " +
                       std::to_string((static_cast<double>(n) - 1.0) / 3.0));
    if (iterations < 1) throw InputError("tsne: iterations must be positive");
    if (!(learning_rate > 0.0)) throw InputError("tsne: learning rate must be positive");
    if (!(early_exaggeration >= 1.0)) throw InputError("tsne: exaggeration must be at least 1");
  }
};

struct Embedding2D {
  std::vector<std::array<double, 2>> points;  // input row order
  double initial_kl = 0.0;
  double final_kl = 0.0;
  bool jittered = false;
};

/// Sum of p log(p/q) over the entries; entries with p == 0 contribute nothing.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InputError("kl_divergence: distributions differ in length");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw InputError("kl_divergence: negative probability");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw NumericalError("kl_divergence: q = 0 where p > 0 at index " + std::to_string(i));
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

/// Row-conditional Gaussian affinities (n x n row-major, zero diagonal).
struct ConditionalAffinities {
  std::vector<double> p;
  std::vector<double> beta;        // precision 1 / (2 sigma^2) per row
  std::vector<double> perplexity;  // achieved 2^H per row
  bool converged = true;
};

inline std::vector<double> squared_distances(const Matrix& x) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = (x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).squaredNorm();
      d[i * n + j] = d[j * n + i] = v;
    }
  return d;
}

/// Bisection on each row's precision until |2^H - perplexity| < tol * perplexity.
inline ConditionalAffinities calibrate_affinities(const Matrix& x, double perplexity, double tol = 1e-5,
                                                  int max_steps = 200) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto d = squared_distances(x);
  const double target = std::log(perplexity);  // natural-log entropy
  ConditionalAffinities a;
  a.p.assign(n * n, 0.0);
  a.beta.assign(n, 1.0);
  a.perplexity.assign(n, 0.0);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dmin = std::numeric_limits<double>::infinity(), dsum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        dmin = std::min(dmin, d[i * n + j]);
        dsum += d[i * n + j];
      }
    const double spread = dsum / static_cast<double>(n - 1) - dmin;
    double beta = spread > 0.0 ? 1.0 / spread : 1.0;
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    double h = 0.0, sum = 0.0;
    bool ok = false;
    for (int step = 0; step < max_steps; ++step) {
      sum = 0.0;
      double wsum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
          row[j] = 0.0;
          continue;
        }
        const double shifted = d[i * n + j] - dmin;
        row[j] = std::exp(-beta * shifted);
        sum += row[j];
        wsum += row[j] * shifted;
      }
      h = std::log(sum) + beta * wsum / sum;
      if (std::abs(std::exp(h) - perplexity) < tol * perplexity) {
        ok = true;
        break;
      }
      if (h > target) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = 0.5 * (beta + lo);
      }
    }
    if (!ok) a.converged = false;
    a.beta[i] = beta;
    a.perplexity[i] = std::exp(h);
    for (std::size_t j = 0; j < n; ++j) a.p[i * n + j] = row[j] / sum;
  }
  return a;
}

/// Symmetrized joint affinities (p_j|i + p_i|j) / 2n.
inline std::vector<double> joint_probabilities(const ConditionalAffinities& a, std::size_t n) {
  std::vector<double> p(n * n, 0.0);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) p[i * n + j] = p[j * n + i] = (a.p[i * n + j] + a.p[j * n + i]) * scale;
  return p;
}

/// Student-t joint affinities of 2-D points (n x n row-major, zero diagonal).
inline std::vector<double> output_affinities(std::span<const std::array<double, 2>> y) {
  const std::size_t n = y.size();
  std::vector<double> q(n * n, 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = y[i][0] - y[j][0], dy = y[i][1] - y[j][1];
      const double w = 1.0 / (1.0 + dx * dx + dy * dy);
      q[i * n + j] = q[j * n + i] = w;
      z += 2.0 * w;
    }
  for (auto& v : q) v /= z;
  return q;
}

namespace detail {

inline void center(std::vector<std::array<double, 2>>& y) {
  double mx = 0.0, my = 0.0;
  for (const auto& p : y) {
    mx += p[0];
    my += p[1];
  }
  mx /= static_cast<double>(y.size());
  my /= static_cast<double>(y.size());
  for (auto& p : y) {
    p[0] -= mx;
    p[1] -= my;
  }
}

inline Matrix jitter(const Matrix& x, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x6a09e667f3bcc908ULL);
  Matrix out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) += 1e-10 * rng.normal();
  return out;
}

}  // namespace detail

inline Embedding2D tsne(const Matrix& x, const TsneConfig& config) {
  const auto n = static_cast<std::size_t>(x.rows());
  config.validate(n);
  if (!x.allFinite()) throw InputError("tsne: non-finite input");

  Embedding2D out;
  auto cond = calibrate_affinities(x, config.perplexity);
  if (!cond.converged) {
    out.jittered = true;
    cond = calibrate_affinities(detail::jitter(x, config.seed), config.perplexity);
    if (!cond.converged) throw NumericalError("tsne: bandwidth search did not converge (duplicate points?)");
  }
  const auto p = joint_probabilities(cond, n);

  auto& y = out.points;
  y.resize(n);
  CounterRng rng(config.seed);
  for (auto& pt : y) {
    pt[0] = 1e-4 * rng.normal();
    pt[1] = 1e-4 * rng.normal();
  }
  detail::center(y);
  out.initial_kl = kl_divergence(p, output_affinities(y));

  std::vector<std::array<double, 2>> update(n, {0.0, 0.0}), gains(n, {1.0, 1.0}), grad(n);
  std::vector<double> w(n * n, 0.0);
  for (int it = 0; it < config.iterations; ++it) {
    const double exaggeration = it < config.exaggeration_iterations ? config.early_exaggeration : 1.0;
    const double momentum = it < config.momentum_switch ? config.initial_momentum : config.final_momentum;

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = y[i][0] - y[j][0], dy = y[i][1] - y[j][1];
        const double v = 1.0 / (1.0 + dx * dx + dy * dy);
        w[i * n + j] = w[j * n + i] = v;
        z += 2.0 * v;
      }
    const double inv_z = 1.0 / z;
    for (std::size_t i = 0; i < n; ++i) {
      double gx = 0.0, gy = 0.0;
      const double* wi = &w[i * n];
      const double* pi = &p[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double m = (exaggeration * pi[j] - wi[j] * inv_z) * wi[j];
        gx += m * (y[i][0] - y[j][0]);
        gy += m * (y[i][1] - y[j][1]);
      }
      grad[i] = {4.0 * gx, 4.0 * gy};
    }
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 2; ++c) {
        auto& g = gains[i][c];
        g = (grad[i][c] > 0.0) != (update[i][c] > 0.0) ? g + 0.2 : g * 0.8;
        if (g < 0.01) g = 0.01;
        update[i][c] = momentum * update[i][c] - config.learning_rate * g * grad[i][c];
        y[i][c] += update[i][c];
      }
    detail::center(y);
  }
  for (const auto& pt : y)
    if (!std::isfinite(pt[0]) || !std::isfinite(pt[1])) throw NumericalError("tsne: optimization diverged");
  out.final_kl = kl_divergence(p, output_affinities(y));
  return out;
}

}  // namespace occ2vec::dimred
