#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "occ2vec/error.hpp"

namespace occ2vec::dimred {

using Matrix = Eigen::MatrixXd;

/// Rows of `rows` stacked into an n x d matrix.
inline Matrix to_matrix(std::span<const std::vector<double>> rows) {
  if (rows.empty()) return Matrix(0, 0);
  const auto d = static_cast<Eigen::Index>(rows.front().size());
  Matrix m(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != d) throw InputError("to_matrix: ragged rows");
    for (Eigen::Index j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  return m;
}

struct PcaModel {
  Eigen::RowVectorXd mean_vector;
  Matrix components;                        // d x k, orthonormal columns
  std::vector<double> explained_variance;   // descending, sample (n-1) scaling
  double total_variance = 0.0;

  Matrix transform(const Matrix& x) const {
    if (x.cols() != mean_vector.size()) throw InputError("pca transform: dimension mismatch");
    return (x.rowwise() - mean_vector) * components;
  }
  Matrix inverse_transform(const Matrix& scores) const {
    return (scores * components.transpose()).rowwise() + mean_vector;
  }
};

struct PcaResult {
  PcaModel model;
  Matrix scores;  // n x k
};

namespace detail {

// Make the largest-magnitude entry of each column positive (first one on ties).
inline void fix_signs(Matrix& components) {
  for (Eigen::Index c = 0; c < components.cols(); ++c) {
    Eigen::Index arg = 0;
    for (Eigen::Index r = 1; r < components.rows(); ++r)
      if (std::abs(components(r, c)) > std::abs(components(arg, c))) arg = r;
    if (components(arg, c) < 0.0) components.col(c) *= -1.0;
  }
}

// Replace column c by a unit vector orthogonal to columns [0, c).
inline void complete_column(Matrix& v, Eigen::Index c) {
  for (Eigen::Index e = 0; e < v.rows(); ++e) {
    Eigen::VectorXd cand = Eigen::VectorXd::Unit(v.rows(), e);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index p = 0; p < c; ++p) cand -= v.col(p).dot(cand) * v.col(p);
    const double nrm = cand.norm();
    if (nrm > 1e-6) {
      v.col(c) = cand / nrm;
      return;
    }
  }
  throw NumericalError("pca: could not complete an orthonormal basis");
}

}  // namespace detail

/// Principal components of the rows of x. Uses the d x d covariance when
/// d <= n and the n x n Gram matrix otherwise.
inline PcaResult pca_fit_transform(const Matrix& x, Eigen::Index k) {
  const Eigen::Index n = x.rows(), d = x.cols();
  if (n < 2) throw InputError("pca: need at least two rows");
  if (k < 1 || k > std::min(n - 1, d))
    throw InputError("pca: k = " + std::to_string(k) + " outside [1, " + std::to_string(std::min(n - 1, d)) + "]");
  if (!x.allFinite()) throw InputError("pca: non-finite input");

  PcaResult res;
  auto& m = res.model;
  m.mean_vector = x.colwise().mean();
  const Matrix xc = x.rowwise() - m.mean_vector;
  const double denom = static_cast<double>(n - 1);
  m.total_variance = xc.squaredNorm() / denom;

  Matrix comps(d, k);
  std::vector<double> vals(static_cast<std::size_t>(k));
  if (d <= n) {
    const Matrix cov = (xc.transpose() * xc) / denom;
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    if (es.info() != Eigen::Success) throw NumericalError("pca: eigen-decomposition failed");
    for (Eigen::Index c = 0; c < k; ++c) {
      comps.col(c) = es.eigenvectors().col(d - 1 - c);
      vals[static_cast<std::size_t>(c)] = es.eigenvalues()(d - 1 - c);
    }
  } else {
    const Matrix gram = (xc * xc.transpose()) / denom;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    if (es.info() != Eigen::Success) throw NumericalError("pca: eigen-decomposition failed");
    const double tiny = 1e-12 * std::max(1.0, es.eigenvalues()(n - 1));
    for (Eigen::Index c = 0; c < k; ++c) {
      const double lam = es.eigenvalues()(n - 1 - c);
      vals[static_cast<std::size_t>(c)] = lam;
      if (lam > tiny) {
        comps.col(c) = xc.transpose() * es.eigenvectors().col(n - 1 - c) / std::sqrt(denom * lam);
        comps.col(c).normalize();
      } else {
        detail::complete_column(comps, c);
      }
    }
  }
  for (auto& v : vals) v = std::max(v, 0.0);
  detail::fix_signs(comps);
  m.components = std::move(comps);
  m.explained_variance = std::move(vals);
  res.scores = xc * m.components;
  return res;
}

}  // namespace occ2vec::dimred
