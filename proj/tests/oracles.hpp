#pragma once

// Independent reference computations and instance generators for the tests.
// Nothing here calls an eigensolver: range extrema come from random
// isometries refined by shifted orthogonal iteration (QR only).

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "wkp/matcore.hpp"

namespace wkp::testing {

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_diff(a.mat(), b.mat());
}

inline Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(x.rows(), x.cols());
}

inline Eigen::MatrixXcd gaussian_block(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

/// Re(e^{-iθ} tr(X* A X)) / k for an isometry X.
inline double directional_value(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& x, double theta) {
  const Complex z = (x.adjoint() * a * x).trace() / static_cast<double>(x.cols());
  return (std::polar(1.0, -theta) * z).real();
}

struct OracleResult {
  double best_sample;  // max over the random isometries alone
  double refined;      // after orthogonal iteration from the best sample
};

/// Maximizes Re(e^{-iθ} tr(X*AX))/k over d x k isometries by sampling and then
/// running shifted orthogonal iteration on the Hermitian part.
inline OracleResult max_over_isometries(const Eigen::MatrixXcd& a, int k, double theta,
                                        int samples, std::uint64_t seed, int iterations = 4000) {
  Rng rng(seed);
  const int d = static_cast<int>(a.rows());
  Eigen::MatrixXcd best;
  double best_val = -1e300;
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd x = orthonormal_columns(gaussian_block(d, k, rng));
    const double v = directional_value(a, x, theta);
    if (v > best_val) {
      best_val = v;
      best = x;
    }
  }
  const Eigen::MatrixXcd rot = std::polar(1.0, -theta) * a;
  const Eigen::MatrixXcd h = 0.5 * (rot + rot.adjoint());
  const double shift = h.norm() + 1.0;
  const Eigen::MatrixXcd shifted = h + shift * Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd x = best;
  for (int it = 0; it < iterations; ++it) x = orthonormal_columns(shifted * x);
  return {best_val, std::max(best_val, directional_value(a, x, theta))};
}

/// Random isometry with `rows` orthonormal rows in C^dim.
inline Eigen::MatrixXcd random_coisometry(int rows, int dim, Rng& rng) {
  return orthonormal_columns(gaussian_block(dim, rows, rng)).adjoint();
}

/// Hermitian A1 ⊕ A2 where A1 (k x k) carries the k largest eigenvalues.
inline ComplexMatrix block_split_instance(int dim, int k, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> vals(static_cast<std::size_t>(dim));
  for (double& v : vals) v = -5.0 + 10.0 * uni(rng);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  // Keep the top block separated from the rest.
  for (int i = 0; i < k; ++i) vals[static_cast<std::size_t>(i)] += 1.0;

  auto block = [&](int offset, int size) {
    const Eigen::MatrixXcd w = orthonormal_columns(gaussian_block(size, size, rng));
    Eigen::VectorXcd diag(size);
    for (int i = 0; i < size; ++i) diag(i) = vals[static_cast<std::size_t>(offset + i)];
    return Eigen::MatrixXcd(w * diag.asDiagonal() * w.adjoint());
  };
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  h.topLeftCorner(k, k) = block(0, k);
  if (k < dim) h.bottomRightCorner(dim - k, dim - k) = block(k, dim - k);
  // Exact Hermiticity for the eigensolver precondition.
  return hermitian_part(ComplexMatrix(h));
}

/// PSD pair A = V(P1 ⊕ 0)V*, B = V(0 ⊕ P2)V* with P1 of size k.
inline std::pair<ComplexMatrix, ComplexMatrix> orthogonal_psd_instance(int dim, int k, Rng& rng) {
  const Eigen::MatrixXcd g1 = gaussian_block(k, k, rng);
  const Eigen::MatrixXcd g2 = gaussian_block(dim - k, dim - k, rng);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
  a.topLeftCorner(k, k) = g1 * g1.adjoint();
  b.bottomRightCorner(dim - k, dim - k) = g2 * g2.adjoint();
  const Eigen::MatrixXcd v = orthonormal_columns(gaussian_block(dim, dim, rng));
  return {hermitian_part(ComplexMatrix(v * a * v.adjoint())),
          hermitian_part(ComplexMatrix(v * b * v.adjoint()))};
}

}  // namespace wkp::testing
