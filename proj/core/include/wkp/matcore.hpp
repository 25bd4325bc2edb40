#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "wkp/errors.hpp"

namespace wkp {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Dense square complex matrix with finite entries.
///
/// Thin value wrapper around Eigen::MatrixXcd that enforces squareness and
/// finiteness at construction. Entries are read-only afterwards; build a new
/// matrix through `mat()` arithmetic when a modified copy is needed.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd entries);

  static ComplexMatrix zero(int dim);
  static ComplexMatrix identity(int dim);
  /// E_ij: one at (i, j), zero elsewhere.
  static ComplexMatrix unit(int dim, int i, int j);
  static ComplexMatrix diagonal(const std::vector<Complex>& diag);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  int dim() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXcd& mat() const { return m_; }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) { return a.m_ == b.m_; }

 private:
  Eigen::MatrixXcd m_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

/// Bipartite factor dimensions (m, n) together with the range index k.
class BipartiteShape {
 public:
  /// Throws DomainError unless m, n >= 2 and 1 <= k <= mn - 1.
  BipartiteShape(int m, int n, int k);

  int m() const { return m_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int dim() const { return m_ * n_; }
  bool is_half() const { return m_ * n_ == 2 * k_; }

  BipartiteShape with_k(int k) const { return {m_, n_, k}; }

  friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;

 private:
  int m_;
  int n_;
  int k_;
};

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix frame;              // columns are matching orthonormal eigenvectors
};

enum class Side { Left, Right };

double max_abs(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix adjoint(const ComplexMatrix& a);
/// (A + A*)/2 with entry (j, i) set to the exact conjugate of entry (i, j).
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Views X as an m x m grid of n x n blocks. Right transposes every block in
/// place (A⊗B -> A⊗Bᵗ); Left transposes the block pattern (A⊗B -> Aᵗ⊗B).
ComplexMatrix partial_transpose(const ComplexMatrix& x, const BipartiteShape& shape, Side side);

/// Relative Hermiticity tolerance used by every Hermitian-only entry point.
inline constexpr double kHermitianTol = 1e-10;

bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Throws DomainError for non-Hermitian input, NumericError on solver failure.
HermitianSpectrum eig_hermitian(const ComplexMatrix& h);

/// Column-stacking vectorization: vec(X)[i + j*dim] = X(i, j).
Eigen::VectorXcd vec(const ComplexMatrix& x);
ComplexMatrix unvec(const Eigen::VectorXcd& v);

ComplexMatrix random_complex(int dim, Rng& rng);
ComplexMatrix random_hermitian(int dim, Rng& rng);
ComplexMatrix random_haar_unitary(int dim, Rng& rng);
ComplexMatrix random_complex(int dim, std::uint64_t seed);
ComplexMatrix random_hermitian(int dim, std::uint64_t seed);
ComplexMatrix random_haar_unitary(int dim, std::uint64_t seed);

/// A ⊥ B in the sense AB* = A*B = 0, tested against tol·(1+|A|max)(1+|B|max).
bool is_orthogonal_pair(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

namespace detail {

/// Unchecked descending eigenvalues of the Hermitian matrix h (only the lower
/// triangle is read). Hot path for angle sweeps.
Eigen::VectorXd hermitian_eigenvalues_desc(const Eigen::MatrixXcd& h);

}  // namespace detail

}  // namespace wkp
