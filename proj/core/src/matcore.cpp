#include "wkp/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wkp {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
}

Eigen::MatrixXcd gaussian(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("random matrix dimension must be >= 1");
  // Standard complex Gaussian: E|z|^2 = 1.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(dim, dim);
  // Fill row-major so the stream order matches the file format's order.
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw ShapeError("ComplexMatrix must be square, got " + std::to_string(m_.rows()) + "x" +
                     std::to_string(m_.cols()));
  }
  if (m_.rows() < 1) throw ShapeError("ComplexMatrix must have dim >= 1");
  if (!m_.allFinite()) throw DomainError("ComplexMatrix entries must be finite");
}

ComplexMatrix ComplexMatrix::zero(int dim) { return ComplexMatrix(Eigen::MatrixXcd::Zero(dim, dim)); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::unit(int dim, int i, int j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim) throw ShapeError("matrix unit index out of range");
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
  e(i, j) = 1.0;
  return ComplexMatrix(std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& diag) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(diag.size()),
                                              static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  return ComplexMatrix(std::move(d));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto dim = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd out(dim, dim);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != dim) throw ShapeError("from_rows: ragged rows");
    Eigen::Index j = 0;
    for (const auto& v : row) out(i, j++) = v;
    ++i;
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator+");
  return ComplexMatrix(a.mat() + b.mat());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator-");
  return ComplexMatrix(a.mat() - b.mat());
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  return ComplexMatrix(a.mat() * b.mat());
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.mat()); }

BipartiteShape::BipartiteShape(int m, int n, int k) : m_(m), n_(n), k_(k) {
  if (m < 2 || n < 2) {
    throw DomainError("bipartite factors need m, n >= 2 (got m=" + std::to_string(m) +
                      ", n=" + std::to_string(n) + ")");
  }
  if (k < 1 || k > m * n - 1) {
    throw DomainError("k must satisfy 1 <= k <= mn-1 (got k=" + std::to_string(k) +
                      ", mn=" + std::to_string(m * n) + ")");
  }
}

double max_abs(const ComplexMatrix& a) { return a.mat().cwiseAbs().maxCoeff(); }

Complex trace(const ComplexMatrix& a) { return a.mat().trace(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int m = a.dim();
  const int n = b.dim();
  Eigen::MatrixXcd out(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out.block(i * n, j * n, n, n) = a(i, j) * b.mat();
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix transpose(const ComplexMatrix& a) { return ComplexMatrix(a.mat().transpose()); }

ComplexMatrix adjoint(const ComplexMatrix& a) { return ComplexMatrix(a.mat().adjoint()); }

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  const int d = a.dim();
  Eigen::MatrixXcd h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = a(i, i).real();
    for (int j = i + 1; j < d; ++j) {
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return ComplexMatrix(std::move(h));
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, const BipartiteShape& shape, Side side) {
  const int m = shape.m();
  const int n = shape.n();
  if (x.dim() != m * n) {
    throw ShapeError("partial_transpose: matrix dim " + std::to_string(x.dim()) +
                     " does not equal m*n = " + std::to_string(m * n));
  }
  Eigen::MatrixXcd out(m * n, m * n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (side == Side::Right) {
        out.block(a * n, b * n, n, n) = x.mat().block(a * n, b * n, n, n).transpose();
      } else {
        out.block(a * n, b * n, n, n) = x.mat().block(b * n, a * n, n, n);
      }
    }
  }
  return ComplexMatrix(std::move(out));
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  const double skew = (a.mat() - a.mat().adjoint()).cwiseAbs().maxCoeff();
  return skew <= tol * (1.0 + max_abs(a));
}

HermitianSpectrum eig_hermitian(const ComplexMatrix& h) {
  if (!is_hermitian(h)) throw DomainError("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat());
  if (solver.info() != Eigen::Success) throw NumericError("eig_hermitian: solver did not converge");
  const int d = h.dim();
  // Eigen returns ascending order; reversing keeps equal values in a fixed order.
  std::vector<double> values(static_cast<std::size_t>(d));
  Eigen::MatrixXcd frame(d, d);
  for (int i = 0; i < d; ++i) {
    values[static_cast<std::size_t>(i)] = solver.eigenvalues()(d - 1 - i);
    frame.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return {std::move(values), ComplexMatrix(std::move(frame))};
}

Eigen::VectorXcd vec(const ComplexMatrix& x) {
  return Eigen::Map<const Eigen::VectorXcd>(x.mat().data(), x.mat().size());
}

ComplexMatrix unvec(const Eigen::VectorXcd& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw ShapeError("unvec: length is not a perfect square");
  return ComplexMatrix(Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d));
}

ComplexMatrix random_complex(int dim, Rng& rng) { return ComplexMatrix(gaussian(dim, rng)); }

ComplexMatrix random_hermitian(int dim, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian(dim, rng);
  return hermitian_part(ComplexMatrix(g));
}

ComplexMatrix random_haar_unitary(int dim, Rng& rng) {
  const Eigen::MatrixXcd g = gaussian(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return ComplexMatrix(std::move(q));
}

ComplexMatrix random_complex(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_complex(dim, rng);
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(dim, rng);
}

ComplexMatrix random_haar_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_haar_unitary(dim, rng);
}

bool is_orthogonal_pair(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_same_dim(a, b, "is_orthogonal_pair");
  const double scale = (1.0 + max_abs(a)) * (1.0 + max_abs(b));
  const double left = (a.mat() * b.mat().adjoint()).cwiseAbs().maxCoeff();
  const double right = (a.mat().adjoint() * b.mat()).cwiseAbs().maxCoeff();
  return left <= tol * scale && right <= tol * scale;
}

namespace detail {

Eigen::VectorXd hermitian_eigenvalues_desc(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue sweep did not converge");
  return solver.eigenvalues().reverse();
}

}  // namespace detail

}  // namespace wkp
