#include "wkp/maps.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace wkp {

namespace {

struct Index2 {
  int row;
  int col;
};

// Source entry of X that lands at (r, c) of varphi(X).
Index2 varphi_source(Varphi v, int r, int c, int n) {
  switch (v) {
    case Varphi::Identity:
      return {r, c};
    case Varphi::FullTranspose:
      return {c, r};
    case Varphi::PartialRight: {
      const int a = r / n, p = r % n, b = c / n, q = c % n;
      return {a * n + q, b * n + p};
    }
    case Varphi::PartialLeft: {
      const int a = r / n, p = r % n, b = c / n, q = c % n;
      return {b * n + p, a * n + q};
    }
  }
  return {r, c};
}

Eigen::MatrixXcd varphi_permutation(Varphi v, const BipartiteShape& shape) {
  const int d = shape.dim();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const Index2 s = varphi_source(v, r, c, shape.n());
      p(r + c * d, s.row + s.col * d) = 1.0;
    }
  }
  return p;
}

// Rank-one matrix vec(I) vec(I)ᵀ / k, i.e. X -> (tr X / k) I.
Eigen::MatrixXcd trace_term(const BipartiteShape& shape) {
  const int d = shape.dim();
  Eigen::VectorXcd vi = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) vi(i + i * d) = 1.0;
  return (vi * vi.transpose()) / static_cast<double>(shape.k());
}

Eigen::MatrixXcd conjugation_matrix(const Eigen::MatrixXcd& u) {
  return kron(ComplexMatrix(u.conjugate()), ComplexMatrix(u)).mat();
}

}  // namespace

std::string_view to_string(Varphi v) {
  switch (v) {
    case Varphi::Identity:
      return "id";
    case Varphi::FullTranspose:
      return "t";
    case Varphi::PartialRight:
      return "pt_right";
    case Varphi::PartialLeft:
      return "pt_left";
  }
  return "id";
}

Varphi varphi_from_string(std::string_view tag) {
  for (Varphi v : kAllVarphi) {
    if (to_string(v) == tag) return v;
  }
  throw ParseError("unknown varphi tag '" + std::string(tag) + "'");
}

ComplexMatrix apply_varphi(Varphi v, const ComplexMatrix& x, const BipartiteShape& shape) {
  switch (v) {
    case Varphi::Identity:
      if (x.dim() != shape.dim()) throw ShapeError("apply_varphi: dimension mismatch");
      return x;
    case Varphi::FullTranspose:
      if (x.dim() != shape.dim()) throw ShapeError("apply_varphi: dimension mismatch");
      return transpose(x);
    case Varphi::PartialRight:
      return partial_transpose(x, shape, Side::Right);
    case Varphi::PartialLeft:
      return partial_transpose(x, shape, Side::Left);
  }
  return x;
}

bool CanonicalFormSpec::theorem_valid() const {
  if (varphi == Varphi::Identity || varphi == Varphi::FullTranspose) return true;
  return std::min(shape.m(), shape.n()) <= 2;
}

void CanonicalFormSpec::validate() const {
  if (unitary.dim() != shape.dim()) {
    throw ShapeError("canonical form: unitary has dim " + std::to_string(unitary.dim()) +
                     ", expected mn = " + std::to_string(shape.dim()));
  }
  const Eigen::MatrixXcd gram = unitary.mat().adjoint() * unitary.mat();
  const double defect =
      (gram - Eigen::MatrixXcd::Identity(shape.dim(), shape.dim())).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw DomainError("canonical form: matrix is not unitary (|U*U - I|max = " +
                      std::to_string(defect) + ")");
  }
  if (affine && !shape.is_half()) {
    throw DomainError("canonical form: affine variant requires mn = 2k (mn=" +
                      std::to_string(shape.dim()) + ", k=" + std::to_string(shape.k()) + ")");
  }
}

LinearMapMatrix::LinearMapMatrix(BipartiteShape shape, ComplexMatrix matrix)
    : shape_(shape), matrix_(std::move(matrix)) {
  const int d = shape_.dim();
  if (matrix_.dim() != d * d) {
    throw ShapeError("map matrix has dim " + std::to_string(matrix_.dim()) + ", expected (mn)^2 = " +
                     std::to_string(d * d));
  }
}

LinearMapMatrix identity_map(const BipartiteShape& shape) {
  return {shape, ComplexMatrix::identity(shape.dim() * shape.dim())};
}

LinearMapMatrix build_canonical(const CanonicalFormSpec& spec) {
  spec.validate();
  Eigen::MatrixXcd m = conjugation_matrix(spec.unitary.mat()) * varphi_permutation(spec.varphi, spec.shape);
  if (spec.affine) m = trace_term(spec.shape) - m;
  return {spec.shape, ComplexMatrix(std::move(m))};
}

LinearMapMatrix inverse_canonical(const CanonicalFormSpec& spec) {
  spec.validate();
  // Every varphi permutation is an involution.
  const Eigen::MatrixXcd& u = spec.unitary.mat();
  Eigen::MatrixXcd m = varphi_permutation(spec.varphi, spec.shape) *
                       kron(ComplexMatrix(u.transpose()), ComplexMatrix(u.adjoint())).mat();
  if (spec.affine) {
    const Eigen::MatrixXcd refl =
        trace_term(spec.shape) - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    m = m * refl;
  }
  return {spec.shape, ComplexMatrix(std::move(m))};
}

LinearMapMatrix reflection_map(const BipartiteShape& shape) {
  const int d = shape.dim();
  return {shape, ComplexMatrix(trace_term(shape) - Eigen::MatrixXcd::Identity(d * d, d * d))};
}

LinearMapMatrix varphi_map(Varphi v, const BipartiteShape& shape) {
  return {shape, ComplexMatrix(varphi_permutation(v, shape))};
}

LinearMapMatrix compose(const LinearMapMatrix& outer, const LinearMapMatrix& inner) {
  if (outer.operand_dim() != inner.operand_dim()) throw ShapeError("compose: maps act on different spaces");
  return {outer.shape(), outer.matrix() * inner.matrix()};
}

ComplexMatrix apply_map(const LinearMapMatrix& phi, const ComplexMatrix& x) {
  if (x.dim() != phi.operand_dim()) {
    throw ShapeError("apply_map: operand has dim " + std::to_string(x.dim()) + ", map expects " +
                     std::to_string(phi.operand_dim()));
  }
  return unvec(phi.matrix().mat() * vec(x));
}

ComplexMatrix affine_reflect(const ComplexMatrix& x, int k) {
  if (k < 1) throw DomainError("affine_reflect: k must be >= 1");
  const Complex scale = trace(x) / static_cast<double>(k);
  return ComplexMatrix(scale * Eigen::MatrixXcd::Identity(x.dim(), x.dim()) - x.mat());
}

ComplexMatrix choi_matrix(const LinearMapMatrix& phi) {
  const int d = phi.operand_dim();
  const Eigen::MatrixXcd& m = phi.matrix().mat();
  Eigen::MatrixXcd c(d * d, d * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      // Block (p, q) is Φ(E_pq) = unvec of column p + q d.
      for (int b = 0; b < d; ++b) {
        for (int a = 0; a < d; ++a) c(p * d + a, q * d + b) = m(a + b * d, p + q * d);
      }
    }
  }
  return ComplexMatrix(std::move(c));
}

LinearMapMatrix map_from_choi(const ComplexMatrix& choi, const BipartiteShape& shape) {
  const int d = shape.dim();
  if (choi.dim() != d * d) throw ShapeError("map_from_choi: Choi matrix has the wrong size");
  Eigen::MatrixXcd m(d * d, d * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      for (int b = 0; b < d; ++b) {
        for (int a = 0; a < d; ++a) m(a + b * d, p + q * d) = choi(p * d + a, q * d + b);
      }
    }
  }
  return {shape, ComplexMatrix(std::move(m))};
}

}  // namespace wkp
