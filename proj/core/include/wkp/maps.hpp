#pragma once

#include <array>
#include <string_view>

#include "wkp/matcore.hpp"

namespace wkp {

/// The inner map applied before unitary conjugation in a canonical preserver.
enum class Varphi {
  Identity,       // A⊗B -> A⊗B
  FullTranspose,  // A⊗B -> (A⊗B)ᵗ
  PartialRight,   // A⊗B -> A⊗Bᵗ
  PartialLeft,    // A⊗B -> Aᵗ⊗B
};

inline constexpr std::array<Varphi, 4> kAllVarphi = {Varphi::Identity, Varphi::FullTranspose,
                                                     Varphi::PartialRight, Varphi::PartialLeft};

/// File-format tag: "id", "t", "pt_right", "pt_left".
std::string_view to_string(Varphi v);
/// Inverse of to_string; throws ParseError on unknown tags.
Varphi varphi_from_string(std::string_view tag);

/// X -> varphi(X) on an mn x mn matrix.
ComplexMatrix apply_varphi(Varphi v, const ComplexMatrix& x, const BipartiteShape& shape);

/// One canonical shape: X -> U varphi(X) U*, or, when `affine`,
/// X -> (tr X / k) I - U varphi(X) U*.
struct CanonicalFormSpec {
  Varphi varphi;
  ComplexMatrix unitary;
  bool affine;
  BipartiteShape shape;

  /// Whether the form preserves W_k on tensor products: identity and full
  /// transpose always; partial transposes only when min(m, n) <= 2. The affine
  /// flag is gated separately by validate().
  bool theorem_valid() const;

  /// Throws DomainError if the unitary is off by more than 1e-10 or the
  /// affine flag is set with mn != 2k; ShapeError on a dimension mismatch.
  void validate() const;
};

/// A linear map on M_{mn} stored as the (mn)² x (mn)² matrix that acts on
/// column-stacked inputs.
class LinearMapMatrix {
 public:
  LinearMapMatrix(BipartiteShape shape, ComplexMatrix matrix);

  const BipartiteShape& shape() const { return shape_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// Side of the matrices the map acts on (mn).
  int operand_dim() const { return shape_.dim(); }

 private:
  BipartiteShape shape_;
  ComplexMatrix matrix_;
};

LinearMapMatrix identity_map(const BipartiteShape& shape);

/// Builds the canonical map in closed form: conj(U)⊗U times the index
/// permutation of varphi, followed by the rank-one trace term when affine.
/// Forms that fail theorem_valid() are still buildable.
LinearMapMatrix build_canonical(const CanonicalFormSpec& spec);

/// Exact inverse of a canonical map (the affine reflection is an involution
/// on trace-preserving maps when mn = 2k).
LinearMapMatrix inverse_canonical(const CanonicalFormSpec& spec);

/// X -> (tr X / k) I - X as a map matrix on M_{mn}; not gated on mn = 2k.
LinearMapMatrix reflection_map(const BipartiteShape& shape);

/// X -> varphi(X) as a map matrix.
LinearMapMatrix varphi_map(Varphi v, const BipartiteShape& shape);

/// outer ∘ inner.
LinearMapMatrix compose(const LinearMapMatrix& outer, const LinearMapMatrix& inner);

ComplexMatrix apply_map(const LinearMapMatrix& phi, const ComplexMatrix& x);

/// (tr X / k) I - X.
ComplexMatrix affine_reflect(const ComplexMatrix& x, int k);

/// Σ_{p,q} E_pq ⊗ Φ(E_pq) over the matrix units of M_{mn}.
ComplexMatrix choi_matrix(const LinearMapMatrix& phi);

/// Inverse of choi_matrix for a given shape.
LinearMapMatrix map_from_choi(const ComplexMatrix& choi, const BipartiteShape& shape);

}  // namespace wkp
