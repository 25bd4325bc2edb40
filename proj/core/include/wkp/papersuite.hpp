#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wkp/classify.hpp"

namespace wkp {

/// (A, B) with X = [[0,3,0],[0,0,1],[0,0,0]] as leading block, zero padded to
/// m x m and n x n. Requires m, n >= 3.
std::pair<ComplexMatrix, ComplexMatrix> example1_matrices(int m, int n);

/// Spectra of the Hermitian parts of A⊗B and A⊗Bᵗ against their closed
/// forms, and the gap between their k-ranges for every k.
struct Example1Report {
  int m = 3;
  int n = 3;
  double tol = 0.0;
  std::vector<double> spectrum_ab;  // descending
  std::vector<double> spectrum_abt;
  std::vector<double> expected_ab;
  std::vector<double> expected_abt;
  double spectrum_error_ab = 0.0;
  double spectrum_error_abt = 0.0;
  /// Index k-1: max(|hi - hi'|, |lo - lo'|) of W_k of the two Hermitian parts.
  std::vector<double> re_gap_per_k;
  bool pass = false;
};

inline constexpr double kExample1GapThreshold = 1e-6;

Example1Report check_example1(int m, int n, double tol = 1e-10);

/// Outcome of testing one implication "hypothesis => conclusion" on an instance.
struct LemmaCheck {
  bool hypothesis = false;
  bool conclusion = false;
  /// Hypothesis failed, so the instance says nothing about the lemma.
  bool vacuous = false;
  /// conclusion when the hypothesis holds; true when vacuous.
  bool holds = true;
  double hypothesis_gap = 0.0;
  double conclusion_defect = 0.0;
};

/// If the first k diagonal entries of H sum to its k largest eigenvalues,
/// H must split as H_1 ⊕ H_2 with H_1 carrying those eigenvalues.
/// Tolerances are relative to 1 + |H|max; 1 <= k <= dim.
LemmaCheck check_block_split(const ComplexMatrix& h, int k, double tol);

/// For PSD A, B: if tr(A)/k equals max W_k(A - B), then A ⊥ B.
/// Throws DomainError when A or B is not PSD (min eigenvalue < -tol).
LemmaCheck check_orthogonality_criterion(const ComplexMatrix& a, const ComplexMatrix& b, int k,
                                         double tol);

/// Worst deviations observed over a batch of random matrices for the
/// elementary k-range properties.
struct RangePropertyReport {
  int matrices = 0;
  int cases = 0;                         // (matrix, k) pairs exercised
  double containment_excess = 0.0;       // samples outside [lo, hi]
  double endpoint_error = 0.0;           // boundary_point vs interval endpoints
  double affine_error = 0.0;             // W_k(αI + βA) vs α + βW_k(A)
  double unitary_defect = 0.0;           // support_defect(A, UAU*)
  double compression_excess = 0.0;       // support of VAV* above that of A
  int hermitian_misclassified = 0;       // real-profile test disagreeing with Hermiticity
};

struct RangePropertyTolerances {
  double containment = 1e-9;
  double endpoint = 1e-9;
  double affine = 1e-10;
  double unitary = 1e-8;
  double compression = 1e-9;
};

/// Runs the property battery on `count` random Hermitian matrices of size
/// 2..max_dim (each paired with a non-Hermitian companion for the
/// Hermitian-detection check), over every valid k.
RangePropertyReport check_range_properties(int count, int max_dim, std::uint64_t seed,
                                           int num_angles = kDefaultAngles, int samples = 200);

bool passes(const RangePropertyReport& r, const RangePropertyTolerances& tol = {});

/// Max over random Hermitian A and all k of the endpoint mismatch between
/// (n-k) W_{n-k}(A) and tr(A) - k W_k(A).
double complement_identity_error(int count, int max_dim, std::uint64_t seed);

struct SuiteItem {
  std::string item;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;
};

struct SuiteOptions {
  int trials = 20;
  int num_angles = kDefaultAngles;
  double tol = kDefaultRangeTol;
  int property_matrices = 20;
};

/// Sufficiency of every theorem-valid canonical form, failure of the invalid
/// ones, affine gating, range properties, complement identity, classifier
/// round trips and (for m, n >= 3) the X⊗X example. Deterministic in `seed`.
std::vector<SuiteItem> theorem_suite(const BipartiteShape& shape, std::uint64_t seed,
                                     const SuiteOptions& options = {});

bool all_pass(const std::vector<SuiteItem>& items);

}  // namespace wkp
