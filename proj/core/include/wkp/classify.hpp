#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wkp/krange.hpp"
#include "wkp/maps.hpp"

namespace wkp {

/// Seed used whenever a caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 1234567;

/// A pair of tensor factors fed to a candidate preserver.
struct TrialInput {
  ComplexMatrix a;
  ComplexMatrix b;
  std::string origin;  // "example1", "matrix_units", "hermitian" or "complex"
};

/// Deterministic factor pairs for verification. Trial 0 is the example1_matrices() pair
/// when m, n >= 3 and (E_11, E_11) otherwise; afterwards random Hermitian and
/// random complex pairs alternate.
std::vector<TrialInput> preserver_trials(int m, int n, int trials, std::uint64_t seed);

struct Witness {
  ComplexMatrix a;
  ComplexMatrix b;
  int trial;
  double theta;
  double defect;
};

struct VerificationReport {
  int trials = 0;
  double tol = 0.0;
  double max_support_defect = 0.0;
  std::vector<Witness> witnesses;

  bool pass() const { return max_support_defect <= tol; }
};

struct VerifyOptions {
  int trials = 50;
  int num_angles = kDefaultAngles;
  double tol = kDefaultRangeTol;
  std::uint64_t seed = kDefaultSeed;
  /// Stop after the first failing trial (used when only the verdict matters).
  bool stop_at_first_failure = false;
};

/// Caches the trial inputs and the spectral sweeps of every A⊗B so that many
/// maps on the same (m, n) can be checked against one reference set.
class PreserverVerifier {
 public:
  PreserverVerifier(int m, int n, int trials, int num_angles, std::uint64_t seed);

  /// Compares support functions of W_k(A⊗B) and W_k(Φ(A⊗B)) on every trial.
  /// Defects are relative, as in support_defect().
  VerificationReport verify(const LinearMapMatrix& phi, int k, double tol,
                            bool stop_at_first_failure = false) const;

  const std::vector<TrialInput>& inputs() const { return inputs_; }

 private:
  int m_;
  int n_;
  int num_angles_;
  std::vector<TrialInput> inputs_;
  std::vector<ComplexMatrix> products_;
  std::vector<SpectralSweep> reference_;
};

VerificationReport verify_preserver(const LinearMapMatrix& phi, const BipartiteShape& shape,
                                    const VerifyOptions& options = {});

enum class ClassVerdict { Classified, NotAPreserver, Ambiguous };

std::string_view to_string(ClassVerdict v);

struct CandidateResult {
  Varphi varphi;
  bool affine;
  /// max(|λ_2|, |λ_min|) / |tr| of the Choi matrix after undoing the
  /// candidate; +inf when that Choi matrix is not Hermitian.
  double choi_gap;
  /// Max entry of Φ - rebuilt candidate on all matrix units; +inf if the
  /// rank test already failed.
  double residual;
  bool matched;
  std::optional<ComplexMatrix> unitary;
};

struct CanonicalMatch {
  Varphi varphi;
  bool affine;
  ComplexMatrix unitary;
  double residual;
};

struct ClassificationReport {
  double tol = 0.0;
  std::vector<CandidateResult> candidates;
  std::optional<CanonicalMatch> matched;
  ClassVerdict verdict = ClassVerdict::NotAPreserver;
};

/// Tries every (varphi, affine) candidate; affine ones only when mn = 2k.
/// For each, undoes varphi (and the reflection), tests that the Choi matrix
/// is rank-one PSD, reads U off the top eigenvector and checks the rebuilt
/// map entrywise.
ClassificationReport classify_preserver(const LinearMapMatrix& phi, const BipartiteShape& shape,
                                        double tol = kDefaultRangeTol);

/// Gauge-fixes a unitary: the first entry of largest modulus becomes real
/// positive.
ComplexMatrix normalize_phase(const ComplexMatrix& u);

/// Random unital, trace-preserving, Hermiticity-preserving map: a Wishart
/// Choi matrix mixed with a random unitary conjugation, then projected onto
/// the unital trace-preserving affine subspace.
LinearMapMatrix random_unital_trace_preserving_map(const BipartiteShape& shape, Rng& rng);

struct FalsifySummary {
  int count = 0;
  int passes = 0;                       // maps whose support defect stayed below tol
  int passes_classified_canonical = 0;  // of those, maps the classifier calls canonical
  int rejected_near_canonical = 0;      // draws discarded for being within 1e-6 of a canonical form
  std::vector<double> defects;
};

/// Draws `count` non-canonical maps and runs the verifier on each; `on_map`
/// sees every accepted draw in order.
FalsifySummary falsify_random(const BipartiteShape& shape, int count, std::uint64_t seed,
                              double tol = kDefaultRangeTol, int trials = 50,
                              int num_angles = kDefaultAngles,
                              const std::function<void(int, const LinearMapMatrix&)>& on_map = {});

}  // namespace wkp
