#include "wkp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wkp/papersuite.hpp"

namespace wkp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNearCanonical = 1e-6;

ComplexMatrix nearest_unitary(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return ComplexMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

struct Candidate {
  Varphi varphi;
  bool affine;
};

std::vector<Candidate> candidates_for(const BipartiteShape& shape) {
  std::vector<Candidate> out;
  for (Varphi v : kAllVarphi) out.push_back({v, false});
  if (shape.is_half()) {
    for (Varphi v : kAllVarphi) out.push_back({v, true});
  }
  return out;
}

CandidateResult try_candidate(const LinearMapMatrix& phi, const BipartiteShape& shape,
                              Candidate cand, double tol) {
  CandidateResult res{cand.varphi, cand.affine, kInf, kInf, false, std::nullopt};
  // Ψ = (reflection ∘) Φ ∘ varphi⁻¹ should be X -> U X U*.
  LinearMapMatrix psi = compose(phi, varphi_map(cand.varphi, shape));
  if (cand.affine) psi = compose(reflection_map(shape), psi);

  const ComplexMatrix choi = choi_matrix(psi);
  const double skew = (choi.mat() - choi.mat().adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol * (1.0 + max_abs(choi))) return res;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(choi).mat());
  if (solver.info() != Eigen::Success) return res;
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  const Eigen::Index last = ev.size() - 1;
  const double tr = ev.sum();
  if (!(tr > 0.0)) return res;
  res.choi_gap = std::max(std::abs(ev(last - 1)), std::abs(ev(0))) / tr;
  if (res.choi_gap > tol) return res;

  // Top eigenvector w = vec(U) / |vec(U)| with |vec(U)|² = λ_max.
  const int d = shape.dim();
  const Eigen::VectorXcd w = std::sqrt(ev(last)) * solver.eigenvectors().col(last);
  const ComplexMatrix u = normalize_phase(nearest_unitary(Eigen::Map<const Eigen::MatrixXcd>(w.data(), d, d)));

  const LinearMapMatrix rebuilt = build_canonical({cand.varphi, u, cand.affine, shape});
  res.residual = (phi.matrix().mat() - rebuilt.matrix().mat()).cwiseAbs().maxCoeff();
  res.unitary = u;
  res.matched = res.residual <= tol;
  return res;
}

}  // namespace

std::vector<TrialInput> preserver_trials(int m, int n, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  std::vector<TrialInput> out;
  out.reserve(static_cast<std::size_t>(trials));
  if (m >= 3 && n >= 3) {
    auto [a, b] = example1_matrices(m, n);
    out.push_back({std::move(a), std::move(b), "example1"});
  } else {
    out.push_back({ComplexMatrix::unit(m, 0, 0), ComplexMatrix::unit(n, 0, 0), "matrix_units"});
  }
  Rng rng(seed);
  for (int t = 1; t < trials; ++t) {
    if (t % 2 == 1) {
      ComplexMatrix a = random_hermitian(m, rng);
      out.push_back({std::move(a), random_hermitian(n, rng), "hermitian"});
    } else {
      ComplexMatrix a = random_complex(m, rng);
      out.push_back({std::move(a), random_complex(n, rng), "complex"});
    }
  }
  return out;
}

PreserverVerifier::PreserverVerifier(int m, int n, int trials, int num_angles, std::uint64_t seed)
    : m_(m), n_(n), num_angles_(num_angles), inputs_(preserver_trials(m, n, trials, seed)) {
  products_.reserve(inputs_.size());
  reference_.reserve(inputs_.size());
  for (const TrialInput& in : inputs_) {
    products_.push_back(kron(in.a, in.b));
    reference_.emplace_back(products_.back(), num_angles);
  }
}

VerificationReport PreserverVerifier::verify(const LinearMapMatrix& phi, int k, double tol,
                                             bool stop_at_first_failure) const {
  if (phi.shape().m() != m_ || phi.shape().n() != n_) {
    throw ShapeError("verify_preserver: map shape does not match the verifier's (m, n)");
  }
  VerificationReport report;
  report.tol = tol;
  for (std::size_t t = 0; t < inputs_.size(); ++t) {
    const std::vector<double> expected = reference_[t].support(k);
    const SpectralSweep image(apply_map(phi, products_[t]), num_angles_);
    const std::vector<double> actual = image.support(k);
    const double defect = support_defect(expected, actual);
    report.trials = static_cast<int>(t) + 1;
    report.max_support_defect = std::max(report.max_support_defect, defect);
    if (defect > tol) {
      std::size_t worst = 0;
      for (std::size_t j = 1; j < expected.size(); ++j) {
        if (std::abs(expected[j] - actual[j]) > std::abs(expected[worst] - actual[worst])) worst = j;
      }
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(worst) / num_angles_;
      report.witnesses.push_back({inputs_[t].a, inputs_[t].b, static_cast<int>(t), theta, defect});
      if (stop_at_first_failure) break;
    }
  }
  return report;
}

VerificationReport verify_preserver(const LinearMapMatrix& phi, const BipartiteShape& shape,
                                    const VerifyOptions& options) {
  const PreserverVerifier verifier(shape.m(), shape.n(), options.trials, options.num_angles,
                                   options.seed);
  return verifier.verify(phi, shape.k(), options.tol, options.stop_at_first_failure);
}

std::string_view to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::Classified:
      return "classified";
    case ClassVerdict::NotAPreserver:
      return "not_a_preserver";
    case ClassVerdict::Ambiguous:
      return "ambiguous";
  }
  return "not_a_preserver";
}

ComplexMatrix normalize_phase(const ComplexMatrix& u) {
  const int d = u.dim();
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (std::abs(u(i, j)) > best) {
        best = std::abs(u(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  if (best == 0.0) return u;
  const Complex phase = std::conj(u(bi, bj)) / best;
  Eigen::MatrixXcd out = phase * u.mat();
  out(bi, bj) = Complex(best, 0.0);
  return ComplexMatrix(std::move(out));
}

ClassificationReport classify_preserver(const LinearMapMatrix& phi, const BipartiteShape& shape,
                                        double tol) {
  if (phi.shape().m() != shape.m() || phi.shape().n() != shape.n()) {
    throw ShapeError("classify_preserver: map shape does not match (m, n)");
  }
  ClassificationReport report;
  report.tol = tol;
  for (const Candidate& cand : candidates_for(shape)) {
    report.candidates.push_back(try_candidate(phi, shape, cand, tol));
  }

  std::vector<const CandidateResult*> hits;
  for (const CandidateResult& c : report.candidates) {
    if (c.matched) hits.push_back(&c);
  }
  if (hits.empty()) {
    report.verdict = ClassVerdict::NotAPreserver;
    return report;
  }
  const CandidateResult& first = *hits.front();
  report.matched = CanonicalMatch{first.varphi, first.affine, *first.unitary, first.residual};
  report.verdict = ClassVerdict::Classified;
  const LinearMapMatrix ref = build_canonical({first.varphi, *first.unitary, first.affine, shape});
  for (std::size_t i = 1; i < hits.size(); ++i) {
    const LinearMapMatrix other = build_canonical({hits[i]->varphi, *hits[i]->unitary, hits[i]->affine, shape});
    if ((ref.matrix().mat() - other.matrix().mat()).cwiseAbs().maxCoeff() > tol) {
      report.verdict = ClassVerdict::Ambiguous;
      break;
    }
  }
  return report;
}

LinearMapMatrix random_unital_trace_preserving_map(const BipartiteShape& shape, Rng& rng) {
  const int d = shape.dim();
  const int dd = d * d;

  const Eigen::MatrixXcd g = random_complex(dd, rng).mat();
  Eigen::MatrixXcd c = g * g.adjoint();
  c *= static_cast<double>(d) / c.trace().real();

  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const double w = weight(rng);
  const ComplexMatrix u = random_haar_unitary(d, rng);
  const ComplexMatrix conj_choi =
      choi_matrix(build_canonical({Varphi::Identity, u, false, shape}));
  c = w * c + (1.0 - w) * conj_choi.mat();

  // Partial traces; Choi index p*d + a carries input p and output a.
  Eigen::MatrixXcd tr_out = Eigen::MatrixXcd::Zero(d, d);  // lives on the input factor
  Eigen::MatrixXcd tr_in = Eigen::MatrixXcd::Zero(d, d);   // lives on the output factor
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      for (int a = 0; a < d; ++a) {
        tr_out(p, q) += c(p * d + a, q * d + a);
        tr_in(p, q) += c(a * d + p, a * d + q);
      }
    }
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const ComplexMatrix a_in(tr_out - id);
  const ComplexMatrix b_out(tr_in - id);
  const double excess = c.trace().real() - d;
  c -= kron(a_in, ComplexMatrix(id)).mat() / static_cast<double>(d);
  c -= kron(ComplexMatrix(id), b_out).mat() / static_cast<double>(d);
  c += (excess / static_cast<double>(dd)) * Eigen::MatrixXcd::Identity(dd, dd);
  // Restore exact Hermiticity lost to rounding.
  c = 0.5 * (c + c.adjoint()).eval();
  return map_from_choi(ComplexMatrix(std::move(c)), shape);
}

FalsifySummary falsify_random(const BipartiteShape& shape, int count, std::uint64_t seed,
                              double tol, int trials, int num_angles,
                              const std::function<void(int, const LinearMapMatrix&)>& on_map) {
  if (count < 0) throw DomainError("falsify_random: count must be >= 0");
  FalsifySummary summary;
  summary.count = count;
  if (count == 0) return summary;

  const PreserverVerifier verifier(shape.m(), shape.n(), trials, num_angles, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < count; ++i) {
    LinearMapMatrix phi = random_unital_trace_preserving_map(shape, rng);
    while (classify_preserver(phi, shape, kNearCanonical).verdict != ClassVerdict::NotAPreserver) {
      ++summary.rejected_near_canonical;
      phi = random_unital_trace_preserving_map(shape, rng);
    }
    if (on_map) on_map(i, phi);
    const VerificationReport report = verifier.verify(phi, shape.k(), tol, true);
    summary.defects.push_back(report.max_support_defect);
    if (report.pass()) {
      ++summary.passes;
      if (classify_preserver(phi, shape, tol).verdict != ClassVerdict::NotAPreserver) {
        ++summary.passes_classified_canonical;
      }
    }
  }
  return summary;
}

}  // namespace wkp
