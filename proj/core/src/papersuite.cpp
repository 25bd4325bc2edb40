#include "wkp/papersuite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wkp {

namespace {

std::vector<double> with_zero_padding(std::vector<double> nonzero, int dim) {
  nonzero.resize(static_cast<std::size_t>(dim), 0.0);
  std::sort(nonzero.begin(), nonzero.end(), std::greater<>());
  return nonzero;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Eigen::VectorXd descending(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double scale_of(const ComplexMatrix& a) { return 1.0 + max_abs(a); }

int random_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double random_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXcd leading_rows_of_unitary(int rows, int dim, Rng& rng) {
  return random_haar_unitary(dim, rng).mat().topRows(rows);
}

double support_excess(const std::vector<double>& inner, const std::vector<double>& outer) {
  double worst = 0.0;
  for (std::size_t j = 0; j < inner.size(); ++j) worst = std::max(worst, inner[j] - outer[j]);
  return worst;
}

std::string form_name(Varphi v, bool affine) {
  std::string s(to_string(v));
  if (affine) s += "+affine";
  return s;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> example1_matrices(int m, int n) {
  if (m < 3 || n < 3) throw DomainError("example1_matrices: needs m, n >= 3");
  auto padded = [](int dim) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    x(0, 1) = 3.0;
    x(1, 2) = 1.0;
    return ComplexMatrix(std::move(x));
  };
  return {padded(m), padded(n)};
}

Example1Report check_example1(int m, int n, double tol) {
  const auto [a, b] = example1_matrices(m, n);
  const ComplexMatrix ab = kron(a, b);
  const ComplexMatrix abt = kron(a, transpose(b));
  const ComplexMatrix herm_ab = hermitian_part(ab);
  const ComplexMatrix herm_abt = hermitian_part(abt);
  const int dim = m * n;

  Example1Report r;
  r.m = m;
  r.n = n;
  r.tol = tol;
  r.spectrum_ab = eig_hermitian(herm_ab).eigenvalues;
  r.spectrum_abt = eig_hermitian(herm_abt).eigenvalues;

  // Nonzero parts: a 3-chain with weights (9, 1) plus two 2x2 blocks of 3 for
  // A⊗B; a 3-chain (3, 3) plus 2x2 blocks of 9 and 1 for A⊗Bᵗ. Each chain also
  // contributes one zero, so mn - 6 zeros in total.
  const double s41 = std::sqrt(41.0 / 2.0);
  const double s9 = std::sqrt(9.0 / 2.0);
  r.expected_ab = with_zero_padding({s41, 1.5, 1.5, -1.5, -1.5, -s41}, dim);
  r.expected_abt = with_zero_padding({4.5, s9, 0.5, -0.5, -s9, -4.5}, dim);
  r.spectrum_error_ab = max_diff(r.spectrum_ab, r.expected_ab);
  r.spectrum_error_abt = max_diff(r.spectrum_abt, r.expected_abt);

  const Eigen::VectorXd sab = descending(r.spectrum_ab);
  const Eigen::VectorXd sabt = descending(r.spectrum_abt);
  bool gaps_ok = true;
  for (int k = 1; k <= dim - 1; ++k) {
    const double gap = std::max(std::abs(detail::top_k_mean(sab, k) - detail::top_k_mean(sabt, k)),
                                std::abs(detail::bottom_k_mean(sab, k) - detail::bottom_k_mean(sabt, k)));
    r.re_gap_per_k.push_back(gap);
    gaps_ok = gaps_ok && gap > kExample1GapThreshold;
  }
  r.pass = r.spectrum_error_ab <= tol && r.spectrum_error_abt <= tol && gaps_ok;
  return r;
}

LemmaCheck check_block_split(const ComplexMatrix& h, int k, double tol) {
  const int dim = h.dim();
  if (k < 1 || k > dim) throw DomainError("check_block_split: k must be in [1, dim]");
  const HermitianSpectrum spec = eig_hermitian(h);
  const double scale = scale_of(h);

  double diag_sum = 0.0;
  double top_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    diag_sum += h(i, i).real();
    top_sum += spec.eigenvalues[static_cast<std::size_t>(i)];
  }
  LemmaCheck out;
  out.hypothesis_gap = std::abs(diag_sum - top_sum);
  out.hypothesis = out.hypothesis_gap <= tol * scale;
  if (!out.hypothesis) {
    out.vacuous = true;
    out.holds = true;
    return out;
  }

  double off = 0.0;
  if (k < dim) off = h.mat().block(0, k, k, dim - k).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd lead = h.mat().topLeftCorner(k, k);
  const std::vector<double> lead_spec = eig_hermitian(ComplexMatrix(lead)).eigenvalues;
  double spec_err = 0.0;
  for (int i = 0; i < k; ++i) {
    spec_err = std::max(spec_err, std::abs(lead_spec[static_cast<std::size_t>(i)] -
                                           spec.eigenvalues[static_cast<std::size_t>(i)]));
  }
  out.conclusion_defect = std::max(off, spec_err);
  out.conclusion = out.conclusion_defect <= tol * scale;
  out.holds = out.conclusion;
  return out;
}

LemmaCheck check_orthogonality_criterion(const ComplexMatrix& a, const ComplexMatrix& b, int k,
                                         double tol) {
  const int dim = a.dim();
  if (b.dim() != dim) throw ShapeError("check_orthogonality_criterion: dimension mismatch");
  if (k < 1 || k > dim) throw DomainError("check_orthogonality_criterion: k must be in [1, dim]");
  for (const ComplexMatrix* p : {&a, &b}) {
    const HermitianSpectrum s = eig_hermitian(*p);
    if (s.eigenvalues.back() < -tol * scale_of(*p)) {
      throw DomainError("check_orthogonality_criterion: input is not positive semidefinite");
    }
  }
  const double scale = std::max(scale_of(a), scale_of(b));
  const std::vector<double> diff = eig_hermitian(a - b).eigenvalues;
  const double hi = detail::top_k_mean(descending(diff), k);

  LemmaCheck out;
  out.hypothesis_gap = std::abs(trace(a).real() / k - hi);
  out.hypothesis = out.hypothesis_gap <= tol * scale;
  if (!out.hypothesis) {
    out.vacuous = true;
    out.holds = true;
    return out;
  }
  out.conclusion_defect = std::max((a.mat() * b.mat().adjoint()).cwiseAbs().maxCoeff(),
                                   (a.mat().adjoint() * b.mat()).cwiseAbs().maxCoeff());
  out.conclusion = is_orthogonal_pair(a, b, tol);
  out.holds = out.conclusion;
  return out;
}

RangePropertyReport check_range_properties(int count, int max_dim, std::uint64_t seed,
                                           int num_angles, int samples) {
  if (max_dim < 2) throw DomainError("check_range_properties: max_dim must be >= 2");
  Rng rng(seed);
  RangePropertyReport r;
  r.matrices = count;
  for (int i = 0; i < count; ++i) {
    const int dim = random_int(rng, 2, max_dim);
    const ComplexMatrix h = random_hermitian(dim, rng);
    const ComplexMatrix nonherm = random_complex(dim, rng);
    const ComplexMatrix u = random_haar_unitary(dim, rng);
    const ComplexMatrix conj_h = u * h * adjoint(u);
    const double tol_im = 1e-9;

    for (int k = 1; k <= dim - 1; ++k) {
      ++r.cases;
      const KInterval iv = krange_hermitian(h, k);

      for (const Complex z : sample_points(h, k, samples, rng())) {
        r.containment_excess = std::max(
            {r.containment_excess, iv.lo - z.real(), z.real() - iv.hi, std::abs(z.imag())});
      }

      r.endpoint_error = std::max({r.endpoint_error, std::abs(boundary_point(h, k, 0.0) - iv.hi),
                                   std::abs(boundary_point(h, k, std::numbers::pi) - iv.lo)});

      // Real α, β on the interval; complex α, β through the support function.
      const double alpha = random_real(rng, -3.0, 3.0);
      const double beta = random_real(rng, 0.2, 3.0) * (rng() % 2 == 0 ? 1.0 : -1.0);
      const ComplexMatrix shifted(alpha * Eigen::MatrixXcd::Identity(dim, dim) + beta * h.mat());
      const KInterval sv = krange_hermitian(shifted, k);
      const double lo = alpha + beta * (beta > 0 ? iv.lo : iv.hi);
      const double hi = alpha + beta * (beta > 0 ? iv.hi : iv.lo);
      r.affine_error = std::max({r.affine_error, std::abs(sv.lo - lo), std::abs(sv.hi - hi)});

      const Complex ca(random_real(rng, -2.0, 2.0), random_real(rng, -2.0, 2.0));
      const Complex cb = std::polar(random_real(rng, 0.2, 2.0), random_real(rng, -3.0, 3.0));
      const ComplexMatrix cshift(ca * Eigen::MatrixXcd::Identity(dim, dim) + cb * nonherm.mat());
      for (int t = 0; t < 3; ++t) {
        const double theta = random_real(rng, 0.0, 2.0 * std::numbers::pi);
        const double lhs = support_value(cshift, k, theta);
        const double rhs = (std::polar(1.0, -theta) * ca).real() +
                           std::abs(cb) * support_value(nonherm, k, theta - std::arg(cb));
        r.affine_error = std::max(r.affine_error, std::abs(lhs - rhs));
      }

      const SupportProfile ph = krange_profile(h, k, num_angles);
      r.unitary_defect = std::max(r.unitary_defect, support_defect(ph, krange_profile(conj_h, k, num_angles)));

      // Isometry V (s x dim, VV* = I_s) with s > k so W_k(VAV*) is a range.
      const int s = random_int(rng, k + 1, dim);
      const Eigen::MatrixXcd v = leading_rows_of_unitary(s, dim, rng);
      for (const ComplexMatrix* a : {&h, &nonherm}) {
        const SpectralSweep full(*a, num_angles);
        const SpectralSweep comp(ComplexMatrix(v * a->mat() * v.adjoint()), num_angles);
        r.compression_excess =
            std::max(r.compression_excess, support_excess(comp.support(k), full.support(k)));
      }

      const SupportProfile pn = krange_profile(nonherm, k, num_angles);
      auto max_imag = [](const SupportProfile& p) {
        double worst = 0.0;
        for (const Complex z : p.boundary) worst = std::max(worst, std::abs(z.imag()));
        return worst;
      };
      if (max_imag(ph) > tol_im * scale_of(h)) ++r.hermitian_misclassified;
      if (max_imag(pn) <= tol_im * scale_of(nonherm)) ++r.hermitian_misclassified;
    }
  }
  return r;
}

bool passes(const RangePropertyReport& r, const RangePropertyTolerances& tol) {
  return r.containment_excess <= tol.containment && r.endpoint_error <= tol.endpoint &&
         r.affine_error <= tol.affine && r.unitary_defect <= tol.unitary &&
         r.compression_excess <= tol.compression && r.hermitian_misclassified == 0;
}

double complement_identity_error(int count, int max_dim, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int n = random_int(rng, 2, max_dim);
    const ComplexMatrix a = random_hermitian(n, rng);
    const double tr = trace(a).real();
    for (int k = 1; k <= n - 1; ++k) {
      const KInterval wk = krange_hermitian(a, k);
      const KInterval wc = krange_hermitian(a, n - k);
      worst = std::max({worst, std::abs((n - k) * wc.lo - (tr - k * wk.hi)),
                        std::abs((n - k) * wc.hi - (tr - k * wk.lo))});
    }
  }
  return worst;
}

std::vector<SuiteItem> theorem_suite(const BipartiteShape& shape, std::uint64_t seed,
                                     const SuiteOptions& options) {
  std::vector<SuiteItem> items;
  Rng rng(seed);
  const PreserverVerifier verifier(shape.m(), shape.n(), options.trials, options.num_angles, seed);

  double worst_round_trip = 0.0;
  bool round_trip_ok = true;
  for (const bool affine : {false, true}) {
    if (affine && !shape.is_half()) continue;
    for (const Varphi v : kAllVarphi) {
      const CanonicalFormSpec spec{v, random_haar_unitary(shape.dim(), rng), affine, shape};
      const LinearMapMatrix phi = build_canonical(spec);
      const VerificationReport rep = verifier.verify(phi, shape.k(), options.tol);
      SuiteItem it;
      it.metrics = {{"max_support_defect", rep.max_support_defect},
                    {"trials", static_cast<double>(rep.trials)}};
      if (spec.theorem_valid()) {
        it.item = "sufficiency/" + form_name(v, affine);
        it.pass = rep.pass();

        const ClassificationReport cls = classify_preserver(phi, shape, options.tol);
        if (cls.verdict == ClassVerdict::Classified) {
          const LinearMapMatrix rebuilt =
              build_canonical({cls.matched->varphi, cls.matched->unitary, cls.matched->affine, shape});
          const double diff =
              (rebuilt.matrix().mat() - phi.matrix().mat()).cwiseAbs().maxCoeff();
          worst_round_trip = std::max(worst_round_trip, diff);
          round_trip_ok = round_trip_ok && diff <= options.tol;
        } else {
          round_trip_ok = false;
        }
      } else {
        it.item = "necessity/" + form_name(v, affine);
        it.pass = !rep.pass();
        if (!rep.witnesses.empty()) {
          it.metrics.emplace_back("first_witness_trial", rep.witnesses.front().trial);
          it.note = "first witness: " + verifier.inputs()[static_cast<std::size_t>(rep.witnesses.front().trial)].origin;
        }
      }
      items.push_back(std::move(it));
    }
  }

  if (!shape.is_half()) {
    SuiteItem gate{"necessity/affine_gating", false, {}, ""};
    try {
      build_canonical({Varphi::Identity, ComplexMatrix::identity(shape.dim()), true, shape});
      gate.note = "affine form was built although mn != 2k";
    } catch (const DomainError&) {
      gate.pass = true;
      gate.note = "affine form rejected: mn != 2k";
    }
    items.push_back(std::move(gate));
  }

  items.push_back({"classifier/round_trip", round_trip_ok, {{"max_rebuild_error", worst_round_trip}}, ""});

  const RangePropertyReport props =
      check_range_properties(options.property_matrices, std::min(shape.dim(), 8), seed + 1,
                             options.num_angles, 50);
  items.push_back({"range_properties",
                   passes(props),
                   {{"cases", static_cast<double>(props.cases)},
                    {"containment_excess", props.containment_excess},
                    {"endpoint_error", props.endpoint_error},
                    {"affine_error", props.affine_error},
                    {"unitary_defect", props.unitary_defect},
                    {"compression_excess", props.compression_excess},
                    {"hermitian_misclassified", static_cast<double>(props.hermitian_misclassified)}},
                   ""});

  const double comp_err = complement_identity_error(options.property_matrices, 8, seed + 2);
  items.push_back({"complement_identity", comp_err <= 1e-10, {{"max_error", comp_err}}, ""});

  if (shape.m() >= 3 && shape.n() >= 3) {
    const Example1Report ex = check_example1(shape.m(), shape.n());
    const double min_gap = *std::min_element(ex.re_gap_per_k.begin(), ex.re_gap_per_k.end());
    items.push_back({"example1",
                     ex.pass,
                     {{"spectrum_error_ab", ex.spectrum_error_ab},
                      {"spectrum_error_abt", ex.spectrum_error_abt},
                      {"min_re_gap", min_gap}},
                     ""});
  }
  return items;
}

bool all_pass(const std::vector<SuiteItem>& items) {
  return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.pass; });
}

}  // namespace wkp
