#include "wkp/krange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wkp {

namespace {

void check_k(int dim, int k) {
  if (k < 1 || k > dim - 1) {
    throw DomainError("k must satisfy 1 <= k <= dim-1 (got k=" + std::to_string(k) +
                      ", dim=" + std::to_string(dim) + ")");
  }
}

void check_angles(int num_angles) {
  if (num_angles < 8) throw DomainError("num_angles must be >= 8");
}

double grid_angle(int j, int num_angles) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(num_angles);
}

Eigen::MatrixXcd rotated_hermitian_part(const Eigen::MatrixXcd& a, double theta) {
  const Eigen::MatrixXcd b = std::polar(1.0, -theta) * a;
  return 0.5 * (b + b.adjoint());
}

struct SupportPoint {
  double support;
  Complex boundary;
};

SupportPoint support_point(const ComplexMatrix& a, int k, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rotated_hermitian_part(a.mat(), theta));
  if (solver.info() != Eigen::Success) throw NumericError("support_point: solver did not converge");
  // Ascending order from Eigen: the top k live in the last k columns.
  const Eigen::MatrixXcd top = solver.eigenvectors().rightCols(k);
  const Complex b = (top.adjoint() * a.mat() * top).trace() / static_cast<double>(k);
  const double h = solver.eigenvalues().tail(k).sum() / static_cast<double>(k);
  return {h, b};
}

}  // namespace

namespace detail {

double top_k_mean(const Eigen::VectorXd& desc, int k) {
  return desc.head(k).sum() / static_cast<double>(k);
}

double bottom_k_mean(const Eigen::VectorXd& desc, int k) {
  return desc.tail(k).sum() / static_cast<double>(k);
}

}  // namespace detail

KInterval krange_hermitian(const ComplexMatrix& h, int k) {
  check_k(h.dim(), k);
  const HermitianSpectrum spec = eig_hermitian(h);
  const Eigen::Map<const Eigen::VectorXd> desc(spec.eigenvalues.data(),
                                               static_cast<Eigen::Index>(spec.eigenvalues.size()));
  return {detail::bottom_k_mean(desc, k), detail::top_k_mean(desc, k)};
}

double support_value(const ComplexMatrix& a, int k, double theta) {
  check_k(a.dim(), k);
  const Eigen::VectorXd desc =
      detail::hermitian_eigenvalues_desc(rotated_hermitian_part(a.mat(), theta));
  return detail::top_k_mean(desc, k);
}

Complex boundary_point(const ComplexMatrix& a, int k, double theta) {
  check_k(a.dim(), k);
  return support_point(a, k, theta).boundary;
}

SupportProfile krange_profile(const ComplexMatrix& a, int k, int num_angles) {
  check_k(a.dim(), k);
  check_angles(num_angles);
  SupportProfile p;
  p.k = k;
  p.angles.reserve(static_cast<std::size_t>(num_angles));
  p.support.reserve(static_cast<std::size_t>(num_angles));
  p.boundary.reserve(static_cast<std::size_t>(num_angles));
  for (int j = 0; j < num_angles; ++j) {
    const double theta = grid_angle(j, num_angles);
    const SupportPoint sp = support_point(a, k, theta);
    p.angles.push_back(theta);
    p.support.push_back(sp.support);
    p.boundary.push_back(sp.boundary);
  }
  return p;
}

double support_defect(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size()) throw DomainError("support_defect: grids differ in size");
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < h1.size(); ++j) {
    worst = std::max(worst, std::abs(h1[j] - h2[j]));
    scale = std::max({scale, std::abs(h1[j]), std::abs(h2[j])});
  }
  return worst / (1.0 + scale);
}

double support_defect(const SupportProfile& p1, const SupportProfile& p2) {
  if (p1.k != p2.k || p1.num_angles() != p2.num_angles()) {
    throw DomainError("ranges_equal: profiles use different k or angle grids");
  }
  return support_defect(std::span<const double>(p1.support), std::span<const double>(p2.support));
}

bool ranges_equal(const SupportProfile& p1, const SupportProfile& p2, double tol) {
  return support_defect(p1, p2) <= tol;
}

double k_numerical_radius(const ComplexMatrix& a, int k, int num_angles) {
  check_k(a.dim(), k);
  check_angles(num_angles);
  const std::vector<double> h = SpectralSweep(a, num_angles).support(k);
  return *std::max_element(h.begin(), h.end());
}

std::vector<Complex> sample_points(const ComplexMatrix& a, int k, int count, std::uint64_t seed) {
  check_k(a.dim(), k);
  if (count < 1) throw DomainError("sample_points: count must be >= 1");
  Rng rng(seed);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const ComplexMatrix u = random_haar_unitary(a.dim(), rng);
    const Eigen::MatrixXcd x = u.mat().leftCols(k);
    out.push_back((x.adjoint() * a.mat() * x).trace() / static_cast<double>(k));
  }
  return out;
}

SpectralSweep::SpectralSweep(const ComplexMatrix& a, int num_angles)
    : num_angles_(num_angles), dim_(a.dim()) {
  check_angles(num_angles);
  computed_ = (num_angles % 2 == 0) ? num_angles / 2 : num_angles;
  spectra_.resize(computed_, dim_);
  for (int j = 0; j < computed_; ++j) {
    spectra_.row(j) = detail::hermitian_eigenvalues_desc(
                          rotated_hermitian_part(a.mat(), grid_angle(j, num_angles)))
                          .transpose();
  }
}

std::vector<double> SpectralSweep::support(int k) const {
  check_k(dim_, k);
  std::vector<double> h(static_cast<std::size_t>(num_angles_));
  for (int j = 0; j < computed_; ++j) {
    h[static_cast<std::size_t>(j)] = spectra_.row(j).head(k).sum() / static_cast<double>(k);
  }
  // θ + π rotates by -1: the top k of -H are the negated bottom k of H.
  for (int j = computed_; j < num_angles_; ++j) {
    h[static_cast<std::size_t>(j)] =
        -spectra_.row(j - computed_).tail(k).sum() / static_cast<double>(k);
  }
  return h;
}

}  // namespace wkp
