#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wkp/matcore.hpp"

namespace wkp {

inline constexpr int kDefaultAngles = 360;
inline constexpr double kDefaultRangeTol = 1e-8;

/// The real interval W_k(H) of a Hermitian H.
struct KInterval {
  double lo;
  double hi;
};

/// Sampled support function h(θ_j) = max Re(e^{-iθ_j} z) over W_k(A), with a
/// member of W_k(A) on each supporting line. θ_j = 2πj / num_angles.
struct SupportProfile {
  int k = 1;
  std::vector<double> angles;
  std::vector<double> support;
  std::vector<Complex> boundary;

  int num_angles() const { return static_cast<int>(angles.size()); }
};

/// [mean of the k smallest eigenvalues, mean of the k largest].
/// Requires H Hermitian and 1 <= k <= dim-1.
KInterval krange_hermitian(const ComplexMatrix& h, int k);

/// Mean of the k largest eigenvalues of the Hermitian part of e^{-iθ}A.
double support_value(const ComplexMatrix& a, int k, double theta);

/// tr(P A)/k for P the projector onto the top-k eigenvectors of the
/// Hermitian part of e^{-iθ}A. Ties at the k-th eigenvalue resolve in the
/// eigensolver's stable order.
Complex boundary_point(const ComplexMatrix& a, int k, double theta);

SupportProfile krange_profile(const ComplexMatrix& a, int k, int num_angles = kDefaultAngles);

/// Largest support discrepancy on a shared grid, relative to
/// 1 + max(|h1|max, |h2|max). Throws DomainError on mismatched grids.
double support_defect(const SupportProfile& p1, const SupportProfile& p2);

/// support_defect(p1, p2) <= tol. Equal support functions characterize equal
/// compact convex sets; on a grid this is exact up to discretization.
bool ranges_equal(const SupportProfile& p1, const SupportProfile& p2,
                  double tol = kDefaultRangeTol);

/// max_j h(θ_j): a lower bound on w_k(A), within O(|A|/num_angles²) of it.
double k_numerical_radius(const ComplexMatrix& a, int k, int num_angles = kDefaultAngles);

/// tr(X*AX)/k for `count` random isometries X (leading k columns of Haar
/// unitaries). Independent inner oracle: every point lies in W_k(A).
std::vector<Complex> sample_points(const ComplexMatrix& a, int k, int count, std::uint64_t seed);

/// Sorted spectra of the Hermitian parts of e^{-iθ_j}A over the whole grid.
///
/// Eigenvalues only, so supports for every k come out of one sweep. For an
/// even grid the second half is the negated first half, which halves the
/// eigensolver work.
class SpectralSweep {
 public:
  SpectralSweep(const ComplexMatrix& a, int num_angles);

  int num_angles() const { return num_angles_; }
  int dim() const { return dim_; }

  /// h_k(θ_j) for all j; 1 <= k <= dim-1.
  std::vector<double> support(int k) const;

 private:
  int num_angles_;
  int dim_;
  // Row j holds the descending spectrum at θ_j for j < computed_.
  Eigen::MatrixXd spectra_;
  int computed_;
};

/// Relative defect of two support vectors, as in support_defect().
double support_defect(std::span<const double> h1, std::span<const double> h2);

namespace detail {

/// Mean of the k largest entries of a descending vector; k may equal its size.
double top_k_mean(const Eigen::VectorXd& desc, int k);
double bottom_k_mean(const Eigen::VectorXd& desc, int k);

}  // namespace detail

}  // namespace wkp
