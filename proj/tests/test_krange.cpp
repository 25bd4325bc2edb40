#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wkp/krange.hpp"
#include "wkp/papersuite.hpp"

namespace wkp {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

TEST(KrangeHermitian, DiagonalExample) {
  const ComplexMatrix d = ComplexMatrix::diagonal({3.0, 1.0, 0.0, -1.0});
  const KInterval iv = krange_hermitian(d, 2);
  EXPECT_NEAR(iv.lo, -0.5, 1e-12);
  EXPECT_NEAR(iv.hi, 2.0, 1e-12);
}

TEST(KrangeHermitian, AgreesWithIsometryOracle) {
  const ComplexMatrix d = ComplexMatrix::diagonal({3.0, 1.0, 0.0, -1.0});
  const auto hi = testing::max_over_isometries(d.mat(), 2, 0.0, 100000, 1);
  const auto lo = testing::max_over_isometries(d.mat(), 2, kPi, 100000, 2);
  // Random isometries never leave the interval...
  EXPECT_LE(hi.best_sample, 2.0 + 1e-12);
  EXPECT_LE(lo.best_sample, 0.5 + 1e-12);
  // ...and get close to both ends; refinement reaches them.
  EXPECT_GT(hi.best_sample, 2.0 - 0.15);
  EXPECT_GT(lo.best_sample, 0.5 - 0.15);
  EXPECT_NEAR(hi.refined, krange_hermitian(d, 2).hi, 1e-9);
  EXPECT_NEAR(-lo.refined, krange_hermitian(d, 2).lo, 1e-9);
}

TEST(KrangeHermitian, RandomMatricesAgainstOracle) {
  Rng rng(404);
  for (int rep = 0; rep < 6; ++rep) {
    const int d = 3 + rep % 4;
    const ComplexMatrix h = random_hermitian(d, rng);
    for (int k = 1; k < d; ++k) {
      const KInterval iv = krange_hermitian(h, k);
      const auto hi = testing::max_over_isometries(h.mat(), k, 0.0, 200, 10 + k);
      const auto lo = testing::max_over_isometries(h.mat(), k, kPi, 200, 20 + k);
      EXPECT_NEAR(hi.refined, iv.hi, 1e-8) << d << ' ' << k;
      EXPECT_NEAR(-lo.refined, iv.lo, 1e-8) << d << ' ' << k;
    }
  }
}

TEST(KrangeHermitian, MatrixUnitAndIdentity) {
  const ComplexMatrix e = kron(ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 0, 0));
  for (int k = 1; k <= 3; ++k) {
    const KInterval iv = krange_hermitian(e, k);
    EXPECT_NEAR(iv.lo, 0.0, 1e-14);
    EXPECT_NEAR(iv.hi, 1.0 / k, 1e-14);
    const KInterval id = krange_hermitian(ComplexMatrix::identity(4), k);
    EXPECT_NEAR(id.lo, 1.0, 1e-14);
    EXPECT_NEAR(id.hi, 1.0, 1e-14);
  }
}

TEST(KrangeHermitian, RejectsBadK) {
  const ComplexMatrix h = ComplexMatrix::identity(3);
  EXPECT_THROW(krange_hermitian(h, 0), DomainError);
  EXPECT_THROW(krange_hermitian(h, 3), DomainError);
  EXPECT_THROW(krange_hermitian(ComplexMatrix::unit(3, 0, 1), 1), DomainError);
}

TEST(SupportValue, RotatedDiagonal) {
  const ComplexMatrix d = ComplexMatrix::diagonal({I, -I});
  EXPECT_NEAR(support_value(d, 1, kPi / 2), 1.0, 1e-14);
  EXPECT_NEAR(support_value(d, 1, 0.0), 0.0, 1e-14);
  EXPECT_NEAR(support_value(d, 1, -kPi / 2), 1.0, 1e-14);
}

TEST(SupportValue, ExampleTensorAtZero) {
  const auto [a, b] = example1_matrices(3, 3);
  EXPECT_NEAR(support_value(kron(a, b), 1, 0.0), std::sqrt(41.0 / 2.0), 1e-12);
  EXPECT_NEAR(support_value(kron(a, transpose(b)), 1, 0.0), 4.5, 1e-12);
}

TEST(SupportValue, MatchesOracleForNonHermitian) {
  const ComplexMatrix a = random_complex(4, std::uint64_t{55});
  for (int k = 1; k <= 3; ++k) {
    for (double theta : {0.0, 0.7, 2.0, 4.1}) {
      const auto o = testing::max_over_isometries(a.mat(), k, theta, 200, 99);
      EXPECT_NEAR(support_value(a, k, theta), o.refined, 1e-9);
      EXPECT_LE(o.best_sample, support_value(a, k, theta) + 1e-12);
    }
  }
}

TEST(Profile, ExampleDifferenceAtZero) {
  const auto [a, b] = example1_matrices(3, 3);
  const SupportProfile p = krange_profile(kron(a, b), 2);
  const SupportProfile q = krange_profile(kron(a, transpose(b)), 2);
  const double expected = std::abs(std::sqrt(41.0 / 2.0) + 1.5 - (4.5 + std::sqrt(4.5))) / 2.0;
  EXPECT_NEAR(std::abs(p.support[0] - q.support[0]), expected, 1e-12);
  EXPECT_GT(expected, 0.1);
}

TEST(Profile, ShapeAndBoundaryConsistency) {
  const ComplexMatrix a = random_complex(5, std::uint64_t{6});
  const SupportProfile p = krange_profile(a, 2, 64);
  ASSERT_EQ(p.num_angles(), 64);
  EXPECT_EQ(p.k, 2);
  for (int j = 0; j < 64; ++j) {
    const auto i = static_cast<std::size_t>(j);
    EXPECT_NEAR(p.angles[i], 2.0 * kPi * j / 64.0, 1e-15);
    // The boundary point attains the support value in its own direction.
    EXPECT_NEAR((std::polar(1.0, -p.angles[i]) * p.boundary[i]).real(), p.support[i], 1e-10);
  }
  EXPECT_THROW(krange_profile(a, 2, 4), DomainError);
}

TEST(Profile, SweepMatchesDirectEvaluation) {
  const ComplexMatrix a = random_complex(6, std::uint64_t{12});
  for (int angles : {9, 10, 360}) {
    const SpectralSweep sweep(a, angles);
    for (int k = 1; k < 6; ++k) {
      const std::vector<double> fast = sweep.support(k);
      const SupportProfile slow = krange_profile(a, k, angles);
      for (std::size_t j = 0; j < fast.size(); ++j) EXPECT_NEAR(fast[j], slow.support[j], 1e-12);
    }
  }
}

TEST(RangesEqual, UnitarySimilarity) {
  Rng rng(17);
  const ComplexMatrix a = random_complex(6, rng);
  const ComplexMatrix u = random_haar_unitary(6, rng);
  for (int k = 1; k < 6; ++k) {
    EXPECT_TRUE(ranges_equal(krange_profile(a, k), krange_profile(u * a * adjoint(u), k)));
  }
}

TEST(RangesEqual, ExampleTensorsDifferForEveryK) {
  const auto [a, b] = example1_matrices(3, 3);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_FALSE(ranges_equal(krange_profile(kron(a, b), k), krange_profile(kron(a, transpose(b)), k)))
        << "k=" << k;
  }
}

TEST(RangesEqual, MismatchedGridsThrow) {
  const ComplexMatrix a = ComplexMatrix::identity(3);
  EXPECT_THROW(support_defect(krange_profile(a, 1, 8), krange_profile(a, 1, 16)), DomainError);
  EXPECT_THROW(support_defect(krange_profile(a, 1, 8), krange_profile(a, 2, 8)), DomainError);
}

TEST(SupportDefect, RelativeScale) {
  const std::vector<double> h1{1.0, 2.0, 3.0};
  const std::vector<double> h2{1.0, 2.5, 3.0};
  EXPECT_NEAR(support_defect(h1, h2), 0.5 / 4.0, 1e-15);
  EXPECT_EQ(support_defect(h1, h1), 0.0);
}

TEST(Radius, KnownCases) {
  EXPECT_NEAR(k_numerical_radius(ComplexMatrix::identity(4), 2), 1.0, 1e-14);
  EXPECT_NEAR(k_numerical_radius(ComplexMatrix::diagonal({3.0, 1.0, 0.0, -1.0}), 2), 2.0, 1e-14);
  // W_1 of a 2x2 nilpotent Jordan block is the disc of radius 1/2.
  EXPECT_NEAR(k_numerical_radius(ComplexMatrix::unit(2, 0, 1), 1), 0.5, 1e-14);
  // W_k of a normal matrix: radius of a rotated diagonal.
  const ComplexMatrix d = ComplexMatrix::diagonal({2.0 * I, -1.0, 0.5});
  EXPECT_NEAR(k_numerical_radius(d, 1), 2.0, 1e-14);
}

TEST(Samples, StayInsideSupportHalfPlanes) {
  const ComplexMatrix a = random_complex(5, std::uint64_t{71});
  for (int k = 1; k < 5; ++k) {
    const SupportProfile p = krange_profile(a, k, 72);
    for (const Complex z : sample_points(a, k, 300, 5)) {
      for (int j = 0; j < p.num_angles(); ++j) {
        const auto i = static_cast<std::size_t>(j);
        EXPECT_LE((std::polar(1.0, -p.angles[i]) * z).real(), p.support[i] + 1e-10);
      }
    }
  }
}

TEST(Properties, AffineCovariance) {
  const ComplexMatrix h = random_hermitian(5, std::uint64_t{81});
  const Complex alpha(0.4, -1.0), beta(-0.6, 0.8);
  const ComplexMatrix g = alpha * ComplexMatrix::identity(5) + beta * h;
  const double arg = std::arg(beta), mod = std::abs(beta);
  for (int k = 1; k < 5; ++k) {
    for (double theta : {0.0, 1.0, 2.5}) {
      // h_{α+βA}(θ) = Re(e^{-iθ}α) + |β| h_A(θ - arg β)
      const double want = (std::polar(1.0, -theta) * alpha).real() + mod * support_value(h, k, theta - arg);
      EXPECT_NEAR(support_value(g, k, theta), want, 1e-12);
    }
  }
}

TEST(Properties, CompressionShrinksRange) {
  Rng rng(91);
  const ComplexMatrix a = random_complex(6, rng);
  const Eigen::MatrixXcd v = testing::random_coisometry(4, 6, rng);
  const ComplexMatrix c(v * a.mat() * v.adjoint());
  for (int k = 1; k < 4; ++k) {
    const std::vector<double> big = SpectralSweep(a, 90).support(k);
    const std::vector<double> small = SpectralSweep(c, 90).support(k);
    for (std::size_t j = 0; j < big.size(); ++j) EXPECT_LE(small[j], big[j] + 1e-12);
  }
}

TEST(Properties, ComplementIdentity) {
  const ComplexMatrix h = random_hermitian(7, std::uint64_t{101});
  const double tr = trace(h).real();
  for (int k = 1; k < 7; ++k) {
    const KInterval a = krange_hermitian(h, k);
    const KInterval b = krange_hermitian(h, 7 - k);
    EXPECT_NEAR((7 - k) * b.lo, tr - k * a.hi, 1e-12);
    EXPECT_NEAR((7 - k) * b.hi, tr - k * a.lo, 1e-12);
  }
}

TEST(Properties, LibraryBatteryPasses) {
  const RangePropertyReport r = check_range_properties(12, 6, 3);
  EXPECT_EQ(r.matrices, 12);
  EXPECT_GT(r.cases, 12);
  EXPECT_TRUE(passes(r));
  EXPECT_EQ(r.hermitian_misclassified, 0);
  EXPECT_LT(complement_identity_error(20, 8, 4), 1e-10);
}

}  // namespace
}  // namespace wkp
