#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wkp/classify.hpp"
#include "wkp/papersuite.hpp"

namespace wkp {
namespace {

using testing::max_abs_diff;

// min over unit phases γ of |U - γ V|max, with γ from the inner product.
double phase_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  const Complex ip = (v.mat().adjoint() * u.mat()).trace();
  const Complex gamma = std::abs(ip) > 0 ? ip / std::abs(ip) : Complex(1.0);
  return max_abs_diff(u.mat(), gamma * v.mat());
}

TEST(Trials, SeededAndDeterministic) {
  const auto t1 = preserver_trials(3, 3, 10, 5);
  const auto t2 = preserver_trials(3, 3, 10, 5);
  ASSERT_EQ(t1.size(), 10u);
  EXPECT_EQ(t1[0].origin, "example1");
  EXPECT_EQ(t1[0].a, example1_matrices(3, 3).first);
  for (std::size_t i = 0; i < t1.size(); ++i) {
    EXPECT_EQ(t1[i].a, t2[i].a);
    EXPECT_EQ(t1[i].b, t2[i].b);
  }
  EXPECT_EQ(t1[1].origin, "hermitian");
  EXPECT_EQ(t1[2].origin, "complex");
  const auto small = preserver_trials(2, 3, 2, 5);
  EXPECT_EQ(small[0].origin, "matrix_units");
  EXPECT_EQ(small[0].b, ComplexMatrix::unit(3, 0, 0));
  EXPECT_THROW(preserver_trials(2, 2, 0, 1), DomainError);
}

TEST(Verify, IdentityPassesExactly) {
  const BipartiteShape shape(2, 2, 1);
  const VerificationReport r = verify_preserver(identity_map(shape), shape);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.trials, 50);
  EXPECT_LE(r.max_support_defect, 1e-12);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Verify, FullTransposePassesOnThreeByThree) {
  const BipartiteShape shape(3, 3, 2);
  const LinearMapMatrix phi =
      build_canonical({Varphi::FullTranspose, random_haar_unitary(9, std::uint64_t{3}), false, shape});
  const VerificationReport r = verify_preserver(phi, shape);
  EXPECT_TRUE(r.pass()) << r.max_support_defect;
  EXPECT_EQ(r.trials, 50);
}

TEST(Verify, PartialTransposeFailsWithSeededWitness) {
  const BipartiteShape shape(3, 3, 2);
  const LinearMapMatrix phi =
      build_canonical({Varphi::PartialRight, ComplexMatrix::identity(9), false, shape});
  const VerificationReport r = verify_preserver(phi, shape);
  EXPECT_FALSE(r.pass());
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses.front().trial, 0);
  EXPECT_EQ(r.witnesses.front().a, example1_matrices(3, 3).first);
  EXPECT_GT(r.witnesses.front().defect, 1e-3);
}

TEST(Verify, PartialTransposeOnQubitFactorPasses) {
  // min(m, n) = 2: partial transposes are valid forms.
  const BipartiteShape shape(2, 3, 2);
  for (Varphi v : {Varphi::PartialLeft, Varphi::PartialRight}) {
    const LinearMapMatrix phi = build_canonical({v, random_haar_unitary(6, std::uint64_t{4}), false, shape});
    EXPECT_TRUE(verify_preserver(phi, shape).pass()) << to_string(v);
  }
}

TEST(Verify, UngatedAffineFails) {
  // mn != 2k: the reflection breaks trace preservation and the ranges move.
  const BipartiteShape shape(2, 2, 1);
  const LinearMapMatrix phi = compose(reflection_map(shape), identity_map(shape));
  EXPECT_FALSE(verify_preserver(phi, shape).pass());
  const BipartiteShape shape3(3, 3, 3);
  const LinearMapMatrix psi = compose(
      reflection_map(shape3), build_canonical({Varphi::FullTranspose, random_haar_unitary(9, std::uint64_t{5}), false, shape3}));
  EXPECT_FALSE(verify_preserver(psi, shape3).pass());
}

TEST(Verify, StopAtFirstFailure) {
  const BipartiteShape shape(3, 3, 2);
  const LinearMapMatrix phi = build_canonical({Varphi::PartialLeft, ComplexMatrix::identity(9), false, shape});
  VerifyOptions opts;
  opts.stop_at_first_failure = true;
  const VerificationReport r = verify_preserver(phi, shape, opts);
  EXPECT_EQ(r.trials, 1);
  EXPECT_EQ(r.witnesses.size(), 1u);
}

TEST(Verify, ShapeMismatchThrows) {
  const PreserverVerifier v(2, 2, 3, 16, 1);
  EXPECT_THROW(v.verify(identity_map(BipartiteShape(2, 3, 1)), 1, 1e-8), ShapeError);
}

TEST(Classify, RoundTripEveryForm) {
  for (const BipartiteShape& shape : {BipartiteShape(2, 2, 2), BipartiteShape(2, 3, 3), BipartiteShape(3, 3, 2)}) {
    Rng rng(shape.dim());
    for (Varphi v : kAllVarphi) {
      for (bool affine : {false, true}) {
        if (affine && !shape.is_half()) continue;
        const ComplexMatrix u = random_haar_unitary(shape.dim(), rng);
        const LinearMapMatrix phi = build_canonical({v, u, affine, shape});
        const ClassificationReport r = classify_preserver(phi, shape);
        ASSERT_EQ(r.verdict, ClassVerdict::Classified) << to_string(v) << affine;
        EXPECT_EQ(r.matched->varphi, v);
        EXPECT_EQ(r.matched->affine, affine);
        EXPECT_LE(r.matched->residual, 1e-8);
        EXPECT_LE(phase_distance(u, r.matched->unitary), 1e-8);
      }
    }
  }
}

TEST(Classify, CandidateListFollowsGating) {
  EXPECT_EQ(classify_preserver(identity_map(BipartiteShape(2, 2, 2)), BipartiteShape(2, 2, 2)).candidates.size(), 8u);
  EXPECT_EQ(classify_preserver(identity_map(BipartiteShape(2, 2, 1)), BipartiteShape(2, 2, 1)).candidates.size(), 4u);
}

TEST(Classify, PerturbedMapIsRejected) {
  const BipartiteShape shape(2, 2, 2);
  const LinearMapMatrix phi = build_canonical({Varphi::Identity, random_haar_unitary(4, std::uint64_t{6}), false, shape});
  const ComplexMatrix noise = random_complex(16, std::uint64_t{7});
  const LinearMapMatrix bumped(shape, phi.matrix() + Complex(1e-3) * noise);
  const ClassificationReport r = classify_preserver(bumped, shape);
  EXPECT_EQ(r.verdict, ClassVerdict::NotAPreserver);
  EXPECT_FALSE(r.matched.has_value());
  EXPECT_FALSE(verify_preserver(bumped, shape).pass());
}

TEST(Classify, NonHermitianChoiSkipsCandidate) {
  const BipartiteShape shape(2, 2, 1);
  const LinearMapMatrix phi(shape, random_complex(16, std::uint64_t{8}));
  const ClassificationReport r = classify_preserver(phi, shape);
  EXPECT_EQ(r.verdict, ClassVerdict::NotAPreserver);
  for (const CandidateResult& c : r.candidates) {
    EXPECT_TRUE(std::isinf(c.choi_gap));
    EXPECT_TRUE(std::isinf(c.residual));
  }
}

TEST(Classify, NormalizePhase) {
  const ComplexMatrix u = random_haar_unitary(4, std::uint64_t{10});
  const ComplexMatrix n1 = normalize_phase(u);
  const ComplexMatrix n2 = normalize_phase(Complex(std::polar(1.0, 1.3)) * u);
  EXPECT_LT(max_abs_diff(n1, n2), 1e-14);
  EXPECT_LT(phase_distance(u, n1), 1e-14);
}

TEST(RandomMaps, UnitalTracePreservingAndHermitian) {
  const BipartiteShape shape(2, 3, 3);
  Rng rng(12);
  for (int rep = 0; rep < 5; ++rep) {
    const LinearMapMatrix phi = random_unital_trace_preserving_map(shape, rng);
    const ComplexMatrix x = random_complex(6, rng);
    const ComplexMatrix h = random_hermitian(6, rng);
    EXPECT_LT(std::abs(trace(apply_map(phi, x)) - trace(x)), 1e-12);
    EXPECT_LT(max_abs_diff(apply_map(phi, ComplexMatrix::identity(6)), ComplexMatrix::identity(6)), 1e-12);
    EXPECT_TRUE(is_hermitian(apply_map(phi, h)));
  }
}

TEST(Falsify, NoRandomMapPasses) {
  const FalsifySummary s = falsify_random(BipartiteShape(2, 2, 2), 100, 1);
  EXPECT_EQ(s.count, 100);
  EXPECT_EQ(s.passes, 0);
  EXPECT_EQ(s.defects.size(), 100u);
  EXPECT_GT(*std::min_element(s.defects.begin(), s.defects.end()), 1e-8);
}

TEST(Falsify, ZeroCountAndDeterminism) {
  const FalsifySummary empty = falsify_random(BipartiteShape(2, 2, 1), 0, 1);
  EXPECT_EQ(empty.count, 0);
  EXPECT_TRUE(empty.defects.empty());
  EXPECT_THROW(falsify_random(BipartiteShape(2, 2, 1), -1, 1), DomainError);

  std::vector<ComplexMatrix> first, second;
  const auto a = falsify_random(BipartiteShape(2, 2, 1), 5, 9, 1e-8, 10, 36,
                                [&](int, const LinearMapMatrix& m) { first.push_back(m.matrix()); });
  const auto b = falsify_random(BipartiteShape(2, 2, 1), 5, 9, 1e-8, 10, 36,
                                [&](int, const LinearMapMatrix& m) { second.push_back(m.matrix()); });
  EXPECT_EQ(first, second);
  EXPECT_EQ(a.defects, b.defects);
}

}  // namespace
}  // namespace wkp
