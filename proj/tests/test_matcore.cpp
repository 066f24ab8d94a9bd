#include <gtest/gtest.h>

#include "ddvv/ineq.hpp"
#include "ddvv/matcore.hpp"

using namespace ddvv;

namespace {
const Complex kI(0.0, 1.0);
}

TEST(Commutator, IdentityCommutes) {
  RandomStream rng(1);
  const ComplexMatrix B = sample_class(MatrixClass::GeneralComplex, 4, rng);
  EXPECT_EQ(commutator(ComplexMatrix::Identity(4, 4), B).norm(), 0.0);
}

TEST(Commutator, PauliPairHandComputed) {
  const ComplexMatrix C = commutator(pauli_block(1, 1.0), pauli_block(2, 1.0));
  ComplexMatrix expected(2, 2);
  expected << 0.0, 2.0, -2.0, 0.0;
  EXPECT_LE((C - expected).norm(), 1e-15);
}

TEST(Commutator, SelfCommutatorVanishes) {
  RandomStream rng(2);
  const ComplexMatrix A = sample_class(MatrixClass::GeneralComplex, 5, rng);
  EXPECT_EQ(commutator(A, A).norm(), 0.0);
}

TEST(Commutator, AntisymmetricExactly) {
  RandomStream rng(3);
  const ComplexMatrix A = sample_class(MatrixClass::GeneralComplex, 4, rng);
  const ComplexMatrix B = sample_class(MatrixClass::GeneralComplex, 4, rng);
  EXPECT_TRUE(commutator(A, B) == ComplexMatrix(-commutator(B, A)));
}

TEST(Commutator, SizeMismatchThrows) {
  EXPECT_THROW(commutator(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), SizeError);
  EXPECT_THROW(inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), SizeError);
}

TEST(Inner, PauliNormAndZero) {
  EXPECT_DOUBLE_EQ(inner(pauli_block(1, 1.0), pauli_block(1, 1.0)), 2.0);
  RandomStream rng(4);
  const ComplexMatrix B = sample_class(MatrixClass::GeneralComplex, 3, rng);
  EXPECT_EQ(inner(ComplexMatrix::Zero(3, 3), B), 0.0);
  EXPECT_NEAR(inner(B, B), B.squaredNorm(), 1e-12);
}

TEST(Project, ClassFormulas) {
  RandomStream rng(5);
  const ComplexMatrix A = sample_class(MatrixClass::GeneralComplex, 4, rng);
  EXPECT_LE((project(A, MatrixClass::Hermitian) - 0.5 * (A + A.adjoint())).norm(), 1e-15);
  EXPECT_LE((project(A, MatrixClass::SkewHermitian) - 0.5 * (A - A.adjoint())).norm(), 1e-15);
  const ComplexMatrix H = project(A, MatrixClass::Hermitian);
  EXPECT_TRUE(project(H, MatrixClass::Hermitian).isApprox(H, 1e-15));
}

TEST(Project, IdempotentOrthogonalContraction) {
  RandomStream rng(6);
  for (MatrixClass cls : kAllClasses) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix A = sample_class(MatrixClass::GeneralComplex, 4, rng);
      const ComplexMatrix P = project(A, cls);
      EXPECT_LE((project(P, cls) - P).norm(), 1e-14) << class_name(cls);
      EXPECT_LE(P.norm(), A.norm() + 1e-14);
      const ComplexMatrix X = sample_class(cls, 4, rng);
      EXPECT_NEAR(inner(A - P, X), 0.0, 1e-12) << class_name(cls);
      EXPECT_TRUE(in_class(P, cls));
    }
  }
}

TEST(SampleClass, MembershipDeterminismAndTrivialClass) {
  RandomStream a(7), b(7);
  const ComplexMatrix H1 = sample_class(MatrixClass::Hermitian, 5, a);
  const ComplexMatrix H2 = sample_class(MatrixClass::Hermitian, 5, b);
  EXPECT_LE((H1 - H1.adjoint()).norm(), membership_tol(5));
  EXPECT_TRUE(H1 == H2);
  RandomStream c(8);
  EXPECT_EQ(sample_class(MatrixClass::SkewSymmetric, 1, c).norm(), 0.0);
}

TEST(ClassDimension, MatchesBasisCounts) {
  EXPECT_EQ(class_dimension(MatrixClass::Symmetric, 4), 10);
  EXPECT_EQ(class_dimension(MatrixClass::SkewSymmetric, 4), 6);
  EXPECT_EQ(class_dimension(MatrixClass::Hermitian, 4), 16);
  EXPECT_EQ(class_dimension(MatrixClass::GeneralComplex, 4), 32);
}

TEST(ClassName, RoundTrip) {
  for (MatrixClass cls : kAllClasses) EXPECT_EQ(parse_class(class_name(cls)), cls);
  EXPECT_FALSE(parse_class("banana").has_value());
}

TEST(Sampling, UnitaryAndOrthogonal) {
  RandomStream rng(9);
  const ComplexMatrix u1 = sample_unitary(1, rng);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-15);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_LE(orthogonality_defect(sample_unitary(n, rng)), 1e-12);
    const RealMatrix R = sample_orthogonal(n, rng);
    EXPECT_LE(orthogonality_defect(R), 1e-12);
    EXPECT_NEAR(std::abs(R.determinant()), 1.0, 1e-10);
  }
}

TEST(RandomStream, SplitStreamsAreReproducibleAndDistinct) {
  const RandomStream root(42);
  RandomStream s1 = root.split(3), s2 = root.split(3), s3 = root.split(4);
  const double a = s1.normal();
  EXPECT_EQ(a, s2.normal());
  EXPECT_NE(a, s3.normal());
  // Moments of the hand-rolled normal sampler.
  RandomStream g(11);
  double sum = 0.0, sum_sq = 0.0;
  const int count = 200000;
  for (int k = 0; k < count; ++k) {
    const double x = g.normal();
    sum += x;
    sum_sq += x * x;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / count, 1.0, 0.01);
}

TEST(MatrixTuple, RejectsMixedSizesAndClassViolations) {
  std::vector<ComplexMatrix> mixed{ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)};
  EXPECT_THROW(MatrixTuple(MatrixClass::Hermitian, mixed), SizeError);
  ComplexMatrix notherm = ComplexMatrix::Zero(2, 2);
  notherm(0, 1) = 1.0;
  EXPECT_THROW(MatrixTuple(MatrixClass::Hermitian, {notherm}), ClassError);
  EXPECT_THROW(MatrixTuple(MatrixClass::Hermitian, std::vector<ComplexMatrix>{}), SizeError);
}

TEST(KAction, IdentityLeavesTupleUnchanged) {
  RandomStream rng(10);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::Hermitian, 3, 3, rng);
  const MatrixTuple out = k_act(KElement::identity(3, 3), T);
  for (int r = 0; r < 3; ++r) EXPECT_LE((out[r] - T[r]).norm(), 1e-15);
}

TEST(KAction, PreservesEnergyRatioAndClass) {
  RandomStream rng(12);
  for (MatrixClass cls : kAllClasses) {
    for (int trial = 0; trial < 10; ++trial) {
      const MatrixTuple T = MatrixTuple::sample(cls, 3, 4, rng);
      const KElement g = KElement::sample(cls, 4, 3, rng);
      const MatrixTuple gT = k_act(g, T);
      EXPECT_EQ(gT.matrix_class(), cls);
      EXPECT_NEAR(gT.energy(), T.energy(), 1e-10 * T.energy());
      EXPECT_NEAR(evaluate(gT).ratio, evaluate(T).ratio, 1e-10) << class_name(cls);
    }
  }
}

TEST(KAction, ComplexUnitaryBreaksRealClass) {
  RandomStream rng(13);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::Symmetric, 2, 3, rng);
  const KElement g(sample_unitary(3, rng), RealMatrix::Identity(2, 2));
  EXPECT_THROW(k_act(g, T), ClassError);
  EXPECT_THROW(k_act(KElement::identity(4, 2), T), SizeError);
}

TEST(KElement, RejectsNonOrthogonal) {
  EXPECT_THROW(KElement(2.0 * ComplexMatrix::Identity(2, 2), RealMatrix::Identity(2, 2)), ClassError);
}

TEST(Invariance, UnitaryCongruencePreservesCommutatorNorm) {
  RandomStream rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix A = sample_class(MatrixClass::GeneralComplex, 5, rng);
    const ComplexMatrix B = sample_class(MatrixClass::GeneralComplex, 5, rng);
    const ComplexMatrix P = sample_unitary(5, rng);
    const double before = commutator(A, B).squaredNorm();
    const double after = commutator(P.adjoint() * A * P, P.adjoint() * B * P).squaredNorm();
    EXPECT_NEAR(after, before, 1e-10 * before);
  }
}

TEST(Invariance, TimesIMapsHermitianToSkewHermitian) {
  RandomStream rng(15);
  const ComplexMatrix A = sample_class(MatrixClass::Hermitian, 4, rng);
  const ComplexMatrix B = sample_class(MatrixClass::Hermitian, 4, rng);
  EXPECT_TRUE(in_class(ComplexMatrix(kI * A), MatrixClass::SkewHermitian));
  EXPECT_NEAR(commutator(kI * A, kI * B).norm(), commutator(A, B).norm(), 1e-13);
}

TEST(Tuple, TrivialSizesAreLegal) {
  RandomStream rng(16);
  const MatrixTuple one = MatrixTuple::sample(MatrixClass::Hermitian, 1, 4, rng);
  EXPECT_EQ(evaluate(one).lhs, 0.0);
  const MatrixTuple scalars = MatrixTuple::sample(MatrixClass::GeneralComplex, 3, 1, rng);
  EXPECT_EQ(evaluate(scalars).lhs, 0.0);
}
