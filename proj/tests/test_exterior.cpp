#include <cmath>

#include <gtest/gtest.h>

#include "ddvv/exterior.hpp"
#include "ddvv/ineq.hpp"

using namespace ddvv;

namespace {

RealMatrix random_real(int rows, int cols, RandomStream& rng) {
  RealMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = rng.normal();
  return A;
}

// Direct sum over ordered pairs, written out without the library.
double direct_lhs(const MatrixTuple& T) {
  double s = 0.0;
  for (Eigen::Index r = 0; r < T.m(); ++r)
    for (Eigen::Index q = 0; q < T.m(); ++q) s += (T[r] * T[q] - T[q] * T[r]).squaredNorm();
  return s;
}

}  // namespace

TEST(PairTable, LexicographicOrder) {
  const auto& t = pair_table(4);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t[0], std::make_pair(0, 1));
  EXPECT_EQ(t[2], std::make_pair(0, 3));
  EXPECT_EQ(t[3], std::make_pair(1, 2));
  EXPECT_EQ(t[5], std::make_pair(2, 3));
  EXPECT_TRUE(pair_table(1).empty());
  EXPECT_EQ(binom2(5), 10);
}

TEST(Phi, IdentityIsExact) {
  for (int n = 2; n <= 6; ++n) {
    const Eigen::Index k = binom2(n);
    EXPECT_TRUE(phi(RealMatrix::Identity(n, n)) == RealMatrix::Identity(k, k));
  }
}

TEST(Phi, TwoByTwoIsDeterminant) {
  RandomStream rng(31);
  const RealMatrix A = random_real(2, 2, rng);
  const RealMatrix P = phi(A);
  ASSERT_EQ(P.rows(), 1);
  ASSERT_EQ(P.cols(), 1);
  EXPECT_NEAR(P(0, 0), A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0), 1e-15);
}

TEST(Phi, EntriesAreMinors) {
  RandomStream rng(32);
  const RealMatrix A = random_real(4, 3, rng);
  const RealMatrix P = phi(A);
  ASSERT_EQ(P.rows(), 6);
  ASSERT_EQ(P.cols(), 3);
  // Row pair (1,3), column pair (0,2).
  const double minor = A(1, 0) * A(3, 2) - A(1, 2) * A(3, 0);
  EXPECT_NEAR(P(4, 1), minor, 1e-15);
}

TEST(Phi, MultiplicativeOnConformablePairs) {
  RandomStream rng(33);
  const RealMatrix A = random_real(3, 4, rng);
  const RealMatrix B = random_real(4, 3, rng);
  const RealMatrix lhs = phi(A * B);
  const RealMatrix rhs = phi(A) * phi(B);
  EXPECT_LE((lhs - rhs).norm(), 1e-10 * std::max(1.0, lhs.norm()));
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng.below(6));
    const int q = 1 + static_cast<int>(rng.below(6));
    const int r = 1 + static_cast<int>(rng.below(6));
    const RealMatrix X = random_real(p, q, rng), Y = random_real(q, r, rng);
    const RealMatrix L = phi(X * Y), R = phi(X) * phi(Y);
    EXPECT_LE((L - R).norm(), 1e-10 * std::max(1.0, L.norm()));
  }
}

TEST(Phi, TransposeCommutesExactly) {
  RandomStream rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix A = random_real(5, 4, rng);
    EXPECT_TRUE(phi(A.transpose()) == RealMatrix(phi(A).transpose()));
  }
}

TEST(Phi, OrthogonalMapsToOrthogonal) {
  RandomStream rng(35);
  const RealMatrix R = sample_orthogonal(5, rng);
  const RealMatrix P = phi(R);
  EXPECT_LE((P.transpose() * P - RealMatrix::Identity(10, 10)).norm(), 1e-12);
}

TEST(TupleCoefficients, FirstBasisElement) {
  const BasisSet b = hermitian_basis(3);
  const MatrixTuple T(MatrixClass::Hermitian, {b.elements[0]});
  const RealMatrix B = tuple_coefficients(T, b);
  ASSERT_EQ(B.cols(), 1);
  EXPECT_LE((B.col(0) - RealVector::Unit(9, 0)).norm(), 1e-15);
}

TEST(TupleCoefficients, FrobeniusNormAndZero) {
  RandomStream rng(36);
  for (MatrixClass cls : kAllClasses) {
    const MatrixTuple T = MatrixTuple::sample(cls, 3, 3, rng);
    const BasisSet b = class_basis(cls, 3);
    EXPECT_NEAR(tuple_coefficients(T, b).squaredNorm(), T.energy(), 1e-12 * std::max(1.0, T.energy()));
  }
  const BasisSet b = hermitian_basis(2);
  EXPECT_EQ(tuple_coefficients(MatrixTuple::zeros(MatrixClass::Hermitian, 2, 2), b).norm(), 0.0);
  EXPECT_THROW(tuple_coefficients(MatrixTuple::zeros(MatrixClass::Symmetric, 2, 2), b), ClassError);
}

TEST(GramOfBasis, DiagonalMatchesTableAndEmptyForOne) {
  const int n = 3;
  const BasisSet b = hermitian_basis(n);
  const RealMatrix C = gram_of_basis(b, Execution::Serial);
  const auto& pairs = pair_table(n * n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const IndexPair a = pair_of_flat(pairs[p].first + 1, n), c = pair_of_flat(pairs[p].second + 1, n);
    EXPECT_NEAR(C(p, p), pair_comm_norm_sq(a, c, n), 1e-12);
  }
  EXPECT_TRUE(C == RealMatrix(C.transpose()));
  EXPECT_EQ(gram_of_basis(hermitian_basis(1)).size(), 0);
}

TEST(GramOfBasis, SerialEqualsParallel) {
  for (MatrixClass cls : kAllClasses) {
    const BasisSet b = class_basis(cls, 3);
    EXPECT_TRUE(gram_of_basis(b, Execution::Serial) == gram_of_basis(b, Execution::Parallel)) << class_name(cls);
  }
}

TEST(GramOfTuple, PairAndTraceIdentity) {
  RandomStream rng(37);
  const MatrixTuple P = MatrixTuple::sample(MatrixClass::Hermitian, 2, 3, rng);
  const RealMatrix C = gram_of_tuple(P);
  ASSERT_EQ(C.rows(), 1);
  EXPECT_NEAR(C(0, 0), (P[0] * P[1] - P[1] * P[0]).squaredNorm(), 1e-12);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::GeneralComplex, 4, 3, rng);
  EXPECT_NEAR(2.0 * gram_of_tuple(T).trace(), direct_lhs(T), 1e-10 * direct_lhs(T));
}

TEST(GramOfTuple, DirectMatchesPhiForm) {
  RandomStream rng(38);
  for (MatrixClass cls : kAllClasses) {
    const BasisSet b = class_basis(cls, 3);
    const RealMatrix CE = gram_of_basis(b);
    for (int trial = 0; trial < 5; ++trial) {
      const MatrixTuple T = MatrixTuple::sample(cls, 4, 3, rng);
      const double e = T.energy();
      const double tol = 1e-9 * (1.0 + e * e);
      EXPECT_LE((gram_of_tuple(T) - gram_of_tuple_via_phi(T, b, CE)).cwiseAbs().maxCoeff(), tol) << class_name(cls);
    }
  }
}

TEST(CoefficientSpectrum, ReconstructsAndIsSorted) {
  RandomStream rng(39);
  const RealMatrix B = random_real(9, 3, rng);
  const CoefficientSpectrum s = coefficient_spectrum(B);
  const RealMatrix BBt = B * B.transpose();
  EXPECT_LE((s.Q * s.x.asDiagonal() * s.Q.transpose() - BBt).norm(), 1e-10 * BBt.norm());
  for (Eigen::Index k = 1; k < s.x.size(); ++k) EXPECT_GE(s.x(k - 1), s.x(k));
  EXPECT_NEAR(s.x.sum(), B.squaredNorm(), 1e-10 * B.squaredNorm());
}

TEST(Chain, ZeroTuple) {
  const ChainReport r = verify_transform_chain(MatrixTuple::zeros(MatrixClass::Hermitian, 3, 3));
  for (double v : r.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.max_rel_deviation, 0.0);
}

TEST(Chain, ExtremalTripleHandValue) {
  for (double lambda : {1.0, 0.5, 1.5}) {
    // Each of the six ordered Pauli commutators has squared norm 8 lambda^4.
    const double expected = 48.0 * std::pow(lambda, 4);
    const ChainReport r = verify_transform_chain(extremal_tuple(MatrixClass::Hermitian, 3, 2, lambda));
    for (double v : r.values) EXPECT_NEAR(v, expected, 1e-8 * expected);
  }
}

TEST(Chain, RandomHermitianTuples) {
  RandomStream rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixTuple T = MatrixTuple::sample(MatrixClass::Hermitian, 3, 3, rng);
    const ChainReport r = verify_transform_chain(T);
    EXPECT_LE(r.max_rel_deviation, 1e-8);
    EXPECT_NEAR(r.values[0], direct_lhs(T), 1e-10 * direct_lhs(T));
    EXPECT_GE(r.min_eigenvalue, -1e-10 * T.energy());
  }
}

TEST(Chain, HoldsForEveryClassBasis) {
  RandomStream rng(41);
  for (MatrixClass cls : kAllClasses) {
    const MatrixTuple T = MatrixTuple::sample(cls, 3, 3, rng);
    EXPECT_LE(verify_transform_chain(T).max_rel_deviation, 1e-8) << class_name(cls);
  }
}
