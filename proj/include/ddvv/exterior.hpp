#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ddvv/basis.hpp"
#include "ddvv/execution.hpp"

namespace ddvv {

/// Lexicographic list of 0-based pairs (i, j), i < j < d. Rows and columns of
/// phi and of every commutator Gram matrix are indexed through this table.
const std::vector<std::pair<int, int>>& pair_table(int d);
inline Eigen::Index binom2(Eigen::Index d) { return d < 2 ? 0 : d * (d - 1) / 2; }

/// Second compound matrix: entry at row pair (i,j), column pair (k,l) is the
/// minor a_ik a_jl - a_il a_jk. An m x n input gives binom(m,2) x binom(n,2).
RealMatrix phi(const RealMatrix& A);

/// N x m matrix whose column r holds the coefficients of B_r over the basis.
/// Throws ClassError when the basis does not reproduce a member.
RealMatrix tuple_coefficients(const MatrixTuple& T, const BasisSet& basis);

/// Gram matrix of commutators [e_a, e_b], a < b, of a basis.
RealMatrix gram_of_basis(const BasisSet& basis, Execution exec = Execution::Parallel);

/// Gram matrix of [B_r, B_s], r < s, computed directly from the matrices.
RealMatrix gram_of_tuple(const MatrixTuple& T);
/// Same matrix as phi(B^t) C(E) phi(B), with C(E) = gram_of_basis(basis).
RealMatrix gram_of_tuple_via_phi(const MatrixTuple& T, const BasisSet& basis, const RealMatrix& basis_gram);

/// B B^t = Q diag(x) Q^t with x sorted descending and the columns of Q
/// sign-normalized (first nonzero entry positive).
struct CoefficientSpectrum {
  RealVector x;
  RealMatrix Q;
};
CoefficientSpectrum coefficient_spectrum(const RealMatrix& B);

/// The four routes to sum_{r,s} ||[B_r, B_s]||^2:
///   [0] direct double sum, [1] 2 tr phi(B^t) C(E) phi(B),
///   [2] 2 tr phi(B B^t) C(E), [3] sum x_a x_b ||[Q_a, Q_b]||^2.
struct ChainReport {
  std::array<double, 4> values{};
  /// max |v_p - v_q| / max(1e-300, max |v|); zero when all values vanish.
  double max_rel_deviation = 0.0;
  RealVector eigenvalues;
  double min_eigenvalue = 0.0;
};

ChainReport verify_transform_chain(const MatrixTuple& T);
/// Reuses a precomputed class basis and its commutator Gram matrix.
ChainReport verify_transform_chain(const MatrixTuple& T, const BasisSet& basis, const RealMatrix& basis_gram);

}  // namespace ddvv
