#pragma once

#include <vector>

#include "ddvv/matcore.hpp"

namespace ddvv {

/// 1-based (row, column) label of a basis element.
struct IndexPair {
  int i = 1;
  int j = 1;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  /// Lexicographic: (i,j) < (k,l) iff i < k, or i == k and j < l.
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Flat 1-based index alpha = (i-1) n + j.
int flat_index(IndexPair p, int n);
IndexPair pair_of_flat(int alpha, int n);

/// Real-orthonormal basis of a matrix class, in a fixed order.
///
/// For Hermitian and GeneralReal the order is the flat index order over all
/// n^2 pairs; Symmetric uses the pairs with i <= j, SkewSymmetric those with
/// i < j; SkewHermitian is i times the Hermitian basis and GeneralComplex is
/// the Hermitian basis followed by i times the Hermitian basis.
struct BasisSet {
  MatrixClass cls = MatrixClass::Hermitian;
  int n = 0;
  std::vector<ComplexMatrix> elements;
  /// Generator label of each element (for GeneralComplex each label appears
  /// twice: once in each half).
  std::vector<IndexPair> labels;

  [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(elements.size()); }
};

/// E_ii on the diagonal, (E_ij + E_ji)/sqrt2 for i < j, i(E_ij - E_ji)/sqrt2 for i > j.
ComplexMatrix hermitian_element(IndexPair p, int n);
BasisSet hermitian_basis(int n);
BasisSet class_basis(MatrixClass cls, int n);

/// Gram matrix of a basis under the real Frobenius inner product.
RealMatrix basis_gram(const BasisSet& basis);
/// Coefficients inner(A, e_alpha).
RealVector basis_coefficients(const ComplexMatrix& A, const BasisSet& basis);
ComplexMatrix basis_combination(const RealVector& coeffs, const BasisSet& basis);

/// ||[E_a, E_b]||^2 for two Hermitian basis elements, from the closed-form
/// case table (values 2, 1, 1/2, 0). Throws SizeError on out-of-range pairs.
double pair_comm_norm_sq(IndexPair a, IndexPair b, int n);

/// sum_gamma <[E_a, E_g], [E_b, E_g]> = 2n d_ik d_jl - 2 d_ij d_kl over the
/// Hermitian basis, for a = (i,j), b = (k,l).
double gram_row_sum(IndexPair a, IndexPair b, int n);

/// Orthogonal change of basis.
class BasisRotation {
public:
  /// Throws ClassError unless Q^t Q = I within kOrthTol.
  explicit BasisRotation(RealMatrix Q);

  static BasisRotation identity(Eigen::Index N);
  /// Haar-random element of SO(N).
  static BasisRotation sample_special(Eigen::Index N, RandomStream& rng);

  [[nodiscard]] const RealMatrix& matrix() const { return Q_; }
  [[nodiscard]] Eigen::Index size() const { return Q_.rows(); }
  [[nodiscard]] double determinant() const;
  /// Same rotation with the last column negated if det < 0. Commutator norms
  /// of the rotated basis are unchanged.
  [[nodiscard]] BasisRotation to_special() const;

private:
  RealMatrix Q_;
};

/// Output element alpha is sum_beta Q(beta, alpha) e_beta.
BasisSet rotate_basis(const BasisSet& basis, const BasisRotation& Q);

/// Entry (i, j) of the rotated Hermitian element alpha written directly from
/// the columns of Q: q_{gamma alpha} on the diagonal,
/// (q_{gamma alpha} - i q_{tau alpha})/sqrt2 above it and the conjugate of
/// the mirrored entry below, gamma = (i,j), tau = (j,i). 1-based arguments.
Complex rotated_hermitian_entry(const BasisRotation& Q, int alpha, int i, int j, int n);

/// M(alpha, beta) = ||[e_alpha, e_beta]||^2 over a basis.
RealMatrix commutator_norm_table(const BasisSet& basis);

}  // namespace ddvv
