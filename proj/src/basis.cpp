#include "ddvv/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace ddvv {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
const Complex kI(0.0, 1.0);

void check_pair(IndexPair p, int n) {
  if (p.i < 1 || p.j < 1 || p.i > n || p.j > n) {
    throw SizeError("index pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                    ") out of range for n=" + std::to_string(n));
  }
}

ComplexMatrix unit(int n, int i, int j) {
  ComplexMatrix E = ComplexMatrix::Zero(n, n);
  E(i - 1, j - 1) = 1.0;
  return E;
}

}  // namespace

int flat_index(IndexPair p, int n) { return (p.i - 1) * n + p.j; }

IndexPair pair_of_flat(int alpha, int n) {
  if (alpha < 1 || alpha > n * n) throw SizeError("flat index out of range");
  return IndexPair{(alpha - 1) / n + 1, (alpha - 1) % n + 1};
}

ComplexMatrix hermitian_element(IndexPair p, int n) {
  check_pair(p, n);
  if (p.i == p.j) return unit(n, p.i, p.i);
  if (p.i < p.j) return kInvSqrt2 * (unit(n, p.i, p.j) + unit(n, p.j, p.i));
  return (kI * kInvSqrt2) * (unit(n, p.i, p.j) - unit(n, p.j, p.i));
}

BasisSet hermitian_basis(int n) {
  if (n < 1) throw SizeError("hermitian_basis: n must be positive");
  BasisSet basis;
  basis.cls = MatrixClass::Hermitian;
  basis.n = n;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      basis.elements.push_back(hermitian_element({i, j}, n));
      basis.labels.push_back({i, j});
    }
  }
  return basis;
}

BasisSet class_basis(MatrixClass cls, int n) {
  if (n < 1) throw SizeError("class_basis: n must be positive");
  BasisSet basis;
  basis.cls = cls;
  basis.n = n;
  auto add = [&](ComplexMatrix e, IndexPair p) {
    basis.elements.push_back(std::move(e));
    basis.labels.push_back(p);
  };

  switch (cls) {
    case MatrixClass::Hermitian: return hermitian_basis(n);
    case MatrixClass::SkewHermitian:
    case MatrixClass::GeneralComplex: {
      const BasisSet herm = hermitian_basis(n);
      if (cls == MatrixClass::GeneralComplex) {
        for (Eigen::Index a = 0; a < herm.size(); ++a) add(herm.elements[a], herm.labels[a]);
      }
      for (Eigen::Index a = 0; a < herm.size(); ++a) add(kI * herm.elements[a], herm.labels[a]);
      return basis;
    }
    case MatrixClass::Symmetric:
    case MatrixClass::SkewSymmetric:
    case MatrixClass::GeneralReal:
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) {
            if (cls != MatrixClass::SkewSymmetric) add(unit(n, i, i), {i, j});
          } else if (i < j) {
            if (cls != MatrixClass::SkewSymmetric) {
              add(kInvSqrt2 * (unit(n, i, j) + unit(n, j, i)), {i, j});
            } else {
              add(kInvSqrt2 * (unit(n, i, j) - unit(n, j, i)), {i, j});
            }
          } else if (cls == MatrixClass::GeneralReal) {
            // Same matrix the skew-symmetric basis labels (j, i).
            add(kInvSqrt2 * (unit(n, j, i) - unit(n, i, j)), {i, j});
          }
        }
      }
      return basis;
  }
  throw ClassError("class_basis: unsupported class");
}

RealMatrix basis_gram(const BasisSet& basis) {
  const Eigen::Index N = basis.size();
  RealMatrix G(N, N);
  for (Eigen::Index a = 0; a < N; ++a) {
    for (Eigen::Index b = 0; b < N; ++b) G(a, b) = inner(basis.elements[a], basis.elements[b]);
  }
  return G;
}

RealVector basis_coefficients(const ComplexMatrix& A, const BasisSet& basis) {
  RealVector c(basis.size());
  for (Eigen::Index a = 0; a < basis.size(); ++a) c(a) = inner(A, basis.elements[a]);
  return c;
}

ComplexMatrix basis_combination(const RealVector& coeffs, const BasisSet& basis) {
  if (coeffs.size() != basis.size()) throw SizeError("basis_combination: length mismatch");
  ComplexMatrix A = ComplexMatrix::Zero(basis.n, basis.n);
  for (Eigen::Index a = 0; a < basis.size(); ++a) {
    if (coeffs(a) != 0.0) A += coeffs(a) * basis.elements[a];
  }
  return A;
}

double pair_comm_norm_sq(IndexPair a, IndexPair b, int n) {
  check_pair(a, n);
  check_pair(b, n);
  if (b < a) std::swap(a, b);
  const int i = a.i, j = a.j, k = b.i, l = b.j;

  // Two matching index pairs.
  if (i == l && l < j && j == k) return 2.0;

  // Three equal indices.
  if (i == j && j == k && k < l) return 1.0;
  if (i < j && j == k && k == l) return 1.0;
  if (i == j && j == l && l < k) return 1.0;
  if (j < i && i == k && k == l) return 1.0;

  // Two equal indices among three distinct values.
  if (i < j && j == k && k < l) return 0.5;
  if (i == k && k < j && j < l) return 0.5;
  if (i < k && k < j && j == l) return 0.5;
  if (j == l && l < i && i < k) return 0.5;
  if (j < l && l < i && i == k) return 0.5;
  if (j < i && i == l && l < k) return 0.5;
  if (i < j && j == l && l < k) return 0.5;
  if (l < i && i < j && j == k) return 0.5;
  if (i < l && l < j && j == k) return 0.5;
  if (i == l && l < j && j < k) return 0.5;
  if (i == l && l < k && k < j) return 0.5;
  if (j < k && k == i && i < l) return 0.5;

  return 0.0;
}

double gram_row_sum(IndexPair a, IndexPair b, int n) {
  check_pair(a, n);
  check_pair(b, n);
  const double d_ik_jl = (a.i == b.i && a.j == b.j) ? 1.0 : 0.0;
  const double d_ij_kl = (a.i == a.j && b.i == b.j) ? 1.0 : 0.0;
  return 2.0 * n * d_ik_jl - 2.0 * d_ij_kl;
}

// ---------------------------------------------------------------------------

BasisRotation::BasisRotation(RealMatrix Q) : Q_(std::move(Q)) {
  if (Q_.rows() != Q_.cols()) throw SizeError("BasisRotation: Q must be square");
  if (orthogonality_defect(Q_) > kOrthTol) throw ClassError("BasisRotation: Q is not orthogonal");
}

BasisRotation BasisRotation::identity(Eigen::Index N) { return BasisRotation(RealMatrix::Identity(N, N)); }

BasisRotation BasisRotation::sample_special(Eigen::Index N, RandomStream& rng) {
  return BasisRotation(sample_orthogonal(N, rng)).to_special();
}

double BasisRotation::determinant() const { return Q_.size() == 0 ? 1.0 : Q_.determinant(); }

BasisRotation BasisRotation::to_special() const {
  if (Q_.size() == 0 || determinant() > 0.0) return *this;
  RealMatrix Q = Q_;
  Q.col(Q.cols() - 1) = -Q.col(Q.cols() - 1);
  return BasisRotation(std::move(Q));
}

BasisSet rotate_basis(const BasisSet& basis, const BasisRotation& Q) {
  const Eigen::Index N = basis.size();
  if (Q.size() != N) throw SizeError("rotate_basis: rotation size does not match basis");
  BasisSet out;
  out.cls = basis.cls;
  out.n = basis.n;
  out.labels = basis.labels;
  out.elements.reserve(N);
  for (Eigen::Index a = 0; a < N; ++a) out.elements.push_back(basis_combination(Q.matrix().col(a), basis));
  return out;
}

Complex rotated_hermitian_entry(const BasisRotation& Q, int alpha, int i, int j, int n) {
  if (Q.size() != static_cast<Eigen::Index>(n) * n) throw SizeError("rotated_hermitian_entry: Q size");
  const RealMatrix& q = Q.matrix();
  const int a = alpha - 1;
  if (i == j) return q(flat_index({i, i}, n) - 1, a);
  if (i > j) return std::conj(rotated_hermitian_entry(Q, alpha, j, i, n));
  const double q_gamma = q(flat_index({i, j}, n) - 1, a);
  const double q_tau = q(flat_index({j, i}, n) - 1, a);
  return Complex(q_gamma, -q_tau) * kInvSqrt2;
}

RealMatrix commutator_norm_table(const BasisSet& basis) {
  const Eigen::Index N = basis.size();
  RealMatrix M = RealMatrix::Zero(N, N);
  for (Eigen::Index a = 0; a < N; ++a) {
    for (Eigen::Index b = a + 1; b < N; ++b) {
      const double v = commutator(basis.elements[a], basis.elements[b]).squaredNorm();
      M(a, b) = v;
      M(b, a) = v;
    }
  }
  return M;
}

}  // namespace ddvv
