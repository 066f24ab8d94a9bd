#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ddvv/random.hpp"

namespace ddvv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when operands have incompatible shapes.
class SizeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix or tuple falls outside its declared class, or when a
/// (class, size) combination is not supported by an operation.
class ClassError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline constexpr double kOrthTol = 1e-10;

/// Membership tolerance for an n x n matrix.
inline double membership_tol(Eigen::Index n) { return 1e-12 * static_cast<double>(n); }

enum class MatrixClass {
  Symmetric,
  SkewSymmetric,
  Hermitian,
  SkewHermitian,
  GeneralComplex,
  GeneralReal,
};

inline constexpr MatrixClass kAllClasses[] = {
    MatrixClass::Symmetric,     MatrixClass::SkewSymmetric,  MatrixClass::Hermitian,
    MatrixClass::SkewHermitian, MatrixClass::GeneralComplex, MatrixClass::GeneralReal,
};

/// CLI spelling: symmetric, skew-symmetric, hermitian, skew-hermitian, complex, real.
std::string_view class_name(MatrixClass cls);
std::optional<MatrixClass> parse_class(std::string_view name);

/// True for the classes living inside real matrices.
bool is_real_class(MatrixClass cls);

/// Dimension of the class as a real vector space.
Eigen::Index class_dimension(MatrixClass cls, Eigen::Index n);

/// Distance of A from the class subspace, ||A - project(A)||.
double class_defect(const ComplexMatrix& A, MatrixClass cls);

/// Membership up to membership_tol(n) * max(1, ||A||).
bool in_class(const ComplexMatrix& A, MatrixClass cls);

ComplexMatrix commutator(const ComplexMatrix& A, const ComplexMatrix& B);

/// Real Frobenius inner product Re tr(A B*).
double inner(const ComplexMatrix& A, const ComplexMatrix& B);
double norm_sq(const ComplexMatrix& A);

/// Orthogonal projection (for the real inner product) onto the class.
ComplexMatrix project(const ComplexMatrix& A, MatrixClass cls);

ComplexMatrix sample_class(MatrixClass cls, Eigen::Index n, RandomStream& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
ComplexMatrix sample_unitary(Eigen::Index n, RandomStream& rng);
/// Haar-distributed orthogonal matrix, same construction over the reals.
RealMatrix sample_orthogonal(Eigen::Index n, RandomStream& rng);

double orthogonality_defect(const ComplexMatrix& P);
double orthogonality_defect(const RealMatrix& R);

/// Ordered list of m same-class n x n matrices.
class MatrixTuple {
public:
  /// Validates sizes and class membership; throws SizeError / ClassError.
  MatrixTuple(MatrixClass cls, std::vector<ComplexMatrix> matrices);

  /// m zero matrices of side n.
  static MatrixTuple zeros(MatrixClass cls, Eigen::Index m, Eigen::Index n);
  static MatrixTuple sample(MatrixClass cls, Eigen::Index m, Eigen::Index n, RandomStream& rng);

  [[nodiscard]] MatrixClass matrix_class() const { return cls_; }
  [[nodiscard]] Eigen::Index m() const { return static_cast<Eigen::Index>(matrices_.size()); }
  [[nodiscard]] Eigen::Index n() const { return n_; }
  [[nodiscard]] const ComplexMatrix& operator[](Eigen::Index r) const { return matrices_[r]; }
  [[nodiscard]] const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

  /// Sum of squared Frobenius norms.
  [[nodiscard]] double energy() const;
  /// Same tuple multiplied by t (class membership is preserved, not rechecked).
  [[nodiscard]] MatrixTuple scaled(double t) const;
  /// Rescaled to unit energy; the zero tuple is returned unchanged.
  [[nodiscard]] MatrixTuple normalized() const;
  /// Relabels the tuple as another class it also belongs to (e.g. Hermitian
  /// as GeneralComplex). Throws ClassError if membership fails.
  [[nodiscard]] MatrixTuple as_class(MatrixClass cls) const;

  /// Skips the membership check, for hot loops whose inputs were already
  /// projected onto the class. Sizes must be uniform.
  static MatrixTuple unchecked(MatrixClass cls, Eigen::Index n, std::vector<ComplexMatrix> matrices);

private:
  MatrixTuple() = default;

  MatrixClass cls_ = MatrixClass::GeneralComplex;
  Eigen::Index n_ = 0;
  std::vector<ComplexMatrix> matrices_;
};

/// Element (P, R) of U(n) x O(m).
struct KElement {
  ComplexMatrix P;
  RealMatrix R;

  /// Validates unitarity/orthogonality within kOrthTol.
  KElement(ComplexMatrix P, RealMatrix R);

  static KElement identity(Eigen::Index n, Eigen::Index m);
  /// Random element suitable for the class: P is real orthogonal for the real
  /// classes so that the class stays closed under the action.
  static KElement sample(MatrixClass cls, Eigen::Index n, Eigen::Index m, RandomStream& rng);
};

/// (P, R) . (B_1..B_m): the r-th output is sum_j R(j, r) P* B_j P.
MatrixTuple k_act(const KElement& g, const MatrixTuple& T);

}  // namespace ddvv
