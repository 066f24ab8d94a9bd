#pragma once

#include <optional>
#include <string>

#include "ddvv/basis.hpp"
#include "ddvv/exterior.hpp"

namespace ddvv {

/// Both sides of sum_{r,s} ||[B_r,B_s]||^2 <= c (sum_r ||B_r||^2)^2.
struct DdvvEvaluation {
  double lhs = 0.0;
  double energy = 0.0;
  /// lhs / energy^2, defined as 0 for the zero tuple.
  double ratio = 0.0;
};

/// lhs is the ordered double sum over (r, s), so each unordered pair counts twice.
DdvvEvaluation evaluate(const MatrixTuple& T);

struct Rational {
  long num = 0;
  long den = 1;

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ConstantStatus { Proved, Conjectured };

struct KnownConstant {
  MatrixClass cls;
  Rational c;
  ConstantStatus status;
  /// Human-readable case label, e.g. "m>=3, n>=4".
  std::string condition;
};

/// Best constant for (class, m, n), or nullopt where it is not settled.
/// Requires m >= 2 and n >= 2 (returns nullopt otherwise).
std::optional<KnownConstant> known_constant(MatrixClass cls, int m, int n);

/// f_Q(x) = sum x_a x_b ||[Q_a,Q_b]||^2 - 4/3 (sum x_a)^2 over the Hermitian
/// basis rotated by Q.
double f_Q(const RealVector& x, const BasisRotation& Q, int n);
/// Same, given the commutator norm table of the rotated basis.
double f_Q(const RealVector& x, const RealMatrix& norm_table);

/// Extremal configurations attaining the sharp constants:
///   Hermitian, m >= 3: diag(H_1,0), diag(H_2,0), diag(H_3,0), then zeros;
///   Hermitian, m == 2: diag(H_1,0), diag(cos(theta) H_2 + sin(theta) H_3, 0);
///   SkewHermitian: the same with H_j replaced by i H_j;
///   Symmetric, m >= 2: diag(A_1,0), diag(A_2,0), then zeros.
/// Throws ClassError for other classes, SizeError for n < 2 or m < 2.
MatrixTuple extremal_tuple(MatrixClass cls, int m, int n, double lambda, double theta = 0.0);

/// The 2x2 blocks H_1 = lambda sigma_z, H_2 = lambda sigma_x, H_3 = lambda sigma_y.
ComplexMatrix pauli_block(int which, double lambda);

/// 2 ||X||^2 ||Y||^2 - ||[X,Y]||^2, nonnegative for arbitrary complex X, Y.
double bw_check(const ComplexMatrix& X, const ComplexMatrix& Y);

struct EqualityDiagnostics {
  /// c * energy^2 - lhs.
  double residual = 0.0;
  double energy = 0.0;
  /// Eigenvalues of B B^t, descending.
  RealVector eigenvalues;
  /// Number of eigenvalues above 1e-8 * energy.
  int support_count = 0;
  bool top_equal = false;
  /// Structure of the top-eigenspace basis matrices (Hermitian-normalized).
  bool rank_two = false;
  bool traceless = false;
  bool anticommuting = false;
  bool common_projector = false;
  bool canonical = false;
};

/// Tests whether T sits on the equality orbit through invariants: residual,
/// support count (3 for m >= 3, 2 for m = 2), equal top eigenvalues, and the
/// Pauli-type structure of the top eigenvectors. Skew-Hermitian inputs are
/// analysed as -i T. Throws ClassError for other classes.
EqualityDiagnostics equality_diagnostics(const MatrixTuple& T, Rational c);

}  // namespace ddvv
