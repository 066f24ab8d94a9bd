#include "ddvv/ineq.hpp"

#include <algorithm>
#include <cmath>

namespace ddvv {

namespace {
const Complex kI(0.0, 1.0);
constexpr double kStructTol = 1e-8;
}  // namespace

DdvvEvaluation evaluate(const MatrixTuple& T) {
  DdvvEvaluation ev;
  for (Eigen::Index r = 0; r < T.m(); ++r) {
    for (Eigen::Index s = 0; s < T.m(); ++s) {
      if (r == s) continue;
      ev.lhs += commutator(T[r], T[s]).squaredNorm();
    }
  }
  ev.energy = T.energy();
  ev.ratio = ev.energy > 0.0 ? ev.lhs / (ev.energy * ev.energy) : 0.0;
  return ev;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<KnownConstant> known_constant(MatrixClass cls, int m, int n) {
  if (m < 2 || n < 2) return std::nullopt;
  const bool triple = m >= 3;
  switch (cls) {
    case MatrixClass::Symmetric:
      return KnownConstant{cls, {1, 1}, ConstantStatus::Proved, "m>=2, n>=2"};
    case MatrixClass::SkewSymmetric:
      // so(2) is one-dimensional: every commutator vanishes.
      if (n == 2) return KnownConstant{cls, {0, 1}, ConstantStatus::Proved, "n=2"};
      if (triple) {
        return n == 3 ? KnownConstant{cls, {1, 3}, ConstantStatus::Proved, "m>=3, n=3"}
                      : KnownConstant{cls, {2, 3}, ConstantStatus::Proved, "m>=3, n>=4"};
      }
      return n == 3 ? KnownConstant{cls, {1, 4}, ConstantStatus::Proved, "m=2, n=3"}
                    : KnownConstant{cls, {1, 2}, ConstantStatus::Proved, "m=2, n>=4"};
    case MatrixClass::Hermitian:
    case MatrixClass::SkewHermitian:
      return triple ? KnownConstant{cls, {4, 3}, ConstantStatus::Proved, "m>=3, n>=2"}
                    : KnownConstant{cls, {1, 1}, ConstantStatus::Proved, "m=2, n>=2"};
    case MatrixClass::GeneralComplex:
    case MatrixClass::GeneralReal:
      // m = 2 follows from ||[X,Y]||^2 <= 2||X||^2||Y||^2 and AM-GM.
      return triple ? KnownConstant{cls, {4, 3}, ConstantStatus::Conjectured, "m>=3, n>=2"}
                    : KnownConstant{cls, {1, 1}, ConstantStatus::Proved, "m=2, n>=2"};
  }
  return std::nullopt;
}

double f_Q(const RealVector& x, const RealMatrix& norm_table) {
  if (x.size() != norm_table.rows()) throw SizeError("f_Q: x length does not match basis size");
  const double total = x.sum();
  return x.dot(norm_table * x) - (4.0 / 3.0) * total * total;
}

double f_Q(const RealVector& x, const BasisRotation& Q, int n) {
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n;
  if (Q.size() != N) throw SizeError("f_Q: rotation size must be n^2");
  if (x.size() != N) throw SizeError("f_Q: x length must be n^2");
  return f_Q(x, commutator_norm_table(rotate_basis(hermitian_basis(n), Q)));
}

ComplexMatrix pauli_block(int which, double lambda) {
  ComplexMatrix H = ComplexMatrix::Zero(2, 2);
  switch (which) {
    case 1:
      H(0, 0) = lambda;
      H(1, 1) = -lambda;
      break;
    case 2:
      H(0, 1) = lambda;
      H(1, 0) = lambda;
      break;
    case 3:
      H(0, 1) = -lambda * kI;
      H(1, 0) = lambda * kI;
      break;
    default: throw SizeError("pauli_block: index must be 1, 2 or 3");
  }
  return H;
}

MatrixTuple extremal_tuple(MatrixClass cls, int m, int n, double lambda, double theta) {
  if (n < 2) throw SizeError("extremal_tuple: n must be at least 2");
  if (m < 2) throw SizeError("extremal_tuple: m must be at least 2");
  if (!(lambda >= 0.0)) throw SizeError("extremal_tuple: lambda must be nonnegative");

  auto embed = [n](const ComplexMatrix& block) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    out.topLeftCorner(2, 2) = block;
    return out;
  };

  std::vector<ComplexMatrix> mats(m, ComplexMatrix::Zero(n, n));
  switch (cls) {
    case MatrixClass::Hermitian:
    case MatrixClass::SkewHermitian: {
      const Complex unit = cls == MatrixClass::Hermitian ? Complex(1.0, 0.0) : kI;
      mats[0] = embed(unit * pauli_block(1, lambda));
      if (m >= 3) {
        mats[1] = embed(unit * pauli_block(2, lambda));
        mats[2] = embed(unit * pauli_block(3, lambda));
      } else {
        mats[1] = embed(unit * (std::cos(theta) * pauli_block(2, lambda) +
                                std::sin(theta) * pauli_block(3, lambda)));
      }
      break;
    }
    case MatrixClass::Symmetric:
      mats[0] = embed(pauli_block(1, lambda));
      mats[1] = embed(pauli_block(2, lambda));
      break;
    default:
      throw ClassError("extremal_tuple: no extremal configuration for class " + std::string(class_name(cls)));
  }
  return MatrixTuple(cls, std::move(mats));
}

double bw_check(const ComplexMatrix& X, const ComplexMatrix& Y) {
  const ComplexMatrix C = commutator(X, Y);
  return 2.0 * X.squaredNorm() * Y.squaredNorm() - C.squaredNorm();
}

EqualityDiagnostics equality_diagnostics(const MatrixTuple& T, Rational c) {
  const MatrixClass cls = T.matrix_class();
  if (cls != MatrixClass::Hermitian && cls != MatrixClass::SkewHermitian) {
    throw ClassError("equality_diagnostics: tuple must be Hermitian or skew-Hermitian");
  }
  std::vector<ComplexMatrix> herm;
  herm.reserve(T.m());
  for (const auto& B : T.matrices()) herm.push_back(cls == MatrixClass::Hermitian ? B : ComplexMatrix(-kI * B));
  const MatrixTuple H = MatrixTuple::unchecked(MatrixClass::Hermitian, T.n(), std::move(herm));

  EqualityDiagnostics d;
  const DdvvEvaluation ev = evaluate(H);
  d.energy = ev.energy;
  d.residual = c.value() * ev.energy * ev.energy - ev.lhs;

  const int n = static_cast<int>(T.n());
  const BasisSet basis = hermitian_basis(n);
  const RealMatrix B = tuple_coefficients(H, basis);
  const CoefficientSpectrum spec = coefficient_spectrum(B);
  d.eigenvalues = spec.x;

  const double tau = 1e-8 * ev.energy;
  for (Eigen::Index k = 0; k < spec.x.size(); ++k) {
    if (spec.x(k) > tau) ++d.support_count;
  }

  const int expected = T.m() >= 3 ? 3 : 2;
  if (ev.energy <= 0.0 || T.m() < 2 || spec.x.size() < expected) return d;

  const double top = spec.x(0);
  d.top_equal = (top - spec.x(expected - 1)) <= 1e-8 * top;

  std::vector<ComplexMatrix> Q;
  for (int k = 0; k < expected; ++k) Q.push_back(basis_combination(spec.Q.col(k), basis));

  d.rank_two = true;
  d.traceless = true;
  for (const auto& Qk : Q) {
    Eigen::JacobiSVD<ComplexMatrix> svd(Qk);
    const RealVector sv = svd.singularValues();
    const bool two = sv.size() >= 2 && sv(1) > kStructTol && (sv.size() < 3 || sv(2) <= kStructTol);
    d.rank_two = d.rank_two && two;
    d.traceless = d.traceless && std::abs(Qk.trace()) <= kStructTol;
  }

  d.anticommuting = true;
  for (int a = 0; a < expected; ++a) {
    for (int b = a + 1; b < expected; ++b) {
      d.anticommuting = d.anticommuting && (Q[a] * Q[b] + Q[b] * Q[a]).norm() <= kStructTol;
    }
  }

  // Unit-norm Pauli-type matrices square to half a rank-2 projector.
  const ComplexMatrix P = 2.0 * Q[0] * Q[0];
  d.common_projector = (P * P - P).norm() <= kStructTol && std::abs(P.trace() - 2.0) <= kStructTol;
  for (const auto& Qk : Q) d.common_projector = d.common_projector && (2.0 * Qk * Qk - P).norm() <= kStructTol;

  const bool equality = std::abs(d.residual) <= 1e-9 * ev.energy * ev.energy;
  d.canonical = equality && d.support_count == expected && d.top_equal && d.rank_two && d.traceless &&
                d.anticommuting && d.common_projector;
  return d;
}

}  // namespace ddvv
