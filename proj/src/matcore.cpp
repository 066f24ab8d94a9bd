#include "ddvv/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <omp.h>

#include "ddvv/execution.hpp"

namespace ddvv {

namespace {
int g_thread_limit = 0;
}

void set_thread_limit(int threads) {
  g_thread_limit = std::max(0, threads);
  if (g_thread_limit > 0) omp_set_num_threads(g_thread_limit);
}

int thread_limit() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

std::string_view class_name(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::Symmetric: return "symmetric";
    case MatrixClass::SkewSymmetric: return "skew-symmetric";
    case MatrixClass::Hermitian: return "hermitian";
    case MatrixClass::SkewHermitian: return "skew-hermitian";
    case MatrixClass::GeneralComplex: return "complex";
    case MatrixClass::GeneralReal: return "real";
  }
  return "unknown";
}

std::optional<MatrixClass> parse_class(std::string_view name) {
  for (MatrixClass cls : kAllClasses) {
    if (class_name(cls) == name) return cls;
  }
  return std::nullopt;
}

bool is_real_class(MatrixClass cls) {
  return cls == MatrixClass::Symmetric || cls == MatrixClass::SkewSymmetric ||
         cls == MatrixClass::GeneralReal;
}

Eigen::Index class_dimension(MatrixClass cls, Eigen::Index n) {
  switch (cls) {
    case MatrixClass::Symmetric: return n * (n + 1) / 2;
    case MatrixClass::SkewSymmetric: return n * (n - 1) / 2;
    case MatrixClass::Hermitian:
    case MatrixClass::SkewHermitian:
    case MatrixClass::GeneralReal: return n * n;
    case MatrixClass::GeneralComplex: return 2 * n * n;
  }
  return 0;
}

ComplexMatrix project(const ComplexMatrix& A, MatrixClass cls) {
  switch (cls) {
    case MatrixClass::Symmetric: {
      const RealMatrix re = A.real();
      return (0.5 * (re + re.transpose())).cast<Complex>();
    }
    case MatrixClass::SkewSymmetric: {
      const RealMatrix re = A.real();
      return (0.5 * (re - re.transpose())).cast<Complex>();
    }
    case MatrixClass::Hermitian: return 0.5 * (A + A.adjoint());
    case MatrixClass::SkewHermitian: return 0.5 * (A - A.adjoint());
    case MatrixClass::GeneralComplex: return A;
    case MatrixClass::GeneralReal: return A.real().cast<Complex>();
  }
  return A;
}

double class_defect(const ComplexMatrix& A, MatrixClass cls) {
  return (A - project(A, cls)).norm();
}

bool in_class(const ComplexMatrix& A, MatrixClass cls) {
  if (A.rows() != A.cols()) return false;
  if (!A.allFinite()) return false;
  return class_defect(A, cls) <= membership_tol(A.rows()) * std::max(1.0, A.norm());
}

ComplexMatrix commutator(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw SizeError("commutator: operands must be square of equal side");
  }
  return A * B - B * A;
}

double inner(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw SizeError("inner: operands must have equal shape");
  }
  // Re tr(A B*) = Re sum_ij A_ij conj(B_ij)
  double acc = 0.0;
  const Eigen::Index size = A.size();
  const Complex* a = A.data();
  const Complex* b = B.data();
  for (Eigen::Index k = 0; k < size; ++k) {
    acc += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
  }
  return acc;
}

double norm_sq(const ComplexMatrix& A) { return A.squaredNorm(); }

ComplexMatrix sample_class(MatrixClass cls, Eigen::Index n, RandomStream& rng) {
  ComplexMatrix A(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      A(i, j) = Complex(re, im);
    }
  }
  return project(A, cls);
}

ComplexMatrix sample_unitary(Eigen::Index n, RandomStream& rng) {
  ComplexMatrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      G(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& R = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(R(k, k));
    const Complex phase = mag > 0.0 ? R(k, k) / mag : Complex(1.0, 0.0);
    Q.col(k) *= phase;
  }
  return Q;
}

RealMatrix sample_orthogonal(Eigen::Index n, RandomStream& rng) {
  RealMatrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<RealMatrix> qr(G);
  RealMatrix Q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix& R = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (R(k, k) < 0.0) Q.col(k) = -Q.col(k);
  }
  return Q;
}

double orthogonality_defect(const ComplexMatrix& P) {
  return (P.adjoint() * P - ComplexMatrix::Identity(P.cols(), P.cols())).norm();
}

double orthogonality_defect(const RealMatrix& R) {
  return (R.transpose() * R - RealMatrix::Identity(R.cols(), R.cols())).norm();
}

// ---------------------------------------------------------------------------
// MatrixTuple

MatrixTuple::MatrixTuple(MatrixClass cls, std::vector<ComplexMatrix> matrices)
    : cls_(cls), matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw SizeError("MatrixTuple: need at least one matrix");
  n_ = matrices_.front().rows();
  if (n_ < 1) throw SizeError("MatrixTuple: side must be positive");
  for (std::size_t r = 0; r < matrices_.size(); ++r) {
    const ComplexMatrix& B = matrices_[r];
    if (B.rows() != n_ || B.cols() != n_) {
      throw SizeError("MatrixTuple: member " + std::to_string(r) + " has mismatched size");
    }
    if (!in_class(B, cls_)) {
      throw ClassError("MatrixTuple: member " + std::to_string(r) + " is not " +
                       std::string(class_name(cls_)));
    }
  }
}

MatrixTuple MatrixTuple::unchecked(MatrixClass cls, Eigen::Index n,
                                   std::vector<ComplexMatrix> matrices) {
  MatrixTuple T;
  T.cls_ = cls;
  T.n_ = n;
  T.matrices_ = std::move(matrices);
  return T;
}

MatrixTuple MatrixTuple::zeros(MatrixClass cls, Eigen::Index m, Eigen::Index n) {
  if (m < 1 || n < 1) throw SizeError("MatrixTuple::zeros: m and n must be positive");
  return unchecked(cls, n, std::vector<ComplexMatrix>(m, ComplexMatrix::Zero(n, n)));
}

MatrixTuple MatrixTuple::sample(MatrixClass cls, Eigen::Index m, Eigen::Index n,
                                RandomStream& rng) {
  if (m < 1 || n < 1) throw SizeError("MatrixTuple::sample: m and n must be positive");
  std::vector<ComplexMatrix> mats;
  mats.reserve(m);
  for (Eigen::Index r = 0; r < m; ++r) mats.push_back(sample_class(cls, n, rng));
  return unchecked(cls, n, std::move(mats));
}

double MatrixTuple::energy() const {
  double e = 0.0;
  for (const auto& B : matrices_) e += B.squaredNorm();
  return e;
}

MatrixTuple MatrixTuple::scaled(double t) const {
  std::vector<ComplexMatrix> mats;
  mats.reserve(matrices_.size());
  for (const auto& B : matrices_) mats.push_back(t * B);
  return unchecked(cls_, n_, std::move(mats));
}

MatrixTuple MatrixTuple::normalized() const {
  const double e = energy();
  if (e == 0.0) return *this;
  return scaled(1.0 / std::sqrt(e));
}

MatrixTuple MatrixTuple::as_class(MatrixClass cls) const { return MatrixTuple(cls, matrices_); }

// ---------------------------------------------------------------------------
// K-action

KElement::KElement(ComplexMatrix P_, RealMatrix R_) : P(std::move(P_)), R(std::move(R_)) {
  if (P.rows() != P.cols() || R.rows() != R.cols()) throw SizeError("KElement: P and R must be square");
  if (orthogonality_defect(P) > kOrthTol) throw ClassError("KElement: P is not unitary");
  if (orthogonality_defect(R) > kOrthTol) throw ClassError("KElement: R is not orthogonal");
}

KElement KElement::identity(Eigen::Index n, Eigen::Index m) {
  return KElement(ComplexMatrix::Identity(n, n), RealMatrix::Identity(m, m));
}

KElement KElement::sample(MatrixClass cls, Eigen::Index n, Eigen::Index m, RandomStream& rng) {
  ComplexMatrix P = is_real_class(cls) ? ComplexMatrix(sample_orthogonal(n, rng).cast<Complex>())
                                       : sample_unitary(n, rng);
  RealMatrix R = sample_orthogonal(m, rng);
  return KElement(std::move(P), std::move(R));
}

MatrixTuple k_act(const KElement& g, const MatrixTuple& T) {
  const Eigen::Index n = T.n();
  const Eigen::Index m = T.m();
  if (g.P.rows() != n || g.R.rows() != m) throw SizeError("k_act: group element does not match tuple");

  std::vector<ComplexMatrix> conj;
  conj.reserve(m);
  for (Eigen::Index j = 0; j < m; ++j) conj.push_back(g.P.adjoint() * T[j] * g.P);

  std::vector<ComplexMatrix> out(m, ComplexMatrix::Zero(n, n));
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index j = 0; j < m; ++j) out[r] += g.R(j, r) * conj[j];
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    if (!in_class(out[r], T.matrix_class())) {
      throw ClassError("k_act: group element does not preserve the tuple's class");
    }
  }
  return MatrixTuple::unchecked(T.matrix_class(), n, std::move(out));
}

}  // namespace ddvv
