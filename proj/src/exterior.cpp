#include "ddvv/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace ddvv {

const std::vector<std::pair<int, int>>& pair_table(int d) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<std::pair<int, int>>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) {
    slot = std::make_unique<std::vector<std::pair<int, int>>>();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) slot->emplace_back(i, j);
    }
  }
  return *slot;
}

RealMatrix phi(const RealMatrix& A) {
  const auto& rows = pair_table(static_cast<int>(A.rows()));
  const auto& cols = pair_table(static_cast<int>(A.cols()));
  RealMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const auto [i, j] = rows[p];
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const auto [k, l] = cols[q];
      out(p, q) = A(i, k) * A(j, l) - A(i, l) * A(j, k);
    }
  }
  return out;
}

RealMatrix tuple_coefficients(const MatrixTuple& T, const BasisSet& basis) {
  if (T.n() != basis.n) throw SizeError("tuple_coefficients: basis side differs from tuple side");
  if (T.matrix_class() != basis.cls) throw ClassError("tuple_coefficients: basis class differs from tuple class");
  RealMatrix B(basis.size(), T.m());
  for (Eigen::Index r = 0; r < T.m(); ++r) {
    B.col(r) = basis_coefficients(T[r], basis);
    const double residual = (basis_combination(B.col(r), basis) - T[r]).norm();
    if (residual > 1e-12 * std::max(1.0, T[r].norm())) {
      throw ClassError("tuple_coefficients: basis does not span member " + std::to_string(r));
    }
  }
  return B;
}

RealMatrix gram_of_basis(const BasisSet& basis, Execution exec) {
  const auto& pairs = pair_table(static_cast<int>(basis.size()));
  const auto P = static_cast<Eigen::Index>(pairs.size());
  std::vector<ComplexMatrix> comms(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    comms[p] = commutator(basis.elements[pairs[p].first], basis.elements[pairs[p].second]);
  }

  RealMatrix C(P, P);
  if (exec == Execution::Serial) {
    for (Eigen::Index p = 0; p < P; ++p) {
      for (Eigen::Index q = p; q < P; ++q) {
        const double v = inner(comms[p], comms[q]);
        C(p, q) = v;
        C(q, p) = v;
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (Eigen::Index p = 0; p < P; ++p) {
      for (Eigen::Index q = p; q < P; ++q) {
        const double v = inner(comms[p], comms[q]);
        C(p, q) = v;
        C(q, p) = v;
      }
    }
  }
  return C;
}

RealMatrix gram_of_tuple(const MatrixTuple& T) {
  const auto& pairs = pair_table(static_cast<int>(T.m()));
  std::vector<ComplexMatrix> comms;
  comms.reserve(pairs.size());
  for (const auto& [r, s] : pairs) comms.push_back(commutator(T[r], T[s]));
  const auto P = static_cast<Eigen::Index>(pairs.size());
  RealMatrix C(P, P);
  for (Eigen::Index p = 0; p < P; ++p) {
    for (Eigen::Index q = p; q < P; ++q) {
      const double v = inner(comms[p], comms[q]);
      C(p, q) = v;
      C(q, p) = v;
    }
  }
  return C;
}

RealMatrix gram_of_tuple_via_phi(const MatrixTuple& T, const BasisSet& basis, const RealMatrix& basis_gram) {
  const RealMatrix B = tuple_coefficients(T, basis);
  if (basis_gram.rows() != binom2(basis.size())) throw SizeError("gram_of_tuple_via_phi: basis Gram size");
  const RealMatrix phiB = phi(B);
  return phiB.transpose() * basis_gram * phiB;
}

CoefficientSpectrum coefficient_spectrum(const RealMatrix& B) {
  const Eigen::Index N = B.rows();
  CoefficientSpectrum out;
  if (N == 0) {
    out.x = RealVector(0);
    out.Q = RealMatrix(0, 0);
    return out;
  }
  const RealMatrix BBt = B * B.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(BBt);
  if (solver.info() != Eigen::Success) throw std::runtime_error("coefficient_spectrum: eigendecomposition failed");

  std::vector<Eigen::Index> order(N);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const RealVector& evals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return evals(a) > evals(b); });

  out.x.resize(N);
  out.Q.resize(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    out.x(k) = evals(order[k]);
    RealVector v = solver.eigenvectors().col(order[k]);
    for (Eigen::Index r = 0; r < N; ++r) {
      if (std::abs(v(r)) > 1e-14) {
        if (v(r) < 0.0) v = -v;
        break;
      }
    }
    out.Q.col(k) = v;
  }
  return out;
}

ChainReport verify_transform_chain(const MatrixTuple& T) {
  const BasisSet basis = class_basis(T.matrix_class(), static_cast<int>(T.n()));
  return verify_transform_chain(T, basis, gram_of_basis(basis));
}

ChainReport verify_transform_chain(const MatrixTuple& T, const BasisSet& basis, const RealMatrix& basis_gram) {
  ChainReport report;

  double direct = 0.0;
  for (Eigen::Index r = 0; r < T.m(); ++r) {
    for (Eigen::Index s = 0; s < T.m(); ++s) direct += commutator(T[r], T[s]).squaredNorm();
  }
  report.values[0] = direct;

  const RealMatrix B = tuple_coefficients(T, basis);
  const RealMatrix phiB = phi(B);
  report.values[1] = 2.0 * (phiB.transpose() * basis_gram * phiB).trace();

  const RealMatrix phiBBt = phi(B * B.transpose());
  // tr(X C) = sum_pq X(p,q) C(q,p)
  report.values[2] = 2.0 * (phiBBt.cwiseProduct(basis_gram.transpose())).sum();

  const CoefficientSpectrum spec = coefficient_spectrum(B);
  report.eigenvalues = spec.x;
  report.min_eigenvalue = spec.x.size() > 0 ? spec.x.minCoeff() : 0.0;
  const BasisSet rotated = rotate_basis(basis, BasisRotation(spec.Q));
  const RealMatrix M = commutator_norm_table(rotated);
  report.values[3] = spec.x.dot(M * spec.x);

  double scale = 0.0;
  for (double v : report.values) scale = std::max(scale, std::abs(v));
  double dev = 0.0;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = p + 1; q < 4; ++q) dev = std::max(dev, std::abs(report.values[p] - report.values[q]));
  }
  report.max_rel_deviation = scale > 0.0 ? dev / std::max(scale, 1e-300) : 0.0;
  return report;
}

}  // namespace ddvv
