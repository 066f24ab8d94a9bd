#pragma once

#include <cstdint>
#include <vector>

#include "ddvv/execution.hpp"
#include "ddvv/ineq.hpp"

namespace ddvv {

using TupleGradient = std::vector<ComplexMatrix>;

/// Class-projected gradient of evaluate(T).ratio for the real Frobenius inner
/// product. Uses d/dB_r sum_{p,q} ||[B_p,B_q]||^2 = 4 sum_s [[B_r,B_s], B_s*].
/// Throws std::domain_error on a zero-energy tuple.
TupleGradient ratio_gradient(const MatrixTuple& T);

/// ratio through the unordered-pair sum; agrees with evaluate() up to rounding.
double fast_ratio(const MatrixTuple& T);

double tuple_inner(const TupleGradient& a, const TupleGradient& b);

struct GradientCheck {
  int samples = 0;
  /// max |fd - analytic| / (||grad|| ||D||) over random unit directions D.
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Central finite differences (step h) of the ratio along `samples` random
/// class directions, compared to ratio_gradient.
GradientCheck check_ratio_gradient(const MatrixTuple& T, RandomStream& rng, int samples = 4, double h = 1e-5);

struct SearchConfig {
  MatrixClass cls = MatrixClass::Hermitian;
  int m = 3;
  int n = 2;
  int restarts = 64;
  int max_iters = 2000;
  double step_init = 0.5;
  double step_shrink = 0.5;
  double grad_tol = 1e-8;
  std::uint64_t seed = 0;
  /// Extra starting tuples, run after the random restarts with the following
  /// restart indices.
  std::vector<MatrixTuple> warm_starts;
  bool record_trace = false;
  Execution exec = Execution::Parallel;

  /// Throws std::invalid_argument on a malformed configuration.
  void validate() const;
};

struct RestartResult {
  double start_ratio = 0.0;
  double best_ratio = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_grad_norm = 0.0;
  /// Ratio after each accepted iteration (index 0 = start), if recorded.
  std::vector<double> trace;
};

struct SearchReport {
  double best_ratio = 0.0;
  MatrixTuple best_tuple = MatrixTuple::zeros(MatrixClass::Hermitian, 1, 1);
  int best_restart = 0;
  std::vector<RestartResult> restarts;
  long long iterations_used = 0;
  GradientCheck gradient_check;
  SearchConfig config;
};

/// Multi-start projected-gradient ascent with backtracking on the unit-energy
/// sphere of the class. Each restart owns stream split(restart index); the
/// winner is the max by (ratio, lowest restart index), so reports do not
/// depend on the degree of parallelism. m = 1 (or a zero-dimensional class)
/// yields best_ratio 0.
SearchReport maximize_ratio(const SearchConfig& cfg);

/// One ascent run from a given start (the unit of work inside maximize_ratio).
RestartResult ascend(const MatrixTuple& start, const SearchConfig& cfg, MatrixTuple& best_out);

struct SimplexSearchConfig {
  int restarts = 16;
  int max_iters = 2000;
  double step_init = 0.1;
  double step_shrink = 0.5;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  /// Search over {x >= epsilon, sum x = 1}; 0 gives the full simplex.
  double epsilon = 0.0;
  /// Also start from every vertex of the (epsilon-)simplex.
  bool include_vertices = true;
  Execution exec = Execution::Parallel;
};

struct SimplexSearchResult {
  double best_value = 0.0;
  RealVector argmax;
  int best_start = 0;
  std::vector<double> start_values;
};

/// Euclidean projection onto {x >= epsilon, sum x = 1}.
RealVector project_to_simplex(const RealVector& v, double epsilon = 0.0);

/// Multi-start projected-gradient ascent of f_Q over the simplex. Reports the
/// best local maximum found, a lower bound on the supremum.
SimplexSearchResult maximize_fQ(const BasisRotation& Q, int n, const SimplexSearchConfig& cfg);
SimplexSearchResult maximize_fQ(const RealMatrix& norm_table, const SimplexSearchConfig& cfg);

/// Rotation whose first three columns are the coefficient vectors of the unit
/// Pauli triple diag(H_1,0), diag(H_2,0), diag(H_3,0) (lambda = 1/sqrt2), in SO(n^2).
BasisRotation equality_rotation(int n);

struct ConjectureReport {
  SearchReport search;
  double conjectured = 4.0 / 3.0;
  /// best_ratio - 4/3.
  double excess = 0.0;
  /// best_ratio > 4/3 + 1e-6.
  bool counterexample = false;
};

/// Searches GeneralComplex or GeneralReal tuples (m >= 3) for ratios above
/// 4/3. Unless disabled, the extremal triple of the class, (H_1,H_2,H_3) for
/// complex and (H_1,H_2,J) with J = [[0,1],[-1,0]] for real, is added as a
/// warm start.
ConjectureReport explore_conjecture(const SearchConfig& cfg, bool embed_extremal = true);

/// Extremal triple (padded with zeros to m) used as the conjecture warm start.
MatrixTuple conjecture_warm_start(MatrixClass cls, int m, int n);

}  // namespace ddvv
