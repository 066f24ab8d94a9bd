#include "ddvv/optim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ddvv {

namespace {
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e3;
}  // namespace

double tuple_inner(const TupleGradient& a, const TupleGradient& b) {
  if (a.size() != b.size()) throw SizeError("tuple_inner: length mismatch");
  double acc = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) acc += inner(a[r], b[r]);
  return acc;
}

double fast_ratio(const MatrixTuple& T) {
  const double e = T.energy();
  if (e == 0.0) return 0.0;
  double half = 0.0;
  for (Eigen::Index r = 0; r < T.m(); ++r) {
    for (Eigen::Index s = r + 1; s < T.m(); ++s) half += commutator(T[r], T[s]).squaredNorm();
  }
  return 2.0 * half / (e * e);
}

TupleGradient ratio_gradient(const MatrixTuple& T) {
  const Eigen::Index m = T.m();
  const Eigen::Index n = T.n();
  const double e = T.energy();
  if (e == 0.0) throw std::domain_error("ratio_gradient: zero-energy tuple");

  TupleGradient grad(m, ComplexMatrix::Zero(n, n));
  double lhs = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index s = r + 1; s < m; ++s) {
      const ComplexMatrix C = commutator(T[r], T[s]);
      lhs += 2.0 * C.squaredNorm();
      // [C_rs, B_s*] feeds B_r; C_sr = -C_rs feeds B_s.
      grad[r] += 4.0 * commutator(C, T[s].adjoint());
      grad[s] -= 4.0 * commutator(C, T[r].adjoint());
    }
  }
  const double inv_e2 = 1.0 / (e * e);
  const double radial = 4.0 * lhs / (e * e * e);
  for (Eigen::Index r = 0; r < m; ++r) {
    grad[r] = project(inv_e2 * grad[r] - radial * T[r], T.matrix_class());
  }
  return grad;
}

GradientCheck check_ratio_gradient(const MatrixTuple& T, RandomStream& rng, int samples, double h) {
  GradientCheck check;
  check.samples = samples;
  const TupleGradient g = ratio_gradient(T);
  const double gnorm = std::sqrt(tuple_inner(g, g));
  for (int k = 0; k < samples; ++k) {
    TupleGradient D;
    for (Eigen::Index r = 0; r < T.m(); ++r) D.push_back(sample_class(T.matrix_class(), T.n(), rng));
    const double dnorm = std::sqrt(tuple_inner(D, D));
    if (dnorm == 0.0) continue;
    for (auto& Dr : D) Dr /= dnorm;

    std::vector<ComplexMatrix> plus, minus;
    for (Eigen::Index r = 0; r < T.m(); ++r) {
      plus.push_back(T[r] + h * D[r]);
      minus.push_back(T[r] - h * D[r]);
    }
    const double fp = evaluate(MatrixTuple::unchecked(T.matrix_class(), T.n(), std::move(plus))).ratio;
    const double fm = evaluate(MatrixTuple::unchecked(T.matrix_class(), T.n(), std::move(minus))).ratio;
    const double fd = (fp - fm) / (2.0 * h);
    const double analytic = tuple_inner(g, D);
    const double scale = std::max(gnorm, 1e-12);
    check.max_rel_error = std::max(check.max_rel_error, std::abs(fd - analytic) / scale);
  }
  check.passed = check.max_rel_error <= 1e-5;
  return check;
}

void SearchConfig::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("SearchConfig: m and n must be positive");
  if (restarts < 0 || (restarts == 0 && warm_starts.empty())) {
    throw std::invalid_argument("SearchConfig: need at least one restart");
  }
  if (max_iters < 1) throw std::invalid_argument("SearchConfig: max_iters must be positive");
  if (!(step_init > 0.0)) throw std::invalid_argument("SearchConfig: step_init must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw std::invalid_argument("SearchConfig: step_shrink must lie in (0,1)");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SearchConfig: grad_tol must be positive");
  for (const auto& w : warm_starts) {
    if (w.m() != m || w.n() != n || w.matrix_class() != cls) {
      throw std::invalid_argument("SearchConfig: warm start does not match (class, m, n)");
    }
  }
}

namespace {

MatrixTuple retract(const MatrixTuple& T, const TupleGradient& g, double step) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(T.m());
  for (Eigen::Index r = 0; r < T.m(); ++r) mats.push_back(project(T[r] + step * g[r], T.matrix_class()));
  return MatrixTuple::unchecked(T.matrix_class(), T.n(), std::move(mats)).normalized();
}

}  // namespace

RestartResult ascend(const MatrixTuple& start, const SearchConfig& cfg, MatrixTuple& best_out) {
  RestartResult res;
  MatrixTuple T = start.normalized();
  double ratio = fast_ratio(T);
  res.start_ratio = ratio;
  if (cfg.record_trace) res.trace.push_back(ratio);

  if (T.energy() == 0.0 || T.m() < 2) {
    best_out = T;
    res.best_ratio = evaluate(T).ratio;
    res.converged = true;
    return res;
  }

  double step = cfg.step_init;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const TupleGradient g = ratio_gradient(T);
    const double gnorm = std::sqrt(tuple_inner(g, g));
    res.final_grad_norm = gnorm;
    if (gnorm < cfg.grad_tol) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= kMinStep) {
      MatrixTuple trial = retract(T, g, step);
      const double r = fast_ratio(trial);
      if (r > ratio) {
        T = std::move(trial);
        ratio = r;
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) {
      // No ascent at any representable step: numerically stationary.
      res.converged = true;
      break;
    }
    ++res.iterations;
    if (cfg.record_trace) res.trace.push_back(ratio);
    step = std::min(step / cfg.step_shrink, kMaxStep);
  }
  best_out = T;
  res.best_ratio = evaluate(T).ratio;
  return res;
}

SearchReport maximize_ratio(const SearchConfig& cfg) {
  cfg.validate();
  SearchReport report;
  report.config = cfg;

  const RandomStream root(cfg.seed);
  const int total = cfg.restarts + static_cast<int>(cfg.warm_starts.size());

  auto start_of = [&](int k) {
    if (k < cfg.restarts) {
      RandomStream rng = root.split(static_cast<std::uint64_t>(k));
      return MatrixTuple::sample(cfg.cls, cfg.m, cfg.n, rng);
    }
    return cfg.warm_starts[static_cast<std::size_t>(k - cfg.restarts)];
  };

  {
    // Validate the analytic gradient against finite differences before use.
    // A random probe rather than a start: warm starts may sit at critical
    // points, where the relative error is meaningless.
    RandomStream rng = root.split(~std::uint64_t{0});
    const MatrixTuple probe = MatrixTuple::sample(cfg.cls, cfg.m, cfg.n, rng);
    if (probe.energy() > 0.0 && probe.m() >= 2) {
      report.gradient_check = check_ratio_gradient(probe.normalized(), rng);
      if (!report.gradient_check.passed) {
        throw std::runtime_error("maximize_ratio: analytic gradient disagrees with finite differences");
      }
    } else {
      report.gradient_check.passed = true;
    }
  }

  std::vector<RestartResult> results(total);
  std::vector<MatrixTuple> bests(total, MatrixTuple::zeros(cfg.cls, cfg.m, cfg.n));
  if (cfg.exec == Execution::Serial) {
    for (int k = 0; k < total; ++k) results[k] = ascend(start_of(k), cfg, bests[k]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < total; ++k) results[k] = ascend(start_of(k), cfg, bests[k]);
  }

  int winner = 0;
  for (int k = 0; k < total; ++k) {
    report.iterations_used += results[k].iterations;
    if (results[k].best_ratio > results[winner].best_ratio) winner = k;
  }
  report.best_restart = winner;
  report.best_ratio = results[winner].best_ratio;
  report.best_tuple = bests[winner];
  report.restarts = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------
// Simplex

RealVector project_to_simplex(const RealVector& v, double epsilon) {
  const Eigen::Index N = v.size();
  if (N == 0) return v;
  const double radius = 1.0 - static_cast<double>(N) * epsilon;
  if (radius < 0.0) throw std::invalid_argument("project_to_simplex: epsilon too large");

  const RealVector shifted = v.array() - epsilon;
  std::vector<double> u(shifted.data(), shifted.data() + N);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    cumulative += u[j];
    const double t = (cumulative - radius) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  RealVector x = (shifted.array() - theta).cwiseMax(0.0);
  return x.array() + epsilon;
}

namespace {

struct SimplexOutcome {
  double value = 0.0;
  RealVector x;
};

SimplexOutcome ascend_simplex(const RealMatrix& M, RealVector x, const SimplexSearchConfig& cfg) {
  auto f = [&M](const RealVector& y) {
    const double s = y.sum();
    return y.dot(M * y) - (4.0 / 3.0) * s * s;
  };
  x = project_to_simplex(x, cfg.epsilon);
  double value = f(x);
  double step = cfg.step_init;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const RealVector grad = 2.0 * (M * x);  // the -8/3 (sum x) 1 term is normal to the simplex
    bool accepted = false;
    while (step >= kMinStep) {
      RealVector trial = project_to_simplex(x + step * grad, cfg.epsilon);
      const double moved = (trial - x).norm();
      if (moved <= cfg.tol) break;
      const double v = f(trial);
      if (v > value) {
        x = std::move(trial);
        value = v;
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) break;
    step = std::min(step / cfg.step_shrink, kMaxStep);
  }
  return {value, x};
}

}  // namespace

SimplexSearchResult maximize_fQ(const RealMatrix& M, const SimplexSearchConfig& cfg) {
  const Eigen::Index N = M.rows();
  if (M.cols() != N || N == 0) throw SizeError("maximize_fQ: norm table must be square and nonempty");
  if (cfg.restarts < 0 || cfg.max_iters < 1 || !(cfg.step_shrink > 0.0 && cfg.step_shrink < 1.0)) {
    throw std::invalid_argument("maximize_fQ: invalid configuration");
  }

  std::vector<RealVector> starts;
  if (cfg.include_vertices) {
    for (Eigen::Index a = 0; a < N; ++a) starts.push_back(RealVector::Unit(N, a));
  }
  const RandomStream root(cfg.seed);
  for (int k = 0; k < cfg.restarts; ++k) {
    RandomStream rng = root.split(static_cast<std::uint64_t>(k));
    // Flat Dirichlet draw via normalized exponentials.
    RealVector x(N);
    for (Eigen::Index a = 0; a < N; ++a) x(a) = -std::log(rng.uniform_open_low());
    starts.push_back(x / x.sum());
  }
  if (starts.empty()) throw std::invalid_argument("maximize_fQ: no starting points");

  const int total = static_cast<int>(starts.size());
  std::vector<SimplexOutcome> outcomes(total);
  if (cfg.exec == Execution::Serial) {
    for (int k = 0; k < total; ++k) outcomes[k] = ascend_simplex(M, starts[k], cfg);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < total; ++k) outcomes[k] = ascend_simplex(M, starts[k], cfg);
  }

  SimplexSearchResult res;
  int winner = 0;
  for (int k = 0; k < total; ++k) {
    res.start_values.push_back(outcomes[k].value);
    if (outcomes[k].value > outcomes[winner].value) winner = k;
  }
  res.best_start = winner;
  res.best_value = outcomes[winner].value;
  res.argmax = outcomes[winner].x;
  return res;
}

SimplexSearchResult maximize_fQ(const BasisRotation& Q, int n, const SimplexSearchConfig& cfg) {
  if (Q.size() != static_cast<Eigen::Index>(n) * n) throw SizeError("maximize_fQ: rotation size must be n^2");
  return maximize_fQ(commutator_norm_table(rotate_basis(hermitian_basis(n), Q)), cfg);
}

BasisRotation equality_rotation(int n) {
  if (n < 2) throw SizeError("equality_rotation: n must be at least 2");
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n;
  RealMatrix lead = RealMatrix::Zero(N, 3);
  const double s = std::sqrt(0.5);
  lead(flat_index({1, 1}, n) - 1, 0) = s;
  lead(flat_index({2, 2}, n) - 1, 0) = -s;
  lead(flat_index({1, 2}, n) - 1, 1) = 1.0;
  lead(flat_index({2, 1}, n) - 1, 2) = 1.0;

  RealMatrix seed(N, N + 3);
  seed << lead, RealMatrix::Identity(N, N);
  Eigen::HouseholderQR<RealMatrix> qr(seed);
  RealMatrix Q = qr.householderQ() * RealMatrix::Identity(N, N);
  // The trailing columns are already orthogonal to span(lead); pin the
  // leading ones exactly (QR may flip their signs).
  Q.leftCols(3) = lead;
  return BasisRotation(std::move(Q)).to_special();
}

// ---------------------------------------------------------------------------

MatrixTuple conjecture_warm_start(MatrixClass cls, int m, int n) {
  if (cls != MatrixClass::GeneralComplex && cls != MatrixClass::GeneralReal) {
    throw ClassError("conjecture_warm_start: class must be complex or real");
  }
  if (m < 3 || n < 2) throw SizeError("conjecture_warm_start: need m >= 3 and n >= 2");
  std::vector<ComplexMatrix> mats(m, ComplexMatrix::Zero(n, n));
  mats[0].topLeftCorner(2, 2) = pauli_block(1, 1.0);
  mats[1].topLeftCorner(2, 2) = pauli_block(2, 1.0);
  if (cls == MatrixClass::GeneralComplex) {
    mats[2].topLeftCorner(2, 2) = pauli_block(3, 1.0);
  } else {
    mats[2](0, 1) = 1.0;
    mats[2](1, 0) = -1.0;
  }
  return MatrixTuple(cls, std::move(mats));
}

ConjectureReport explore_conjecture(const SearchConfig& cfg_in, bool embed_extremal) {
  if (cfg_in.cls != MatrixClass::GeneralComplex && cfg_in.cls != MatrixClass::GeneralReal) {
    throw std::invalid_argument("explore_conjecture: class must be complex or real");
  }
  if (cfg_in.m < 3) throw std::invalid_argument("explore_conjecture: m must be at least 3");
  SearchConfig cfg = cfg_in;
  if (embed_extremal && cfg.n >= 2) cfg.warm_starts.push_back(conjecture_warm_start(cfg.cls, cfg.m, cfg.n));

  ConjectureReport out;
  out.search = maximize_ratio(cfg);
  out.excess = out.search.best_ratio - out.conjectured;
  out.counterexample = out.search.best_ratio > out.conjectured + 1e-6;
  return out;
}

}  // namespace ddvv
