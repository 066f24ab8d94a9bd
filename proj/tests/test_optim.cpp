#include <cmath>

#include <gtest/gtest.h>

#include "ddvv/optim.hpp"

using namespace ddvv;

namespace {

double grad_norm(const TupleGradient& g) { return std::sqrt(tuple_inner(g, g)); }

SearchConfig small_search(MatrixClass cls, int m, int n, int restarts = 8) {
  SearchConfig cfg;
  cfg.cls = cls;
  cfg.m = m;
  cfg.n = n;
  cfg.restarts = restarts;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST(Gradient, MatchesCentralDifferences) {
  RandomStream rng(71);
  for (MatrixClass cls : kAllClasses) {
    const MatrixTuple T = MatrixTuple::sample(cls, 3, 3, rng);
    const GradientCheck c = check_ratio_gradient(T, rng, 6);
    EXPECT_TRUE(c.passed) << class_name(cls) << " err=" << c.max_rel_error;
    EXPECT_LE(c.max_rel_error, 1e-5);
  }
}

TEST(Gradient, IndependentDirectionalDerivative) {
  // One direction, differenced here rather than through check_ratio_gradient.
  RandomStream rng(72);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::Hermitian, 3, 2, rng);
  const MatrixTuple D = MatrixTuple::sample(MatrixClass::Hermitian, 3, 2, rng).normalized();
  const double h = 1e-5;
  std::vector<ComplexMatrix> plus, minus;
  for (int r = 0; r < 3; ++r) {
    plus.push_back(T[r] + h * D[r]);
    minus.push_back(T[r] - h * D[r]);
  }
  const double fd = (evaluate(MatrixTuple(MatrixClass::Hermitian, plus)).ratio -
                     evaluate(MatrixTuple(MatrixClass::Hermitian, minus)).ratio) / (2 * h);
  const TupleGradient g = ratio_gradient(T);
  EXPECT_NEAR(tuple_inner(g, D.matrices()), fd, 1e-5 * grad_norm(g));
}

TEST(Gradient, RadialDirectionIsFlat) {
  RandomStream rng(73);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::GeneralComplex, 4, 3, rng);
  const TupleGradient g = ratio_gradient(T);
  EXPECT_NEAR(tuple_inner(g, T.matrices()), 0.0, 1e-12 * grad_norm(g) * std::sqrt(T.energy()));
}

TEST(Gradient, VanishesAtExtremalTuple) {
  EXPECT_LE(grad_norm(ratio_gradient(extremal_tuple(MatrixClass::Hermitian, 3, 2, 1.0))), 1e-6);
  EXPECT_THROW(ratio_gradient(MatrixTuple::zeros(MatrixClass::Hermitian, 3, 2)), std::domain_error);
}

TEST(Gradient, FastRatioAgrees) {
  RandomStream rng(74);
  const MatrixTuple T = MatrixTuple::sample(MatrixClass::GeneralReal, 4, 4, rng);
  EXPECT_NEAR(fast_ratio(T), evaluate(T).ratio, 1e-13);
}

TEST(Search, HermitianTriple) {
  SearchConfig cfg = small_search(MatrixClass::Hermitian, 3, 2, 16);
  const SearchReport r = maximize_ratio(cfg);
  EXPECT_GE(r.best_ratio, 4.0 / 3.0 - 1e-3);
  EXPECT_LE(r.best_ratio, 4.0 / 3.0 + 1e-6);
  EXPECT_TRUE(r.gradient_check.passed);
  EXPECT_NEAR(r.best_tuple.energy(), 1.0, 1e-12);
  EXPECT_NEAR(evaluate(r.best_tuple).ratio, r.best_ratio, 1e-14);
}

TEST(Search, SkewSymmetricPair) {
  const SearchReport r = maximize_ratio(small_search(MatrixClass::SkewSymmetric, 2, 3, 16));
  EXPECT_NEAR(r.best_ratio, 0.25, 1e-3);
}

TEST(Search, SymmetricPair) {
  const SearchReport r = maximize_ratio(small_search(MatrixClass::Symmetric, 2, 2, 16));
  EXPECT_NEAR(r.best_ratio, 1.0, 1e-3);
}

TEST(Search, SingleMatrixGivesZero) {
  const SearchReport r = maximize_ratio(small_search(MatrixClass::Hermitian, 1, 3));
  EXPECT_EQ(r.best_ratio, 0.0);
}

TEST(Search, TracesAreMonotone) {
  SearchConfig cfg = small_search(MatrixClass::Hermitian, 3, 3, 4);
  cfg.record_trace = true;
  const SearchReport r = maximize_ratio(cfg);
  for (const RestartResult& rr : r.restarts) {
    ASSERT_FALSE(rr.trace.empty());
    EXPECT_EQ(rr.trace.front(), rr.start_ratio);
    for (std::size_t k = 1; k < rr.trace.size(); ++k) EXPECT_GE(rr.trace[k], rr.trace[k - 1]);
    EXPECT_GE(rr.best_ratio, rr.start_ratio);
  }
}

TEST(Search, SerialAndParallelAgreeExactly) {
  SearchConfig cfg = small_search(MatrixClass::GeneralComplex, 3, 2, 6);
  cfg.exec = Execution::Serial;
  const SearchReport s = maximize_ratio(cfg);
  cfg.exec = Execution::Parallel;
  const SearchReport p = maximize_ratio(cfg);
  EXPECT_EQ(s.best_ratio, p.best_ratio);
  EXPECT_EQ(s.best_restart, p.best_restart);
  EXPECT_EQ(s.iterations_used, p.iterations_used);
  for (Eigen::Index r = 0; r < s.best_tuple.m(); ++r) EXPECT_TRUE(s.best_tuple[r] == p.best_tuple[r]);
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.step_shrink = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.n = 0;
  EXPECT_THROW(maximize_ratio(cfg), std::invalid_argument);
}

TEST(Search, ZeroWarmStartIsHandled) {
  SearchConfig cfg = small_search(MatrixClass::GeneralComplex, 3, 2, 0);
  cfg.warm_starts.push_back(MatrixTuple::zeros(MatrixClass::GeneralComplex, 3, 2));
  const SearchReport r = maximize_ratio(cfg);
  ASSERT_EQ(r.restarts.size(), 1u);
  EXPECT_EQ(r.restarts[0].best_ratio, 0.0);
}

TEST(Search, HermitianEmbeddingKeepsSharpValue) {
  SearchConfig cfg = small_search(MatrixClass::GeneralComplex, 3, 2, 0);
  cfg.warm_starts.push_back(extremal_tuple(MatrixClass::Hermitian, 3, 2, 1.0).as_class(MatrixClass::GeneralComplex));
  const SearchReport r = maximize_ratio(cfg);
  EXPECT_GE(r.best_ratio, 4.0 / 3.0 - 1e-9);
}

TEST(Conjecture, ProbeStaysAtFourThirds) {
  SearchConfig cfg = small_search(MatrixClass::GeneralComplex, 3, 2, 8);
  const ConjectureReport c = explore_conjecture(cfg);
  EXPECT_FALSE(c.counterexample);
  EXPECT_GE(c.search.best_ratio, 4.0 / 3.0 - 1e-3);
  EXPECT_LE(c.search.best_ratio, 4.0 / 3.0 + 1e-6);
  const MatrixTuple real = conjecture_warm_start(MatrixClass::GeneralReal, 3, 3);
  EXPECT_NEAR(evaluate(real).ratio, 4.0 / 3.0, 1e-12);
}

TEST(Simplex, ProjectionProperties) {
  RealVector v(4);
  v << 0.9, -0.3, 0.4, 0.1;
  const RealVector p = project_to_simplex(v);
  EXPECT_NEAR(p.sum(), 1.0, 1e-14);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_LE((project_to_simplex(p) - p).norm(), 1e-15);
  const RealVector q = project_to_simplex(v, 0.05);
  EXPECT_GE(q.minCoeff(), 0.05 - 1e-15);
  EXPECT_NEAR(q.sum(), 1.0, 1e-14);
  // Brute force on a fine grid of the 2-simplex.
  RealVector w(3);
  w << 0.7, 0.6, -0.2;
  const RealVector pw = project_to_simplex(w);
  double best = 1e300;
  for (int a = 0; a <= 400; ++a) {
    for (int b = 0; a + b <= 400; ++b) {
      RealVector x(3);
      x << a / 400.0, b / 400.0, (400 - a - b) / 400.0;
      best = std::min(best, (x - w).squaredNorm());
    }
  }
  EXPECT_LE((pw - w).squaredNorm(), best + 1e-12);
}

TEST(Simplex, IdentityRotationStaysBelowMinusThird) {
  SimplexSearchConfig cfg;
  cfg.epsilon = 0.01;
  for (int n = 2; n <= 3; ++n) {
    const SimplexSearchResult r = maximize_fQ(BasisRotation::identity(n * n), n, cfg);
    EXPECT_LE(r.best_value, -1.0 / 3.0 + 1e-6) << "n=" << n;
    EXPECT_GE(r.argmax.minCoeff(), 0.01 - 1e-12);
  }
}

TEST(Simplex, EqualityRotationReachesZero) {
  for (int n = 2; n <= 3; ++n) {
    const BasisRotation Q = equality_rotation(n);
    EXPECT_NEAR(Q.determinant(), 1.0, 1e-10);
    RealVector y = RealVector::Zero(n * n);
    y.head(3).setConstant(1.0 / 3.0);
    EXPECT_NEAR(f_Q(y, Q, n), 0.0, 1e-9);
    const SimplexSearchResult r = maximize_fQ(Q, n, SimplexSearchConfig{});
    EXPECT_NEAR(r.best_value, 0.0, 1e-8);
  }
}

TEST(Simplex, RandomRotationsNeverPositive) {
  RandomStream rng(75);
  SimplexSearchConfig cfg;
  cfg.restarts = 4;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 2;
    const BasisRotation Q = BasisRotation::sample_special(n * n, rng);
    EXPECT_LE(maximize_fQ(Q, n, cfg).best_value, 1e-8);
  }
}

TEST(Simplex, SerialAndParallelAgree) {
  RandomStream rng(76);
  const BasisRotation Q = BasisRotation::sample_special(9, rng);
  SimplexSearchConfig cfg;
  cfg.exec = Execution::Serial;
  const SimplexSearchResult s = maximize_fQ(Q, 3, cfg);
  cfg.exec = Execution::Parallel;
  const SimplexSearchResult p = maximize_fQ(Q, 3, cfg);
  EXPECT_EQ(s.best_value, p.best_value);
  EXPECT_EQ(s.start_values, p.start_values);
}
