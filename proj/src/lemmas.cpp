#include "ddvv/lemmas.hpp"

#include <algorithm>
#include <functional>

namespace ddvv {

SpectrumVector::SpectrumVector(RealVector values) : values_(std::move(values)) {
  if (values_.size() == 0) throw SizeError("SpectrumVector: empty input");
  const double norm = values_.norm();
  if (!(norm > 0.0)) throw SizeError("SpectrumVector: input must be nonzero");
  values_ /= norm;
  std::sort(values_.data(), values_.data() + values_.size(), std::greater<>());
}

ThresholdSets threshold_sets(const SpectrumVector& lambda) {
  ThresholdSets s;
  const int n = lambda.size();
  for (int j = 1; j <= n; ++j) {
    if (lambda(1) - lambda(j) > kGapThreshold) s.I1.insert(j);
    if (lambda(j) - lambda(n) > kGapThreshold) s.I2.insert(j);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (lambda(i) - lambda(j) > kGapThreshold) s.I.insert({i, j});
    }
  }
  s.n0 = static_cast<int>(s.I.size());
  return s;
}

bool check_lemma1(const SpectrumVector& lambda) {
  const ThresholdSets s = threshold_sets(lambda);
  const int n = lambda.size();
  std::set<IndexPair> row, col;
  for (int j : s.I1) row.insert({1, j});
  for (int i : s.I2) col.insert({i, n});
  return s.I == row || s.I == col;
}

double lemma2_lhs(const SpectrumVector& lambda) {
  double sum = 0.0;
  for (const auto& [i, j] : threshold_sets(lambda).I) {
    const double gap = lambda(i) - lambda(j);
    sum += gap * gap - 4.0 / 3.0;
  }
  return sum;
}

bool lemma2_equality(const SpectrumVector& lambda) { return std::abs(lemma2_lhs(lambda) - 2.0 / 3.0) <= 1e-10; }

RealVector rotated_commutator_row(const BasisSet& rotated, int alpha) {
  if (alpha < 1 || alpha > rotated.size()) throw SizeError("rotated_commutator_row: alpha out of range");
  const ComplexMatrix& Qa = rotated.elements[alpha - 1];
  RealVector row(rotated.size());
  for (Eigen::Index b = 0; b < rotated.size(); ++b) row(b) = commutator(Qa, rotated.elements[b]).squaredNorm();
  return row;
}

namespace {

void check_rotation(const BasisRotation& Q, int n) {
  if (Q.size() != static_cast<Eigen::Index>(n) * n) throw SizeError("rotation size must be n^2");
}

double lemma3_from_row(const RealVector& row, const std::set<int>& J) {
  double sum = 0.0;
  for (int b : J) {
    if (b < 1 || b > row.size()) throw SizeError("lemma3: J member out of range");
    sum += row(b - 1) - 4.0 / 3.0;
  }
  return sum;
}

double lemma4_closed_form(const BasisRotation& Q, int alpha, int n) {
  const auto col = Q.matrix().col(alpha - 1);
  double trace = 0.0;
  for (int i = 1; i <= n; ++i) trace += col(flat_index({i, i}, n) - 1);
  return 2.0 * n * col.squaredNorm() - 2.0 * trace * trace;
}

}  // namespace

double lemma3_lhs(const BasisRotation& Q, int alpha, const std::set<int>& J, int n) {
  check_rotation(Q, n);
  const BasisSet rotated = rotate_basis(hermitian_basis(n), Q);
  return lemma3_from_row(rotated_commutator_row(rotated, alpha), J);
}

Lemma4Value lemma4_lhs(const BasisRotation& Q, int alpha, int n) {
  check_rotation(Q, n);
  const BasisSet rotated = rotate_basis(hermitian_basis(n), Q);
  return {rotated_commutator_row(rotated, alpha).sum(), lemma4_closed_form(Q, alpha, n)};
}

SpectrumVector sample_spectrum(int n, RandomStream& rng) {
  RealVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  // Zeroing a random subset concentrates mass on few entries, which is where
  // the 2/sqrt3 gaps appear.
  if (n > 2 && rng.uniform() < 0.5) {
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.5) v(i) = 0.0;
    }
  }
  if (v.norm() == 0.0) v(0) = 1.0;
  return SpectrumVector(std::move(v));
}

namespace {

struct TrialOutcome {
  bool l1_ok = true;
  double l2 = 0.0;
  double l3_max = 0.0;
  double l3_random = 0.0;
  Lemma4Value l4;
};

TrialOutcome run_trial(int n, const BasisSet& herm, RandomStream rng) {
  TrialOutcome out;
  const SpectrumVector lambda = sample_spectrum(n, rng);
  out.l1_ok = check_lemma1(lambda);
  out.l2 = lemma2_lhs(lambda);

  const int N = n * n;
  const BasisRotation Q(sample_orthogonal(N, rng));
  const int alpha = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
  const BasisSet rotated = rotate_basis(herm, Q);
  const RealVector row = rotated_commutator_row(rotated, alpha);

  std::set<int> positive, random_subset;
  for (int b = 1; b <= N; ++b) {
    if (row(b - 1) > 4.0 / 3.0) positive.insert(b);
    if (rng.uniform() < 0.5) random_subset.insert(b);
  }
  out.l3_max = lemma3_from_row(row, positive);
  out.l3_random = lemma3_from_row(row, random_subset);
  out.l4 = {row.sum(), lemma4_closed_form(Q, alpha, n)};
  return out;
}

void record(LemmaStats& s, double value, double bound, double tol) {
  ++s.trials;
  s.max_value = std::max(s.max_value, value);
  s.min_slack = std::min(s.min_slack, bound - value);
  if (value > bound + tol) ++s.violations;
}

}  // namespace

LemmaTrialSummary run_lemma_trials(int n, long long trials, std::uint64_t seed, Execution exec) {
  if (n < 1) throw SizeError("run_lemma_trials: n must be positive");
  if (trials < 1) throw SizeError("run_lemma_trials: trials must be positive");

  const BasisSet herm = hermitian_basis(n);
  const RandomStream root(seed);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

  if (exec == Execution::Serial) {
    for (long long t = 0; t < trials; ++t) outcomes[t] = run_trial(n, herm, root.split(t));
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (long long t = 0; t < trials; ++t) outcomes[t] = run_trial(n, herm, root.split(t));
  }

  // Reduction in trial order so both paths agree bit for bit.
  LemmaTrialSummary summary;
  summary.n = n;
  for (const TrialOutcome& o : outcomes) {
    ++summary.lemma1.trials;
    if (!o.l1_ok) ++summary.lemma1.violations;
    record(summary.lemma2, o.l2, 2.0 / 3.0, 1e-12);
    record(summary.lemma3, std::max(o.l3_max, o.l3_random), 4.0 / 3.0, 1e-9);
    record(summary.lemma4, o.l4.direct, 2.0 * n, 1e-9);
    const double cross = std::abs(o.l4.direct - o.l4.closed_form);
    summary.lemma4.max_cross_check = std::max(summary.lemma4.max_cross_check, cross);
    if (cross > 1e-9) ++summary.lemma4.violations;
  }
  return summary;
}

}  // namespace ddvv
