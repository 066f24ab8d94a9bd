#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "ddvv/basis.hpp"
#include "ddvv/execution.hpp"

namespace ddvv {

/// Gap threshold 2/sqrt(3).
inline const double kGapThreshold = 2.0 / std::sqrt(3.0);

/// Real spectrum sorted descending and normalized to unit sum of squares.
class SpectrumVector {
public:
  /// Sorts and normalizes; throws SizeError on empty or all-zero input.
  explicit SpectrumVector(RealVector values);

  [[nodiscard]] const RealVector& values() const { return values_; }
  [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
  /// 1-based access.
  [[nodiscard]] double operator()(int i) const { return values_(i - 1); }

private:
  RealVector values_;
};

struct ThresholdSets {
  std::set<int> I1;               ///< {j : l_1 - l_j > 2/sqrt3}
  std::set<int> I2;               ///< {i : l_i - l_n > 2/sqrt3}
  std::set<IndexPair> I;          ///< {(i,j) : l_i - l_j > 2/sqrt3}
  int n0 = 0;
};

ThresholdSets threshold_sets(const SpectrumVector& lambda);

/// True iff I = {1} x I_1 or I = I_2 x {n}.
bool check_lemma1(const SpectrumVector& lambda);

/// sum_{(i,j) in I} ((l_i - l_j)^2 - 4/3); at most 2/3.
double lemma2_lhs(const SpectrumVector& lambda);
/// Whether lemma2_lhs is within 1e-10 of 2/3.
bool lemma2_equality(const SpectrumVector& lambda);

/// sum_{beta in J} (||[Q_alpha, Q_beta]||^2 - 4/3) over the rotated Hermitian
/// basis; at most 4/3. alpha and J are 1-based flat indices.
double lemma3_lhs(const BasisRotation& Q, int alpha, const std::set<int>& J, int n);

struct Lemma4Value {
  double direct = 0.0;       ///< sum_beta ||[Q_alpha, Q_beta]||^2
  double closed_form = 0.0;  ///< 2n sum_g q_{g alpha}^2 - 2 (sum_i q^alpha_ii)^2
};
Lemma4Value lemma4_lhs(const BasisRotation& Q, int alpha, int n);

/// Norms ||[Q_alpha, Q_beta]||^2 for all beta (1-based alpha), the row used by
/// Lemmas 3 and 4.
RealVector rotated_commutator_row(const BasisSet& rotated, int alpha);

struct LemmaStats {
  long long trials = 0;
  long long violations = 0;
  /// Largest observed left-hand side (Lemma 1: unused).
  double max_value = -std::numeric_limits<double>::infinity();
  /// Bound minus largest observed value.
  double min_slack = std::numeric_limits<double>::infinity();
  /// Largest disagreement between direct and closed-form computations.
  double max_cross_check = 0.0;
};

struct LemmaTrialSummary {
  int n = 0;
  LemmaStats lemma1, lemma2, lemma3, lemma4;
  [[nodiscard]] long long total_violations() const {
    return lemma1.violations + lemma2.violations + lemma3.violations + lemma4.violations;
  }
};

/// Randomized falsification harness: `trials` independent trials per lemma at
/// side n, trial t drawing from stream split(t). Serial and parallel paths
/// give identical summaries.
LemmaTrialSummary run_lemma_trials(int n, long long trials, std::uint64_t seed,
                                   Execution exec = Execution::Parallel);

/// Random spectrum used by the harness: Gaussian entries with a random subset
/// zeroed so that large gaps occur.
SpectrumVector sample_spectrum(int n, RandomStream& rng);

}  // namespace ddvv
