#include "ddvv/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "ddvv/lemmas.hpp"

namespace ddvv {

using nlohmann::json;

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Counterexample: return "counterexample";
  }
  return "fail";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Counterexample: return 3;
  }
  return 1;
}

json Report::to_json() const {
  return json{{"manifest", manifest}, {"results", results}, {"status", status_name(status)}};
}

json manifest_for(std::string_view command, json config) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return json{{"command", command}, {"config", std::move(config)}, {"version", kToolkitVersion}, {"timestamp", buf}};
}

json matrix_to_json(const ComplexMatrix& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back({A(i, j).real(), A(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json tuple_to_json(const MatrixTuple& T) {
  json mats = json::array();
  for (const auto& B : T.matrices()) mats.push_back(matrix_to_json(B));
  return json{{"class", class_name(T.matrix_class())}, {"m", T.m()}, {"n", T.n()}, {"matrices", std::move(mats)}};
}

MatrixTuple tuple_from_json(const json& j) {
  const auto cls = parse_class(j.at("class").get<std::string>());
  if (!cls) throw std::invalid_argument("tuple_from_json: unknown class");
  std::vector<ComplexMatrix> mats;
  for (const auto& jm : j.at("matrices")) {
    const auto n = static_cast<Eigen::Index>(jm.size());
    ComplexMatrix A(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(jm[r].size()) != n) throw SizeError("tuple_from_json: ragged matrix");
      for (Eigen::Index c = 0; c < n; ++c) A(r, c) = Complex(jm[r][c][0].get<double>(), jm[r][c][1].get<double>());
    }
    mats.push_back(std::move(A));
  }
  return MatrixTuple(*cls, std::move(mats));
}

std::optional<NRange> parse_n_range(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    if (s.empty() || s.size() > 6) return std::nullopt;
    int v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = parse_int(text);
    if (!v) return std::nullopt;
    return NRange{*v, *v};
  }
  const auto lo = parse_int(text.substr(0, dots));
  const auto hi = parse_int(text.substr(dots + 2));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return NRange{*lo, *hi};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// ---------------------------------------------------------------------------
// verify-identities

namespace {

json pair_json(IndexPair p) { return json::array({p.i, p.j}); }

json check_eq2(int n, const BasisSet& basis) {
  long long comparisons = 0, failures = 0;
  double max_dev = 0.0;
  json first = nullptr;
  for (int a = 1; a <= n * n; ++a) {
    for (int b = 1; b <= n * n; ++b) {
      const IndexPair pa = pair_of_flat(a, n), pb = pair_of_flat(b, n);
      const double table = pair_comm_norm_sq(pa, pb, n);
      const double direct = commutator(basis.elements[a - 1], basis.elements[b - 1]).squaredNorm();
      const double dev = std::abs(table - direct);
      ++comparisons;
      max_dev = std::max(max_dev, dev);
      if (dev > 1e-12 || table != pair_comm_norm_sq(pb, pa, n)) {
        if (failures == 0) first = json{{"a", pair_json(pa)}, {"b", pair_json(pb)}, {"table", table}, {"direct", direct}};
        ++failures;
      }
    }
  }
  return json{{"comparisons", comparisons}, {"failures", failures}, {"max_abs_deviation", max_dev}, {"first_failure", first}};
}

json check_eq3(int n, const BasisSet& basis) {
  const int N = n * n;
  // comm[a][g] = [E_a, E_g]
  std::vector<std::vector<ComplexMatrix>> comm(N, std::vector<ComplexMatrix>(N));
  for (int a = 0; a < N; ++a) {
    for (int g = 0; g < N; ++g) comm[a][g] = commutator(basis.elements[a], basis.elements[g]);
  }
  long long comparisons = 0, failures = 0;
  double max_dev = 0.0;
  json first = nullptr;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      double direct = 0.0;
      for (int g = 0; g < N; ++g) direct += inner(comm[a][g], comm[b][g]);
      const IndexPair pa = pair_of_flat(a + 1, n), pb = pair_of_flat(b + 1, n);
      const double closed = gram_row_sum(pa, pb, n);
      const double dev = std::abs(direct - closed);
      ++comparisons;
      max_dev = std::max(max_dev, dev);
      if (dev > 1e-10) {
        if (failures == 0) first = json{{"a", pair_json(pa)}, {"b", pair_json(pb)}, {"closed_form", closed}, {"direct", direct}};
        ++failures;
      }
    }
  }
  return json{{"comparisons", comparisons}, {"failures", failures}, {"max_abs_deviation", max_dev}, {"first_failure", first}};
}

RealMatrix gaussian(Eigen::Index rows, Eigen::Index cols, RandomStream& rng) {
  RealMatrix A(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) A(i, j) = rng.normal();
  }
  return A;
}

}  // namespace

Report cmd_verify_identities(const IdentityOptions& opt) {
  if (opt.n.lo < 1 || opt.n.hi > 5 || opt.n.lo > opt.n.hi) {
    throw std::invalid_argument("verify-identities: n-range must lie within 1..5");
  }
  Report report;
  report.manifest = manifest_for("verify-identities", json{{"n_min", opt.n.lo},
                                                           {"n_max", opt.n.hi},
                                                           {"seed", opt.seed},
                                                           {"phi_pairs", opt.phi_pairs},
                                                           {"chain_tuples", opt.chain_tuples},
                                                           {"tamper_basis", opt.tamper_basis}});
  bool ok = true;
  json per_n = json::array();
  long long eq2_total = 0;
  const RandomStream root(opt.seed);

  for (int n = opt.n.lo; n <= opt.n.hi; ++n) {
    BasisSet basis = hermitian_basis(n);
    if (opt.tamper_basis) basis.elements.back()(0, 0) += 1e-3;

    json entry{{"n", n}};
    entry["eq2"] = check_eq2(n, basis);
    entry["eq3"] = check_eq3(n, basis);
    eq2_total += entry["eq2"]["comparisons"].get<long long>();
    ok = ok && entry["eq2"]["failures"] == 0 && entry["eq3"]["failures"] == 0;

    RandomStream rng = root.split(static_cast<std::uint64_t>(n));
    // Chain identity on random Hermitian tuples.
    if (n >= 2) {
      const RealMatrix C = gram_of_basis(basis);
      long long failures = 0;
      double worst = 0.0;
      for (int t = 0; t < opt.chain_tuples; ++t) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const MatrixTuple T = MatrixTuple::sample(MatrixClass::Hermitian, m, n, rng);
        try {
          const ChainReport chain = verify_transform_chain(T, basis, C);
          worst = std::max(worst, chain.max_rel_deviation);
          if (chain.max_rel_deviation > 1e-8 || chain.min_eigenvalue < -1e-10) ++failures;
        } catch (const ClassError&) {
          // A corrupted basis no longer spans the class.
          ++failures;
        }
      }
      entry["chain"] = json{{"tuples", opt.chain_tuples}, {"failures", failures}, {"max_rel_deviation", worst}};
      ok = ok && failures == 0;
    }
    per_n.push_back(std::move(entry));
  }

  // phi properties, independent of n.
  {
    RandomStream rng = root.split(1000);
    long long failures = 0;
    double worst = 0.0;
    for (int t = 0; t < opt.phi_pairs; ++t) {
      const auto p = 1 + static_cast<Eigen::Index>(rng.below(6));
      const auto k = 1 + static_cast<Eigen::Index>(rng.below(6));
      const auto q = 1 + static_cast<Eigen::Index>(rng.below(6));
      const RealMatrix A = gaussian(p, k, rng);
      const RealMatrix B = gaussian(k, q, rng);
      const RealMatrix lhs = phi(A * B);
      const RealMatrix rhs = phi(A) * phi(B);
      const double scale = std::max(1.0, phi(A).norm() * phi(B).norm());
      const double dev = lhs.size() == 0 ? 0.0 : (lhs - rhs).cwiseAbs().maxCoeff() / scale;
      worst = std::max(worst, dev);
      if (dev > 1e-10 || phi(A.transpose()) != phi(A).transpose()) ++failures;
    }
    bool identity_ok = true;
    for (int d = 1; d <= 6; ++d) {
      identity_ok = identity_ok && phi(RealMatrix::Identity(d, d)) == RealMatrix::Identity(binom2(d), binom2(d));
    }
    report.results["phi"] = json{{"pairs", opt.phi_pairs}, {"failures", failures}, {"max_rel_deviation", worst},
                                 {"identity_exact", identity_ok}};
    ok = ok && failures == 0 && identity_ok;
  }

  report.results["per_n"] = std::move(per_n);
  report.results["eq2_comparisons_total"] = eq2_total;
  report.status = ok ? Status::Pass : Status::Fail;
  return report;
}

// ---------------------------------------------------------------------------
// check-lemmas

namespace {

json stats_json(const LemmaStats& s, bool has_value) {
  json j{{"trials", s.trials}, {"violations", s.violations}};
  if (has_value) {
    j["max_value"] = s.max_value;
    j["min_slack"] = s.min_slack;
  }
  return j;
}

}  // namespace

Report cmd_check_lemmas(const LemmaOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("check-lemmas: trials must be at least 1");
  if (opt.n.lo < 1 || opt.n.lo > opt.n.hi || opt.n.hi > 8) {
    throw std::invalid_argument("check-lemmas: n-range must lie within 1..8");
  }
  Report report;
  report.manifest = manifest_for("check-lemmas", json{{"n_min", opt.n.lo}, {"n_max", opt.n.hi},
                                                      {"trials", opt.trials}, {"seed", opt.seed}});
  bool ok = true;
  json per_n = json::array();
  for (int n = opt.n.lo; n <= opt.n.hi; ++n) {
    const LemmaTrialSummary s = run_lemma_trials(n, opt.trials, opt.seed + static_cast<std::uint64_t>(n));
    json entry{{"n", n},
               {"lemma1", stats_json(s.lemma1, false)},
               {"lemma2", stats_json(s.lemma2, true)},
               {"lemma3", stats_json(s.lemma3, true)},
               {"lemma4", stats_json(s.lemma4, true)}};
    entry["lemma4"]["max_closed_form_deviation"] = s.lemma4.max_cross_check;
    if (n >= 2) {
      RealVector w = RealVector::Zero(n);
      w(0) = 1.0;
      w(n - 1) = -1.0;
      const SpectrumVector witness(w);
      entry["lemma2"]["equality_witness"] = lemma2_lhs(witness);
      ok = ok && lemma2_equality(witness);
    }
    ok = ok && s.total_violations() == 0;
    per_n.push_back(std::move(entry));
  }
  report.results["per_n"] = std::move(per_n);
  report.status = ok ? Status::Pass : Status::Fail;
  return report;
}

// ---------------------------------------------------------------------------
// estimate / explore

namespace {

json search_config_json(const SearchConfig& c) {
  return json{{"class", class_name(c.cls)}, {"m", c.m},
              {"n", c.n},                   {"restarts", c.restarts},
              {"iters", c.max_iters},       {"step_init", c.step_init},
              {"step_shrink", c.step_shrink}, {"tol", c.grad_tol},
              {"seed", c.seed},             {"warm_starts", c.warm_starts.size()}};
}

json constant_json(const std::optional<KnownConstant>& k) {
  if (!k) return nullptr;
  return json{{"c", k->c.str()},
              {"value", k->c.value()},
              {"status", k->status == ConstantStatus::Proved ? "proved" : "conjectured"},
              {"condition", k->condition}};
}

json diagnostics_json(const EqualityDiagnostics& d) {
  std::vector<double> x(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
  return json{{"residual", d.residual},    {"support_count", d.support_count}, {"top_equal", d.top_equal},
              {"rank_two", d.rank_two},    {"traceless", d.traceless},         {"anticommuting", d.anticommuting},
              {"common_projector", d.common_projector}, {"canonical", d.canonical}, {"eigenvalues", x}};
}

json search_json(const SearchReport& r) {
  json restarts = json::array();
  for (const auto& rr : r.restarts) {
    restarts.push_back(json{{"start_ratio", rr.start_ratio}, {"best_ratio", rr.best_ratio},
                            {"iterations", rr.iterations}, {"converged", rr.converged},
                            {"final_grad_norm", rr.final_grad_norm}});
  }
  return json{{"best_ratio", r.best_ratio},
              {"best_restart", r.best_restart},
              {"iterations_used", r.iterations_used},
              {"gradient_check", {{"samples", r.gradient_check.samples},
                                  {"max_rel_error", r.gradient_check.max_rel_error},
                                  {"passed", r.gradient_check.passed}}},
              {"restarts", std::move(restarts)},
              {"best_tuple", tuple_to_json(r.best_tuple)}};
}

void write_trace(const std::string& path, const SearchReport& r) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "restart,iteration,ratio\n";
  for (std::size_t k = 0; k < r.restarts.size(); ++k) {
    const auto& trace = r.restarts[k].trace;
    for (std::size_t it = 0; it < trace.size(); ++it) csv << k << ',' << it << ',' << trace[it] << '\n';
  }
  write_text_file(path, csv.str());
}

}  // namespace

Report cmd_estimate(const EstimateOptions& opt) {
  SearchConfig cfg = opt.search;
  cfg.validate();
  if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("estimate: m and n must be positive");
  cfg.record_trace = opt.trace_csv.has_value();

  Report report;
  report.manifest = manifest_for("estimate", search_config_json(cfg));
  const SearchReport search = maximize_ratio(cfg);
  if (opt.trace_csv) write_trace(*opt.trace_csv, search);

  const auto known = known_constant(cfg.cls, cfg.m, cfg.n);
  report.results = search_json(search);
  report.results["registry"] = constant_json(known);
  report.status = Status::Pass;
  if (known) {
    report.results["gap"] = std::abs(search.best_ratio - known->c.value());
    if (known->status == ConstantStatus::Proved && search.best_ratio > known->c.value() + 1e-8) {
      report.status = Status::Fail;
    } else if (known->status == ConstantStatus::Conjectured && search.best_ratio > known->c.value() + 1e-6) {
      report.status = Status::Counterexample;
    }
    if ((cfg.cls == MatrixClass::Hermitian || cfg.cls == MatrixClass::SkewHermitian) && cfg.m >= 2 && cfg.n >= 2) {
      report.results["diagnostics"] = diagnostics_json(equality_diagnostics(search.best_tuple, known->c));
    }
  } else {
    report.results["gap"] = nullptr;
  }
  return report;
}

Report cmd_explore(const EstimateOptions& opt) {
  SearchConfig cfg = opt.search;
  cfg.record_trace = opt.trace_csv.has_value();
  const ConjectureReport out = explore_conjecture(cfg);

  Report report;
  json config = search_config_json(cfg);
  config["embed_extremal"] = true;
  report.manifest = manifest_for("explore", std::move(config));
  if (opt.trace_csv) write_trace(*opt.trace_csv, out.search);
  report.results = search_json(out.search);
  report.results["conjectured"] = "4/3";
  report.results["excess"] = out.excess;
  report.results["counterexample"] = out.counterexample;
  if (out.counterexample) report.results["counterexample_candidate"] = tuple_to_json(out.search.best_tuple);
  report.status = out.counterexample ? Status::Counterexample : Status::Pass;
  return report;
}

// ---------------------------------------------------------------------------
// extremal

Report cmd_extremal(const ExtremalOptions& opt) {
  Report report;
  report.manifest = manifest_for("extremal", json{{"class", class_name(opt.cls)}, {"m", opt.m}, {"n", opt.n},
                                                  {"lambda", opt.lambda}, {"theta", opt.theta}});
  const MatrixTuple T = extremal_tuple(opt.cls, opt.m, opt.n, opt.lambda, opt.theta);
  const DdvvEvaluation ev = evaluate(T);
  const auto known = known_constant(opt.cls, opt.m, opt.n);

  report.results["tuple"] = tuple_to_json(T);
  report.results["evaluation"] = json{{"lhs", ev.lhs}, {"energy", ev.energy}, {"ratio", ev.ratio}};
  report.results["registry"] = constant_json(known);
  bool ok = true;
  if (known) {
    const double residual = known->c.value() * ev.energy * ev.energy - ev.lhs;
    report.results["residual"] = residual;
    ok = std::abs(residual) <= 1e-12 * std::max(1.0, ev.energy * ev.energy);
    if (opt.cls == MatrixClass::Hermitian || opt.cls == MatrixClass::SkewHermitian) {
      const EqualityDiagnostics d = equality_diagnostics(T, known->c);
      report.results["diagnostics"] = diagnostics_json(d);
      // lambda = 0 is the trivial zero tuple: equality holds but nothing to classify.
      if (opt.lambda > 0.0) ok = ok && d.canonical;
    }
  }
  report.status = ok ? Status::Pass : Status::Fail;
  return report;
}

}  // namespace ddvv
