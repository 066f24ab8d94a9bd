// Command-line front end: verification suites, constant estimates, extremal
// configurations. Every command prints (or writes) a JSON report
// {manifest, results, status}; exit codes are 0 pass, 1 fail, 2 usage error,
// 3 counterexample.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "ddvv/commands.hpp"

namespace {

struct Common {
  std::string cls = "hermitian";
  int m = 3;
  int n = 2;
  std::string n_range = "2..4";
  std::uint64_t seed = 0;
  int restarts = 64;
  int iters = 2000;
  double tol = 1e-8;
  double lambda = 1.0;
  double theta = 0.0;
  long long trials = 100000;
  std::string output;
  std::string trace_csv;
  int threads = 0;
  bool tamper = false;
};

void add_seed(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->envname("DDVV_SEED");
}

void add_search(CLI::App* cmd, Common& c, const char* default_class) {
  c.cls = default_class;
  cmd->add_option("--class", c.cls, "Matrix class")
      ->check(CLI::IsMember({"symmetric", "skew-symmetric", "hermitian", "skew-hermitian", "complex", "real"}));
  cmd->add_option("--m", c.m, "Tuple length")->check(CLI::PositiveNumber);
  cmd->add_option("--n", c.n, "Matrix side")->check(CLI::PositiveNumber);
  cmd->add_option("--restarts", c.restarts, "Random restarts")->check(CLI::NonNegativeNumber);
  cmd->add_option("--iters", c.iters, "Iterations per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "Projected-gradient norm tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--trace-csv", c.trace_csv, "Write restart,iteration,ratio trace");
  add_seed(cmd, c);
}

ddvv::SearchConfig search_config(const Common& c) {
  ddvv::SearchConfig cfg;
  cfg.cls = *ddvv::parse_class(c.cls);
  cfg.m = c.m;
  cfg.n = c.n;
  cfg.restarts = c.restarts;
  cfg.max_iters = c.iters;
  cfg.grad_tol = c.tol;
  cfg.seed = c.seed;
  return cfg;
}

ddvv::NRange n_range(const std::string& text) {
  const auto r = ddvv::parse_n_range(text);
  if (!r) throw std::invalid_argument("invalid --n range '" + text + "' (expected N or A..B)");
  return *r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DDVV-type commutator inequality toolkit"};
  app.set_config("--config", "", "TOML-style file with option defaults");
  app.set_version_flag("--version", ddvv::kToolkitVersion);
  app.require_subcommand(1);

  // One option set per subcommand so defaults do not leak between them.
  Common cv, cl, ce, cx, cp;

  auto* verify = app.add_subcommand("verify-identities", "Exhaustive and randomized identity checks");
  verify->add_option("--n", cv.n_range, "Side or range A..B within 1..5");
  verify->add_flag("--tamper-basis", cv.tamper, "Test hook: corrupt one basis element");
  add_seed(verify, cv);

  auto* lemmas = app.add_subcommand("check-lemmas", "Randomized falsification of the four lemmas");
  lemmas->add_option("--n", cl.n_range, "Side or range A..B");
  lemmas->add_option("--trials", cl.trials, "Trials per lemma and side")->check(CLI::PositiveNumber);
  add_seed(lemmas, cl);

  auto* estimate = app.add_subcommand("estimate", "Estimate the best constant by multi-start ascent");
  add_search(estimate, ce, "hermitian");

  auto* extremal = app.add_subcommand("extremal", "Emit an extremal tuple and its diagnostics");
  extremal->add_option("--class", cx.cls, "Matrix class")
      ->check(CLI::IsMember({"symmetric", "hermitian", "skew-hermitian"}));
  extremal->add_option("--m", cx.m, "Tuple length");
  extremal->add_option("--n", cx.n, "Matrix side");
  extremal->add_option("--lambda", cx.lambda, "Scale")->check(CLI::NonNegativeNumber);
  extremal->add_option("--theta", cx.theta, "Angle of the m=2 family");

  auto* explore = app.add_subcommand("explore", "Probe the 4/3 conjecture for general matrices");
  add_search(explore, cp, "complex");

  const std::pair<CLI::App*, Common*> subs[] = {{verify, &cv}, {lemmas, &cl}, {estimate, &ce}, {extremal, &cx}, {explore, &cp}};
  for (auto [sub, opts] : subs) {
    sub->add_option("--output", opts->output, "Write the JSON report to PATH");
    sub->add_option("--threads", opts->threads, "Cap on worker threads")->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Common* active = nullptr;
  for (auto [sub, opts] : subs) {
    if (app.got_subcommand(sub)) active = opts;
  }
  const Common& c = *active;
  ddvv::set_thread_limit(c.threads);

  ddvv::Report report;
  try {
    if (app.got_subcommand(verify)) {
      ddvv::IdentityOptions opt;
      opt.n = n_range(c.n_range);
      opt.seed = c.seed;
      opt.tamper_basis = c.tamper;
      report = ddvv::cmd_verify_identities(opt);
    } else if (app.got_subcommand(lemmas)) {
      ddvv::LemmaOptions opt;
      opt.n = n_range(c.n_range);
      opt.trials = c.trials;
      opt.seed = c.seed;
      report = ddvv::cmd_check_lemmas(opt);
    } else if (app.got_subcommand(estimate) || app.got_subcommand(explore)) {
      ddvv::EstimateOptions opt;
      opt.search = search_config(c);
      if (!c.trace_csv.empty()) opt.trace_csv = c.trace_csv;
      report = app.got_subcommand(estimate) ? ddvv::cmd_estimate(opt) : ddvv::cmd_explore(opt);
    } else {
      ddvv::ExtremalOptions opt;
      opt.cls = *ddvv::parse_class(c.cls);
      opt.m = c.m;
      opt.n = c.n;
      opt.lambda = c.lambda;
      opt.theta = c.theta;
      report = ddvv::cmd_extremal(opt);
    }
  } catch (const std::invalid_argument& e) {
    // Covers SizeError as well.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    // Covers ClassError: unsupported (class, m, n) combinations.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    // Unwritable --trace-csv path.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  report.manifest["config"]["threads"] = c.threads;
  const std::string text = report.to_json().dump(2) + "\n";
  if (!c.output.empty()) {
    try {
      ddvv::write_text_file(c.output, text);
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    std::cout << "status: " << ddvv::status_name(report.status) << '\n';
  } else {
    std::cout << text;
  }
  return ddvv::exit_code(report.status);
}
