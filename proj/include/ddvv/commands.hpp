#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ddvv/optim.hpp"

namespace ddvv {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class Status { Pass, Fail, Counterexample };

std::string_view status_name(Status s);
/// 0 = pass, 1 = fail, 3 = counterexample (2 is reserved for usage errors).
int exit_code(Status s);

/// {manifest, results, status}. The manifest carries the command name, the
/// full configuration, the toolkit version and a timestamp; results are a
/// pure function of the configuration.
struct Report {
  nlohmann::json manifest;
  nlohmann::json results;
  Status status = Status::Pass;

  [[nodiscard]] nlohmann::json to_json() const;
};

nlohmann::json manifest_for(std::string_view command, nlohmann::json config);

/// Row-major nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix& A);
nlohmann::json tuple_to_json(const MatrixTuple& T);
MatrixTuple tuple_from_json(const nlohmann::json& j);

struct NRange {
  int lo = 2;
  int hi = 4;
};
/// Parses "3" or "2..4".
std::optional<NRange> parse_n_range(std::string_view text);

struct IdentityOptions {
  NRange n{2, 4};
  std::uint64_t seed = 0;
  int phi_pairs = 200;
  int chain_tuples = 20;
  /// Test hook: perturbs one entry of one basis element before the direct
  /// computations, so the checks must fail.
  bool tamper_basis = false;
};
Report cmd_verify_identities(const IdentityOptions& opt);

struct LemmaOptions {
  NRange n{2, 4};
  long long trials = 100000;
  std::uint64_t seed = 0;
};
Report cmd_check_lemmas(const LemmaOptions& opt);

struct EstimateOptions {
  SearchConfig search;
  /// If set, a restart,iteration,ratio CSV of every restart is written here.
  std::optional<std::string> trace_csv;
};
Report cmd_estimate(const EstimateOptions& opt);

struct ExtremalOptions {
  MatrixClass cls = MatrixClass::Hermitian;
  int m = 3;
  int n = 2;
  double lambda = 1.0;
  double theta = 0.0;
};
Report cmd_extremal(const ExtremalOptions& opt);

Report cmd_explore(const EstimateOptions& opt);

/// Throws std::runtime_error when the path cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ddvv
