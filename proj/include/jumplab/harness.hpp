#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jumplab/objective.hpp"

namespace jumplab {

/// One experiment outcome. `queries` is the first-hit index on success, the
/// total queries spent otherwise; restarts counts fresh attempts beyond the
/// first, summed over the whole run.
struct RunRecord {
  std::string algorithm;
  int n = 0;
  int ell = 0;
  int arity = 0;
  uint64_t seed = 0;
  uint64_t queries = 0;
  bool success = false;
  int restarts = 0;
  int64_t wall_ms = 0;
};

struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluates a budget expression in n: numbers, n, + - * / ^, parentheses,
/// and log(x) (natural), log2(x), sqrt(x). Example: "20*n*log(n)".
double eval_budget_expr(const std::string& expr, double n);

struct RunConfig {
  std::string algorithm;         // see algorithm_names()
  int n = 0;
  std::optional<int> ell;        // defaults per algorithm (extreme: n/2 - 1)
  uint64_t seed = 1;
  std::optional<std::string> budget_rule;   // expression in n; default per algorithm
  std::optional<std::string> attempt_rule;  // per-attempt cap; default per algorithm
  std::string solver = "rls";    // inner OneMax solver where applicable
  bool known_ell = false;        // short jump: ell given to the simulation
  std::optional<double> eps;     // short jump: override the derived exponent
  std::optional<double> c;       // short jump: failure exponent (default 4)
  double K = 4.0;                // extreme parity estimator constant
  double K_T = 24.0;             // long jump estimator constant
  bool fast_engine = false;      // weight-space engine (unary algorithms only)
};

std::vector<std::string> algorithm_names();
int algorithm_arity(const std::string& name);
/// Default overall budget / per-attempt expressions for an algorithm.
std::string default_budget_rule(const std::string& name);
std::string default_attempt_rule(const std::string& name);
int default_ell(const std::string& name, int n);

/// Oracle-side counters of a finished run, for auditing.
struct RunAudit {
  uint64_t query_count = 0;
  std::optional<uint64_t> first_hit;
  uint64_t budget = 0;
};

/// Deterministic given (config, seed). Runs the algorithm behind a budgeted
/// oracle with stop-on-optimum; constant-success-probability algorithms are
/// amplified by independent restarts under per-attempt query caps.
RunRecord run_single(const RunConfig& config, RunAudit* audit = nullptr);

/// Rule mapping n to ell for sweeps.
struct EllRule {
  enum class Kind { Fixed, Short, Long, Extreme } kind = Kind::Fixed;
  int value = 0;      // Fixed
  double eps = 0.25;  // Short: ell = floor(n^(1/2 - eps)); Long: ell = floor((1/2 - eps) n)
  int ell_for(int n) const;
  static EllRule fixed(int v) { return {Kind::Fixed, v, 0.0}; }
};

struct SweepConfig {
  std::string algorithm;
  std::vector<int> n_values;
  EllRule ell_rule;
  int reps = 10;
  uint64_t base_seed = 1;
  std::optional<std::string> budget_rule;
  std::optional<std::string> attempt_rule;
  std::string solver = "rls";
  bool known_ell = false;
  std::optional<double> eps;
  std::optional<double> c;
  double K = 4.0;
  double K_T = 24.0;
  bool fast_engine = false;
  int threads = 0;  // 0 = hardware concurrency
};

/// reps x |n_values| runs; row i uses stream mix(base_seed, i). Rows come
/// back in deterministic (n-major, rep-minor) order however many workers ran.
std::vector<RunRecord> sweep(const SweepConfig& config);

inline constexpr const char* kCsvHeader =
    "algorithm,function,n,ell,arity,seed,queries,success,restarts,wall_ms";
void write_csv(std::ostream& out, const std::vector<RunRecord>& rows);
std::vector<RunRecord> read_csv(std::istream& in);

struct FitResult {
  std::string model;        // best of {n, nlogn, n2, n92} unless forced
  double coefficient = 0;   // least-squares C for queries ~ C * model(n)
  double residual = 0;      // normalized RMS residual of the best model
  double loglog_slope = 0;  // slope of log(median queries) vs log(n)
};

/// Fits median queries (successful rows) against a model; model = "auto"
/// tries n, nlogn, n2 and n92 and keeps the best.
FitResult fit_scaling(const std::vector<RunRecord>& rows, const std::string& model = "auto");

/// Median queries per n over successful rows (used by fit and the
/// verification batteries).
std::vector<std::pair<int, double>> median_queries_by_n(const std::vector<RunRecord>& rows);

// JSON bridging (nlohmann underneath, kept out of this header).
std::string record_to_json(const RunRecord& r);
SweepConfig sweep_config_from_json_text(const std::string& text);

}  // namespace jumplab
