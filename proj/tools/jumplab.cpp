#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jumplab/harness.hpp"
#include "jumplab/verify.hpp"

namespace {

int cmd_run(const jumplab::RunConfig& cfg) {
  jumplab::RunRecord rec = jumplab::run_single(cfg);
  std::cout << jumplab::record_to_json(rec) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) throw jumplab::InvalidConfig("cannot open config file: " + config_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto cfg = jumplab::sweep_config_from_json_text(text);
  auto rows = jumplab::sweep(cfg);
  std::ofstream out(out_path);
  if (!out) throw jumplab::InvalidConfig("cannot open output file: " + out_path);
  jumplab::write_csv(out, rows);
  long ok = 0;
  for (const auto& r : rows) ok += r.success;
  std::cerr << rows.size() << " rows written to " << out_path << " (" << ok << " successes)\n";
  return 0;
}

int cmd_fit(const std::string& in_path, const std::string& model) {
  std::ifstream in(in_path);
  if (!in) throw jumplab::InvalidConfig("cannot open csv file: " + in_path);
  auto rows = jumplab::read_csv(in);
  auto fit = jumplab::fit_scaling(rows, model);
  std::cout << "model " << fit.model << ", coefficient " << fit.coefficient << ", residual "
            << fit.residual << ", loglog_slope " << fit.loglog_slope << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jumplab: query-complexity experiments on jump functions"};
  app.require_subcommand(1);

  jumplab::RunConfig rc;
  std::string budget, attempt;
  auto* run = app.add_subcommand("run", "run one algorithm once, JSON record on stdout");
  run->add_option("--alg", rc.algorithm, "algorithm name")->required();
  run->add_option("--n", rc.n, "problem size")->required();
  int ell = -1;
  run->add_option("--ell", ell, "jump parameter (default depends on the algorithm)");
  run->add_option("--seed", rc.seed, "rng seed");
  run->add_option("--budget", budget, "total query budget, expression in n");
  run->add_option("--attempt", attempt, "per-attempt query cap, expression in n");
  run->add_option("--solver", rc.solver, "inner OneMax solver (rls)");
  run->add_flag("--known-ell", rc.known_ell, "short jump: skip the ell-learning phase");
  double eps = -1, c_exp = -1;
  run->add_option("--eps", eps, "short jump: exponent override");
  run->add_option("--c", c_exp, "short jump: failure exponent (default 4)");
  run->add_option("--K", rc.K, "extreme estimator sample constant");
  run->add_option("--K-T", rc.K_T, "long jump estimator sample constant");
  run->add_flag("--fast", rc.fast_engine, "weight-space engine (unary algorithms)");

  std::string sweep_cfg, sweep_out;
  auto* sw = app.add_subcommand("sweep", "run a sweep from a JSON config, write CSV");
  sw->add_option("--config", sweep_cfg, "JSON sweep config")->required();
  sw->add_option("--out", sweep_out, "output CSV path")->required();

  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "operators|stats|estimators|e2e")->required();

  std::string fit_in, fit_model = "auto";
  auto* fit = app.add_subcommand("fit", "fit scaling models to a sweep CSV");
  fit->add_option("--in", fit_in, "input CSV")->required();
  fit->add_option("--model", fit_model, "n|nlogn|n2|n92|auto");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      if (ell >= 0) rc.ell = ell;
      if (eps > 0) rc.eps = eps;
      if (c_exp > 0) rc.c = c_exp;
      if (!budget.empty()) rc.budget_rule = budget;
      if (!attempt.empty()) rc.attempt_rule = attempt;
      return cmd_run(rc);
    }
    if (sw->parsed()) return cmd_sweep(sweep_cfg, sweep_out);
    if (ver->parsed()) return jumplab::run_suite(suite, std::cout);
    if (fit->parsed()) return cmd_fit(fit_in, fit_model);
  } catch (const jumplab::InvalidConfig& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
