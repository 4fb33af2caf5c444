#include <iostream>

#include <CLI11.hpp>

#include "fudist/commands.hpp"

namespace {

void add_state_flags(CLI::App* cmd, fudist::StateSpec& spec) {
  cmd->add_option("--family", spec.family, "pseudopure | werner | horodecki-a | horodecki-alpha | upb | file");
  cmd->add_option("--file", spec.file, "JSON state file");
  cmd->add_option("--dim", spec.dim, "local dimension (pseudopure: N = M, werner: D)");
  cmd->add_option("--p", spec.p, "Werner weight of the symmetric subspace");
  cmd->add_option("--epsilon", spec.epsilon, "pseudopure purity weight");
  cmd->add_option("--coeffs", spec.coeffs, "Schmidt coefficients, comma separated")->delimiter(',');
  cmd->add_option("--a", spec.a, "Horodecki rho_a parameter");
  cmd->add_option("--alpha", spec.alpha, "Horodecki rho_alpha parameter");
}

void add_oracle_flags(CLI::App* cmd, fudist::OracleOptions& oracle) {
  cmd->add_flag("--oracle", oracle.enabled, "also maximize numerically over the commutant");
  cmd->add_option("--seed", oracle.seed, "oracle seed");
  cmd->add_option("--restarts", oracle.restarts, "oracle restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", oracle.threads, "oracle worker threads (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fu distance toolkit: closed forms, numerical oracle and CHSH comparisons"};
  app.require_subcommand(1);

  fudist::StateSpec analyze_spec;
  fudist::OracleOptions analyze_oracle;
  auto* analyze = app.add_subcommand("analyze", "report d_max, bounds and verdicts for one state as JSON");
  add_state_flags(analyze, analyze_spec);
  add_oracle_flags(analyze, analyze_oracle);

  fudist::ScanOptions scan;
  fudist::OracleOptions scan_oracle;
  auto* scan_cmd = app.add_subcommand("scan", "sweep a family parameter and write CSV");
  add_state_flags(scan_cmd, scan.state);
  add_oracle_flags(scan_cmd, scan_oracle);
  scan_cmd->add_option("--start", scan.start)->required();
  scan_cmd->add_option("--stop", scan.stop)->required();
  scan_cmd->add_option("--steps", scan.steps)->required();
  scan_cmd->add_option("--out", scan.out_path, "CSV path (default: standard output)");

  fudist::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "compare the oracle against every closed form");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--instances", verify.instances, "instances per family")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--restarts", verify.restarts)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", verify.threads);
  verify_cmd->add_option("--replay", verify.replay_path, "where to write the first failing instance");
  verify_cmd->add_flag("--inject-fault", verify.inject_fault)->group("");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    if (analyze_spec.family.empty()) analyze_spec.family = analyze_spec.file.empty() ? "" : "file";
    if (analyze_spec.family.empty()) {
      std::cerr << "error: give --family or --file\n";
      return fudist::kExitBadInput;
    }
    return fudist::run_analyze(analyze_spec, analyze_oracle, std::cout, std::cerr);
  }
  if (scan_cmd->parsed()) {
    if (scan.state.family.empty() && !scan.state.file.empty()) scan.state.family = "file";
    if (scan.state.family.empty()) {
      std::cerr << "error: give --family or --file\n";
      return fudist::kExitBadInput;
    }
    return fudist::run_scan(scan, scan_oracle, std::cout, std::cerr);
  }
  return fudist::run_verify(verify, std::cout, std::cerr);
}
