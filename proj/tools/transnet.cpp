// Command-line front end: tune and persist feature spaces, solve the
// benchmark cases, and emit plot data with a reproducibility manifest.

#include <iostream>

#include <CLI11.hpp>

#include "transnet/cli.hpp"
#include "transnet/errors.hpp"

namespace cli = transnet::cli;

int main(int argc, char** argv) {
  CLI::App app{"transnet: transferable neural feature spaces for mesh-free PDE solving"};
  app.require_subcommand(1);
  std::string out = "out";

  cli::TuneConfig tune;
  auto* tune_cmd = app.add_subcommand("tune", "Build a feature space and tune its shape parameter");
  tune_cmd->add_option("--dim", tune.dim, "Feature space dimension (space + time)");
  tune_cmd->add_option("--neurons", tune.neurons, "Number of hidden neurons M");
  tune_cmd->add_option("--eta", tune.eta, "GP correlation length");
  tune_cmd->add_option("--seed", tune.seed, "RNG seed");
  tune_cmd->add_option("--realizations", tune.realizations, "GP realizations K");
  tune_cmd->add_option("--gamma-min", tune.gamma_min);
  tune_cmd->add_option("--gamma-max", tune.gamma_max);
  tune_cmd->add_option("--gamma-count", tune.gamma_count, "Log-spaced grid size");
  tune_cmd->add_option("--grid", tune.grid, "Sample points per axis before masking to the ball");
  tune_cmd->add_option("--subsample-cap", tune.subsample_cap);
  tune_cmd->add_option("--num-fourier", tune.num_fourier);
  tune_cmd->add_option("--out", out, "Output directory");

  cli::SolveConfig solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one benchmark case");
  solve_cmd->add_option("--case", solve.case_id, "C1..C9")->required();
  solve_cmd->add_option("--method", solve.method, "transnet | random-features");
  solve_cmd->add_option("--feature-space", solve.feature_space, "Tuned feature space file");
  solve_cmd->add_option("--neurons", solve.neurons, "M for random features");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--reynolds", solve.reynolds);
  solve_cmd->add_option("--picard-tol", solve.picard_tol);
  solve_cmd->add_option("--picard-max-iter", solve.picard_max_iter);
  solve_cmd->add_flag("!--absorbing-zero", solve.absorbing_exact, "Absorbing boundary as u = 0");
  solve_cmd->add_option("--rcond", solve.rcond);
  solve_cmd->add_option("--out", out, "Output directory");

  cli::SweepConfig sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "MSE versus number of neurons");
  sweep_cmd->add_option("--case", sweep.case_id, "C1..C9")->required();
  sweep_cmd->add_option("--method", sweep.method, "transnet | random-features | both");
  sweep_cmd->add_option("--feature-space", sweep.feature_spaces, "Tuned feature space file(s)");
  sweep_cmd->add_option("--neurons", sweep.neurons, "M values")->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--reynolds", sweep.reynolds);
  sweep_cmd->add_option("--picard-tol", sweep.picard_tol);
  sweep_cmd->add_option("--picard-max-iter", sweep.picard_max_iter);
  sweep_cmd->add_flag("!--absorbing-zero", sweep.absorbing_exact, "Absorbing boundary as u = 0");
  sweep_cmd->add_option("--rcond", sweep.rcond);
  sweep_cmd->add_option("--out", out, "Output directory");

  cli::DensityConfig dens;
  auto* dens_cmd = app.add_subcommand("density", "Neuron density map over the unit ball");
  dens_cmd->add_option("--dim", dens.dim);
  dens_cmd->add_option("--neurons", dens.neurons);
  dens_cmd->add_option("--tau", dens.tau);
  dens_cmd->add_option("--seed", dens.seed);
  dens_cmd->add_option("--method", dens.method, "transnet | random-features");
  dens_cmd->add_option("--grid", dens.grid, "Grid points per axis");
  dens_cmd->add_option("--out", out, "Output directory");

  cli::GpSampleConfig gp;
  auto* gp_cmd = app.add_subcommand("gp-sample", "Dump Gaussian-process realizations on a ball grid");
  gp_cmd->add_option("--dim", gp.dim);
  gp_cmd->add_option("--eta", gp.eta);
  gp_cmd->add_option("--variance", gp.variance);
  gp_cmd->add_option("--seed", gp.seed);
  gp_cmd->add_option("--realizations", gp.realizations);
  gp_cmd->add_option("--grid", gp.grid);
  gp_cmd->add_option("--num-fourier", gp.num_fourier);
  gp_cmd->add_option("--out", out, "Output directory");

  std::string manifest;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("--manifest", manifest)->required();
  replay_cmd->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kConfigError;
  }

  try {
    nlohmann::json m;
    if (*tune_cmd) m = cli::run_tune(tune, out);
    if (*solve_cmd) m = cli::run_solve(solve, out);
    if (*sweep_cmd) m = cli::run_sweep(sweep, out);
    if (*dens_cmd) m = cli::run_density(dens, out);
    if (*gp_cmd) m = cli::run_gp_sample(gp, out);
    if (*replay_cmd) m = cli::replay(manifest, out);
    if (m.contains("results")) std::cout << m["results"].dump(2) << '\n';
    const auto& results = m["results"];
    if (results.contains("status") && results["status"] != "ok")
      std::cerr << "warning: Picard iteration did not reach the tolerance\n";
  } catch (const transnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const transnet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return cli::kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kNumericalFailure;
  }
  return cli::kSuccess;
}
