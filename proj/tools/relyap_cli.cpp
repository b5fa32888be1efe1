// Command line front end: solve / lyapunov / diagram / converge.
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relyap/errors.hpp"
#include "relyap/experiments.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config_file;
  std::optional<double> gamma;
  std::optional<int> M, N, r, quad_order;
  std::optional<double> tf, phi0, transient_skip;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> gamma_start, gamma_stop, gamma_step;
  std::optional<double> fine_start, fine_stop, fine_step;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_file, "JSON config file");
  cmd->add_option("--gamma", ov.gamma, "model parameter gamma");
  cmd->add_option("--M", ov.M, "state discretization index");
  cmd->add_option("--N", ov.N, "step discretization index");
  cmd->add_option("--tf", ov.tf, "final time");
  cmd->add_option("--r", ov.r, "solver grid pieces per unit time");
  cmd->add_option("--phi0", ov.phi0, "constant initial value");
  cmd->add_option("--seed", ov.seed, "random seed");
  cmd->add_option("--quad-order", ov.quad_order, "quadrature order (0 = automatic)");
  cmd->add_option("--transient-skip", ov.transient_skip, "time skipped before the QR iteration");
  cmd->add_option("--out", ov.out, "output directory");
}

void add_sweep(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--gamma-start", ov.gamma_start, "sweep start");
  cmd->add_option("--gamma-stop", ov.gamma_stop, "sweep stop");
  cmd->add_option("--gamma-step", ov.gamma_step, "sweep step");
  cmd->add_option("--fine-start", ov.fine_start, "refinement segment start");
  cmd->add_option("--fine-stop", ov.fine_stop, "refinement segment stop");
  cmd->add_option("--fine-step", ov.fine_step, "refinement segment step");
}

relyap::ExperimentConfig build_config(const Overrides& ov) {
  relyap::ExperimentConfig cfg;
  if (ov.config_file) cfg = relyap::load_config(*ov.config_file);
  if (ov.gamma) {
    cfg.gamma = *ov.gamma;
    cfg.gamma_sweep.reset();
  }
  if (ov.M) cfg.M = *ov.M;
  if (ov.N) cfg.N = *ov.N;
  if (ov.tf) cfg.t_f = *ov.tf;
  if (ov.r) cfg.r = *ov.r;
  if (ov.phi0) cfg.phi0 = *ov.phi0;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.quad_order) cfg.quad_order = *ov.quad_order;
  if (ov.transient_skip) cfg.transient_skip = *ov.transient_skip;
  if (ov.out) cfg.output_dir = *ov.out;
  if (ov.gamma_start || ov.gamma_stop || ov.gamma_step) {
    if (!(ov.gamma_start && ov.gamma_stop && ov.gamma_step)) {
      throw relyap::ConfigError("sweep needs --gamma-start, --gamma-stop and --gamma-step");
    }
    cfg.gamma_sweep = relyap::SweepSpec{*ov.gamma_start, *ov.gamma_stop, *ov.gamma_step};
  }
  if (ov.fine_start || ov.fine_stop || ov.fine_step) {
    if (!(ov.fine_start && ov.fine_stop && ov.fine_step)) {
      throw relyap::ConfigError("refinement needs --fine-start, --fine-stop and --fine-step");
    }
    cfg.fine = relyap::SweepSpec{*ov.fine_start, *ov.fine_stop, *ov.fine_step};
  }
  return cfg;
}

void report(const std::vector<std::string>& files) {
  for (const std::string& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov exponents of renewal equations via collocated evolution operators"};
  app.require_subcommand(1);

  Overrides ov;
  std::string mode = "tf";
  std::optional<int> dump_window;

  CLI::App* solve = app.add_subcommand("solve", "integrate the nonlinear model, write trajectory.csv");
  add_common(solve, ov);

  CLI::App* lyap = app.add_subcommand("lyapunov", "compute exponents, write les.csv and history.csv");
  add_common(lyap, ov);
  lyap->add_option("--dump-operator", dump_window, "also dump one assembled window matrix");

  CLI::App* diagram = app.add_subcommand("diagram", "sweep gamma, write diagram.csv and diagram.gp");
  add_common(diagram, ov);
  add_sweep(diagram, ov);

  CLI::App* converge = app.add_subcommand("converge", "error table against a reference exponent");
  add_common(converge, ov);
  converge->add_option("--mode", mode, "tf or MN")->check(CLI::IsMember({"tf", "MN"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const relyap::ExperimentConfig cfg = build_config(ov);
    if (solve->parsed()) {
      report(relyap::run_solve(cfg));
    } else if (lyap->parsed()) {
      const auto est = relyap::compute_lyapunov(cfg);
      report(relyap::write_lyapunov_outputs(cfg, est));
      if (dump_window) std::cout << "wrote " << relyap::dump_operator(cfg, *dump_window) << "\n";
      const auto les = est.sorted();
      std::cout << "dominant exponents:";
      for (size_t i = 0; i < les.size() && i < 4; ++i) std::cout << " " << les[i];
      std::cout << "\n";
    } else if (diagram->parsed()) {
      report(relyap::run_diagram(cfg));
    } else if (converge->parsed()) {
      report(relyap::run_convergence(cfg, mode));
    }
  } catch (const relyap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
