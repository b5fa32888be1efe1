#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relyap/dqr.hpp"

namespace relyap {

struct SweepSpec {
  double start = 0;
  double stop = 0;
  double step = 0;
};

struct ExperimentConfig {
  double gamma = 0.5;
  std::optional<SweepSpec> gamma_sweep;  // diagram runs
  std::optional<SweepSpec> fine;         // extra refinement merged into the sweep
  int M = 16;
  int N = 16;
  double t_f = 1000.0;
  int r = 40;
  double phi0 = 0.1;
  std::uint64_t seed = 0;
  int quad_order = 0;  // 0 selects 2*max(M,N) + 8
  double transient_skip = 0.0;
  std::string output_dir = ".";

  int effective_quad_order() const;
  void validate() const;  // throws ConfigError
};

ExperimentConfig load_config(const std::string& path);

/// Deterministic per-gamma seed for sweep jobs.
std::uint64_t mix_seed(std::uint64_t seed, double gamma);

/// Full pipeline for one gamma: integrate the nonlinear RE, linearize along
/// the trajectory, assemble the per-window operators lazily and run the
/// discrete QR iteration.
LyapunovEstimate compute_lyapunov(const ExperimentConfig& cfg);

/// Trajectory of the nonlinear RE for cfg.gamma up to t_f.
Trajectory compute_trajectory(const ExperimentConfig& cfg);

struct DiagramRow {
  double gamma = 0;
  double le1 = 0;
  double le2 = 0;
};

/// One pipeline per grid point of the sweep (plus the fine segment), run in
/// parallel; failures become NaN rows. Rows are sorted by gamma.
std::vector<DiagramRow> compute_diagram(const ExperimentConfig& cfg);

struct ConvergenceRow {
  double param = 0;      // t_f or M=N
  double lambda = 0;     // dominant exponent
  double reference = 0;
  double abs_error = 0;
};

/// Error of the dominant exponent against a reference, swept over t_f
/// (mode "tf") or over M=N (mode "MN"). The reference is the bisection
/// characteristic root when the trajectory settles to an equilibrium whose
/// linearization admits a real root, and a higher-resolution run otherwise.
std::vector<ConvergenceRow> compute_convergence(const ExperimentConfig& cfg, const std::string& mode);

// CSV/plot-script emitting front ends used by the CLI. Each returns the paths
// of the files written.
std::vector<std::string> run_solve(const ExperimentConfig& cfg);
std::vector<std::string> run_lyapunov(const ExperimentConfig& cfg);
std::vector<std::string> write_lyapunov_outputs(const ExperimentConfig& cfg,
                                                const LyapunovEstimate& est);
std::vector<std::string> run_diagram(const ExperimentConfig& cfg);
std::vector<std::string> run_convergence(const ExperimentConfig& cfg, const std::string& mode);

/// Flag-gated debug dump of one assembled window matrix.
std::string dump_operator(const ExperimentConfig& cfg, int window_index);

}  // namespace relyap
