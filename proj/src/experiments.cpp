#include "relyap/experiments.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <thread>

#include <json.hpp>

#include "relyap/errors.hpp"
#include "relyap/model.hpp"
#include "relyap/spectral.hpp"
#include "relyap/trajectory.hpp"

namespace relyap {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name, std::string* path_out) {
  fs::create_directories(cfg.output_dir);
  const std::string path = (fs::path(cfg.output_dir) / name).string();
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  if (path_out) *path_out = path;
  return out;
}

SweepSpec sweep_from_json(const json& j, const std::string& key) {
  for (const auto& [k, v] : j.items()) {
    if (k != "start" && k != "stop" && k != "step") {
      throw ConfigError("config: unknown key '" + key + "." + k + "'");
    }
  }
  if (!j.contains("start") || !j.contains("stop") || !j.contains("step")) {
    throw ConfigError("config: '" + key + "' needs start, stop and step");
  }
  return SweepSpec{j["start"].get<double>(), j["stop"].get<double>(), j["step"].get<double>()};
}

std::vector<double> sweep_points(const SweepSpec& s) {
  std::vector<double> pts;
  const int n = int(std::floor((s.stop - s.start) / s.step + 1e-9));
  pts.reserve(n + 1);
  for (int k = 0; k <= n; ++k) pts.push_back(s.start + k * s.step);
  return pts;
}

void parse_fields(const json& j, ExperimentConfig& cfg) {
  for (const auto& [key, value] : j.items()) {
    if (key == "gamma") {
      if (value.is_object()) {
        cfg.gamma_sweep = sweep_from_json(value, key);
      } else {
        cfg.gamma = value.get<double>();
      }
    } else if (key == "fine") {
      cfg.fine = sweep_from_json(value, key);
    } else if (key == "M") {
      cfg.M = value.get<int>();
    } else if (key == "N") {
      cfg.N = value.get<int>();
    } else if (key == "t_f") {
      cfg.t_f = value.get<double>();
    } else if (key == "r") {
      cfg.r = value.get<int>();
    } else if (key == "phi0") {
      cfg.phi0 = value.get<double>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "quad_order") {
      cfg.quad_order = value.get<int>();
    } else if (key == "transient_skip") {
      cfg.transient_skip = value.get<double>();
    } else if (key == "output_dir") {
      cfg.output_dir = value.get<std::string>();
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
}

// dominant exponent reference for a trajectory that has settled to an
// equilibrium whose linearization admits a real exponential rate
std::optional<double> equilibrium_reference(const ExperimentConfig& cfg) {
  const NonlinearRE model = quad_re(cfg.gamma);
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(model.d, cfg.phi0);
  const double t_end = cfg.transient_skip + cfg.t_f;
  const Trajectory traj = solve_re(model, phi, t_end, cfg.r);
  const Eigen::VectorXd tail = traj.eval(traj.t_end());
  for (double t = traj.t_end() - 20.0; t < traj.t_end(); t += 0.25) {
    if ((traj.eval(t) - tail).cwiseAbs().maxCoeff() > 1e-6) return std::nullopt;
  }
  const double mid = 0.5 * (model.lag_lo + model.lag_hi);
  const double c = model.jacobian_integrand(t_end, mid, tail)(0, 0);
  CharacteristicProblem problem{c, model.lag_lo, model.lag_hi};
  return dominant_real_root(problem, -10.0, 10.0, 1e-12);
}

}  // namespace

int ExperimentConfig::effective_quad_order() const {
  return quad_order > 0 ? quad_order : 2 * std::max(M, N) + 8;
}

void ExperimentConfig::validate() const {
  if (N < 1) throw ConfigError("config: N must be >= 1");
  if (M < 1) throw ConfigError("config: M must be >= 1");
  if (M < N - 1) throw ConfigError("config: M must be >= N - 1");
  if (!(t_f >= 3.0)) throw ConfigError("config: t_f must be >= 3");
  if (r < 1) throw ConfigError("config: r must be >= 1");
  if (!std::isfinite(phi0)) throw ConfigError("config: phi0 must be finite");
  if (quad_order != 0 && quad_order < 2) throw ConfigError("config: quad_order must be >= 2");
  if (!(transient_skip >= 0)) throw ConfigError("config: transient_skip must be >= 0");
  if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
  if (gamma_sweep) {
    const SweepSpec& s = *gamma_sweep;
    if (!(s.step > 0)) throw ConfigError("config: sweep step must be positive");
    if (!(s.start > 0) || !(s.stop <= 5.0) || s.start > s.stop) {
      throw ConfigError("config: sweep bounds must lie within (0, 5]");
    }
  } else if (!(gamma > 0)) {
    throw ConfigError("config: gamma must be positive");
  }
  if (fine && !(fine->step > 0)) throw ConfigError("config: fine step must be positive");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    parse_fields(j, cfg);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::uint64_t mix_seed(std::uint64_t seed, double gamma) {
  return seed ^ splitmix64(std::bit_cast<std::uint64_t>(gamma));
}

Trajectory compute_trajectory(const ExperimentConfig& cfg) {
  cfg.validate();
  const NonlinearRE model = quad_re(cfg.gamma);
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(model.d, cfg.phi0);
  return solve_re(model, phi, cfg.transient_skip + cfg.t_f, cfg.r);
}

LyapunovEstimate compute_lyapunov(const ExperimentConfig& cfg) {
  cfg.validate();
  const NonlinearRE model = quad_re(cfg.gamma);
  const mesh::CollocationMesh grid = mesh::make_mesh(cfg.M, cfg.N, model.tau);
  const double tau = model.tau;
  const int n_steps = int(std::floor(cfg.t_f / tau + 1e-12));
  const double s0 = cfg.transient_skip;

  Eigen::VectorXd phi = Eigen::VectorXd::Constant(model.d, cfg.phi0);
  auto traj = std::make_shared<const Trajectory>(solve_re(model, phi, s0 + n_steps * tau, cfg.r));
  const Kernel kernel = linearize(model, traj);
  const WindowAssembler assembler(kernel, grid, cfg.effective_quad_order());

  auto op_source = [&assembler, s0, tau](int n) { return assembler.assemble(s0 + n * tau); };
  return dqr_run(op_source, assembler.order(), tau, cfg.t_f, cfg.seed);
}

std::vector<DiagramRow> compute_diagram(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.gamma_sweep) throw ConfigError("diagram: config needs a gamma sweep");

  std::vector<double> gammas = sweep_points(*cfg.gamma_sweep);
  if (cfg.fine) {
    for (double g : sweep_points(*cfg.fine)) gammas.push_back(g);
  }
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               gammas.end());

  std::vector<DiagramRow> rows(gammas.size());
  std::atomic<size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), unsigned(gammas.size())));
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < gammas.size(); i = next.fetch_add(1)) {
      ExperimentConfig job = cfg;
      job.gamma_sweep.reset();
      job.fine.reset();
      job.gamma = gammas[i];
      job.seed = mix_seed(cfg.seed, gammas[i]);
      rows[i].gamma = gammas[i];
      try {
        const std::vector<double> les = compute_lyapunov(job).sorted();
        rows[i].le1 = les[0];
        rows[i].le2 = les.size() > 1 ? les[1] : std::numeric_limits<double>::quiet_NaN();
      } catch (const std::runtime_error&) {
        rows[i].le1 = rows[i].le2 = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

std::vector<ConvergenceRow> compute_convergence(const ExperimentConfig& cfg, const std::string& mode) {
  cfg.validate();
  std::vector<ConvergenceRow> rows;
  if (mode == "tf") {
    const std::vector<double> grid{cfg.t_f / 8.0, cfg.t_f / 4.0, cfg.t_f / 2.0, cfg.t_f};
    double reference;
    if (const auto oracle = equilibrium_reference(cfg)) {
      reference = *oracle;
    } else {
      ExperimentConfig ref_cfg = cfg;
      ref_cfg.t_f = 2.0 * cfg.t_f;
      reference = compute_lyapunov(ref_cfg).sorted()[0];
    }
    for (double tf : grid) {
      ExperimentConfig job = cfg;
      job.t_f = tf;
      const double lambda = compute_lyapunov(job).sorted()[0];
      rows.push_back({tf, lambda, reference, std::abs(lambda - reference)});
    }
  } else if (mode == "MN") {
    const std::vector<int> grid{8, 12, 16, 20};
    double reference;
    if (const auto oracle = equilibrium_reference(cfg)) {
      reference = *oracle;
    } else {
      ExperimentConfig ref_cfg = cfg;
      ref_cfg.M = ref_cfg.N = grid.back() + 8;
      reference = compute_lyapunov(ref_cfg).sorted()[0];
    }
    for (int mn : grid) {
      ExperimentConfig job = cfg;
      job.M = job.N = mn;
      const double lambda = compute_lyapunov(job).sorted()[0];
      rows.push_back({double(mn), lambda, reference, std::abs(lambda - reference)});
    }
  } else {
    throw ConfigError("converge: mode must be 'tf' or 'MN'");
  }
  return rows;
}

std::vector<std::string> run_solve(const ExperimentConfig& cfg) {
  const Trajectory traj = compute_trajectory(cfg);
  std::string path;
  std::ofstream out = open_out(cfg, "trajectory.csv", &path);
  out << "t";
  for (int p = 1; p <= traj.d; ++p) out << ",x_" << p;
  out << "\n";
  for (Eigen::Index m = 0; m < traj.samples.cols(); ++m) {
    out << fmt(traj.t_begin() + double(m) * traj.delta);
    for (int p = 0; p < traj.d; ++p) out << "," << fmt(traj.samples(p, m));
    out << "\n";
  }
  return {path};
}

std::vector<std::string> run_lyapunov(const ExperimentConfig& cfg) {
  return write_lyapunov_outputs(cfg, compute_lyapunov(cfg));
}

std::vector<std::string> write_lyapunov_outputs(const ExperimentConfig& cfg,
                                                const LyapunovEstimate& est) {
  std::string les_path;
  {
    std::ofstream out = open_out(cfg, "les.csv", &les_path);
    out << "index,lambda\n";
    const std::vector<double> les = est.sorted();
    for (size_t i = 0; i < les.size(); ++i) out << i + 1 << "," << fmt(les[i]) << "\n";
  }
  std::string hist_path;
  {
    std::ofstream out = open_out(cfg, "history.csv", &hist_path);
    out << "step,t";
    for (Eigen::Index i = 1; i <= est.history.cols(); ++i) out << ",lambda_" << i;
    out << "\n";
    for (Eigen::Index n = 0; n < est.history.rows(); ++n) {
      out << n + 1 << "," << fmt(est.times[size_t(n)]);
      for (Eigen::Index i = 0; i < est.history.cols(); ++i) out << "," << fmt(est.history(n, i));
      out << "\n";
    }
  }
  return {les_path, hist_path};
}

std::vector<std::string> run_diagram(const ExperimentConfig& cfg) {
  const std::vector<DiagramRow> rows = compute_diagram(cfg);
  std::string csv_path;
  {
    std::ofstream out = open_out(cfg, "diagram.csv", &csv_path);
    out << "gamma,le1,le2\n";
    for (const DiagramRow& row : rows) {
      out << fmt(row.gamma) << "," << fmt(row.le1) << "," << fmt(row.le2) << "\n";
    }
  }
  std::string gp_path;
  {
    std::ofstream out = open_out(cfg, "diagram.gp", &gp_path);
    out << "set datafile separator ','\n"
           "set xlabel 'gamma'\n"
           "set ylabel 'Lyapunov exponent'\n"
           "set grid\n"
           "plot 'diagram.csv' skip 1 using 1:2 with lines title 'le1', \\\n"
           "     'diagram.csv' skip 1 using 1:3 with lines title 'le2', \\\n"
           "     0 with lines lc rgb 'gray' notitle\n";
  }
  return {csv_path, gp_path};
}

std::vector<std::string> run_convergence(const ExperimentConfig& cfg, const std::string& mode) {
  const std::vector<ConvergenceRow> rows = compute_convergence(cfg, mode);
  std::string path;
  std::ofstream out = open_out(cfg, mode == "tf" ? "convergence_tf.csv" : "convergence_mn.csv", &path);
  out << (mode == "tf" ? "tf" : "MN") << ",lambda,reference,abs_error\n";
  for (const ConvergenceRow& row : rows) {
    out << fmt(row.param) << "," << fmt(row.lambda) << "," << fmt(row.reference) << ","
        << fmt(row.abs_error) << "\n";
  }
  return {path};
}

std::string dump_operator(const ExperimentConfig& cfg, int window_index) {
  cfg.validate();
  if (window_index < 0) throw ConfigError("dump: window index must be >= 0");
  const NonlinearRE model = quad_re(cfg.gamma);
  const mesh::CollocationMesh grid = mesh::make_mesh(cfg.M, cfg.N, model.tau);
  const double tau = model.tau;
  const double s = cfg.transient_skip + window_index * tau;
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(model.d, cfg.phi0);
  auto traj = std::make_shared<const Trajectory>(solve_re(model, phi, s + tau, cfg.r));
  const EvolutionMatrix T =
      assemble_T(linearize(model, traj), s, grid, cfg.effective_quad_order());
  std::string path;
  std::ofstream out = open_out(cfg, "operator_" + std::to_string(window_index) + ".csv", &path);
  for (Eigen::Index i = 0; i < T.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < T.entries.cols(); ++j) {
      out << (j ? "," : "") << fmt(T.entries(i, j));
    }
    out << "\n";
  }
  return path;
}

}  // namespace relyap
