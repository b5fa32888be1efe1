// python module exposing the main operations of the library

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "relyap/dqr.hpp"
#include "relyap/errors.hpp"
#include "relyap/experiments.hpp"
#include "relyap/mesh.hpp"
#include "relyap/model.hpp"
#include "relyap/spectral.hpp"
#include "relyap/trajectory.hpp"

namespace py = pybind11;
using namespace relyap;

namespace {

ExperimentConfig make_config(double gamma, int M, int N, double t_f, int r, double phi0,
                             std::uint64_t seed, int quad_order, double transient_skip) {
  ExperimentConfig cfg;
  cfg.gamma = gamma;
  cfg.M = M;
  cfg.N = N;
  cfg.t_f = t_f;
  cfg.r = r;
  cfg.phi0 = phi0;
  cfg.seed = seed;
  cfg.quad_order = quad_order;
  cfg.transient_skip = transient_skip;
  return cfg;
}

Eigen::MatrixXd autonomous_operator(double c, int M, int N, int quad_order) {
  Kernel k;
  k.d = 1;
  k.tau = 3.0;
  k.support_lo = -3.0;
  k.support_hi = -1.0;
  k.eval_in_support = [c](double, double, Eigen::Ref<Eigen::MatrixXd> out) { out(0, 0) = c; };
  const auto grid = mesh::make_mesh(M, N, 3.0);
  const int Q = quad_order > 0 ? quad_order : 2 * std::max(M, N) + 8;
  return assemble_T(k, 0.0, grid, Q).entries;
}

}  // namespace

PYBIND11_MODULE(_relyap, m) {
  m.doc() = "Lyapunov exponents of renewal equations via collocated evolution operators";

  py::register_exception<CoverageError>(m, "CoverageError", PyExc_RuntimeError);
  py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
  py::register_exception<AssemblyError>(m, "AssemblyError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("cheb_extrema", &mesh::cheb_extrema, py::arg("M"), py::arg("a"), py::arg("b"),
        "Chebyshev extrema mapped to [a, b], endpoints included");
  m.def("cheb_zeros", &mesh::cheb_zeros, py::arg("N"), py::arg("a"), py::arg("b"),
        "Chebyshev zeros mapped to [a, b], strictly interior");
  m.def(
      "barycentric_weights",
      [](const std::vector<double>& nodes) { return mesh::barycentric_weights(nodes); },
      py::arg("nodes"));
  m.def(
      "interp_eval",
      [](const std::vector<double>& nodes, const std::vector<double>& weights,
         const std::vector<double>& values, double t) {
        return mesh::interp_eval(nodes, weights, values, t);
      },
      py::arg("nodes"), py::arg("weights"), py::arg("values"), py::arg("t"));
  m.def(
      "quad_cc",
      [](const std::function<double(double)>& f, double a, double b, int Q) {
        return mesh::quad_cc(f, a, b, Q);
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("Q"),
      "Clenshaw-Curtis integral of f over [a, b] with Q+1 nodes");

  m.def(
      "equilibria",
      [](double gamma) {
        const Equilibria e = equilibria(gamma);
        return py::make_tuple(e.trivial, e.nontrivial);
      },
      py::arg("gamma"), "constant solutions (trivial, nontrivial) of the quadratic model");

  m.def(
      "solve_quadratic",
      [](double gamma, double phi0, double t_end, int r) {
        Eigen::VectorXd phi(1);
        phi << phi0;
        const Trajectory traj = solve_re(quad_re(gamma), phi, t_end, r);
        const Eigen::Index n = traj.samples.cols();
        Eigen::VectorXd t(n), x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          t[i] = traj.t_begin() + double(i) * traj.delta;
          x[i] = traj.samples(0, i);
        }
        return py::make_tuple(t, x);
      },
      py::arg("gamma"), py::arg("phi0") = 0.1, py::arg("t_end") = 100.0, py::arg("r") = 40,
      "integrate the quadratic model; returns (times, values) including the history segment");

  m.def("autonomous_operator", &autonomous_operator, py::arg("c"), py::arg("M") = 16,
        py::arg("N") = 16, py::arg("quad_order") = 0,
        "one evolution matrix for the constant kernel c on [-3, -1]");

  m.def(
      "characteristic_root",
      [](double c, double lo, double hi, double tol) -> std::optional<double> {
        return dominant_real_root({c, -3.0, -1.0}, lo, hi, tol);
      },
      py::arg("c"), py::arg("lo") = -10.0, py::arg("hi") = 10.0, py::arg("tol") = 1e-12,
      "real exponential rate of the autonomous kernel, or None without a sign change");

  m.def(
      "operator_eigs", [](const Eigen::MatrixXd& A) { return matrix_eigs(A); }, py::arg("matrix"));
  m.def(
      "le_from_eigs",
      [](const Eigen::VectorXcd& eigs, double h) { return le_from_eigs(eigs, h); },
      py::arg("eigs"), py::arg("h"));

  m.def("random_unitary", &random_unitary, py::arg("m"), py::arg("seed"));
  m.def(
      "qr_pos",
      [](const Eigen::MatrixXd& A) {
        const QrFactors f = qr_pos(A);
        return py::make_tuple(f.Q, f.R);
      },
      py::arg("A"), "QR factorization with non-negative diagonal of R");

  m.def(
      "lyapunov",
      [](double gamma, int M, int N, double t_f, int r, double phi0, std::uint64_t seed,
         int quad_order, double transient_skip, bool history) {
        const ExperimentConfig cfg =
            make_config(gamma, M, N, t_f, r, phi0, seed, quad_order, transient_skip);
        const LyapunovEstimate est = compute_lyapunov(cfg);
        py::dict out;
        out["exponents"] = est.sorted();
        out["steps"] = est.steps;
        out["t_f"] = est.t_f;
        if (history) {
          out["history"] = est.history;
          out["times"] = est.times;
        }
        return out;
      },
      py::arg("gamma"), py::arg("M") = 16, py::arg("N") = 16, py::arg("t_f") = 1000.0,
      py::arg("r") = 40, py::arg("phi0") = 0.1, py::arg("seed") = 0, py::arg("quad_order") = 0,
      py::arg("transient_skip") = 0.0, py::arg("history") = false,
      "full pipeline: integrate, linearize, assemble windows, run the QR iteration; "
      "returns the exponents sorted in descending order");

  m.def(
      "diagram",
      [](double start, double stop, double step, int M, int N, double t_f, int r, double phi0,
         std::uint64_t seed) {
        ExperimentConfig cfg = make_config(start, M, N, t_f, r, phi0, seed, 0, 0.0);
        cfg.gamma_sweep = SweepSpec{start, stop, step};
        const auto rows = compute_diagram(cfg);
        Eigen::MatrixXd out(Eigen::Index(rows.size()), 3);
        for (size_t i = 0; i < rows.size(); ++i) {
          out(Eigen::Index(i), 0) = rows[i].gamma;
          out(Eigen::Index(i), 1) = rows[i].le1;
          out(Eigen::Index(i), 2) = rows[i].le2;
        }
        return out;
      },
      py::arg("start"), py::arg("stop"), py::arg("step"), py::arg("M") = 16, py::arg("N") = 16,
      py::arg("t_f") = 1000.0, py::arg("r") = 40, py::arg("phi0") = 0.1, py::arg("seed") = 0,
      "sweep gamma; returns rows (gamma, le1, le2)");
}
