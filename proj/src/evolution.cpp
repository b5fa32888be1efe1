#include "relyap/evolution.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "relyap/errors.hpp"

namespace relyap {

namespace {

struct Interval {
  double lo, hi;
  bool empty() const { return !(hi > lo); }
};

// Row i of U1 integrates over the part of the window where the interpolant
// argument t_i + theta stays in [-tau, 0]: theta in [-tau, -t_i], clipped to
// the kernel support.
Interval u1_interval(double tau, const Kernel& k, double t_i) {
  return {std::max(-tau, k.support_lo), std::min(-t_i, k.support_hi)};
}

// Row i of U2 covers the complementary part, t_i + theta in (0, h]:
// theta in (-t_i, 0], clipped to the kernel support.
Interval u2_interval(const Kernel& k, double t_i) {
  return {std::max(-t_i, k.support_lo), std::min(0.0, k.support_hi)};
}

void check_mesh_kernel(const Kernel& k, const mesh::CollocationMesh& m) {
  if (m.h != m.tau) throw std::invalid_argument("evolution: mesh must have h = tau");
  if (std::abs(k.tau - m.tau) > 1e-12) {
    throw std::invalid_argument("evolution: kernel and mesh disagree on tau");
  }
  if (k.support_lo < -k.tau - 1e-12 || k.support_hi > 1e-12 || k.support_lo > k.support_hi) {
    throw std::invalid_argument("evolution: kernel support must lie in [-tau, 0]");
  }
  if (k.d < 1) throw std::invalid_argument("evolution: kernel dimension must be >= 1");
}

}  // namespace

WindowAssembler::WindowAssembler(Kernel kernel, mesh::CollocationMesh mesh, int Q)
    : kernel_(std::move(kernel)), mesh_(std::move(mesh)), quad_order_(Q) {
  check_mesh_kernel(kernel_, mesh_);
  if (Q < 2) throw std::invalid_argument("WindowAssembler: quadrature order must be >= 2");

  const int M = mesh_.M, N = mesh_.N;
  state_rows_.resize(N);
  step_rows_.resize(N);
  for (int i = 0; i < N; ++i) {
    const double t_i = mesh_.step_nodes[i];
    if (const Interval iv = u1_interval(mesh_.tau, kernel_, t_i); !iv.empty()) {
      mesh::QuadRule rule = mesh::cc_rule(Q, iv.lo, iv.hi);
      RowQuad& row = state_rows_[i];
      row.basis.resize(Q + 1, M + 1);
      for (int q = 0; q <= Q; ++q) {
        mesh::interp_basis(mesh_.state_nodes, mesh_.state_bary_weights, t_i + rule.nodes[q],
                           {row.basis.row(q).data(), size_t(M + 1)});
      }
      row.nodes = std::move(rule.nodes);
      row.weights = std::move(rule.weights);
    }
    if (const Interval iv = u2_interval(kernel_, t_i); !iv.empty()) {
      mesh::QuadRule rule = mesh::cc_rule(Q, iv.lo, iv.hi);
      RowQuad& row = step_rows_[i];
      row.basis.resize(Q + 1, N);
      for (int q = 0; q <= Q; ++q) {
        mesh::interp_basis(mesh_.step_nodes, mesh_.step_bary_weights, t_i + rule.nodes[q],
                           {row.basis.row(q).data(), size_t(N)});
      }
      row.nodes = std::move(rule.nodes);
      row.weights = std::move(rule.weights);
    }
  }

  const int d = kernel_.d;
  t2_.setZero(d * (M + 1), d * N);
  std::vector<double> basis(N);
  for (int j = 0; j <= M; ++j) {
    mesh::interp_basis(mesh_.step_nodes, mesh_.step_bary_weights, mesh_.h + mesh_.state_nodes[j],
                       basis);
    for (int i = 0; i < N; ++i) {
      for (int p = 0; p < d; ++p) t2_(j * d + p, i * d + p) = basis[i];
    }
  }
}

EvolutionMatrix WindowAssembler::assemble(double window_start) const {
  const int M = mesh_.M, N = mesh_.N, d = kernel_.d;
  Eigen::MatrixXd U1 = Eigen::MatrixXd::Zero(d * N, d * (M + 1));
  Eigen::MatrixXd U2 = Eigen::MatrixXd::Zero(d * N, d * N);
  Eigen::MatrixXd C(d, d);

  for (int i = 0; i < N; ++i) {
    const double t = window_start + mesh_.step_nodes[i];
    if (const RowQuad& row = state_rows_[i]; row.basis.size() > 0) {
      for (size_t q = 0; q < row.nodes.size(); ++q) {
        kernel_.eval_in_support(t, row.nodes[q], C);
        const double w = row.weights[q];
        for (int j = 0; j <= M; ++j) {
          U1.block(i * d, j * d, d, d).noalias() += (w * row.basis(Eigen::Index(q), j)) * C;
        }
      }
    }
    if (const RowQuad& row = step_rows_[i]; row.basis.size() > 0) {
      for (size_t q = 0; q < row.nodes.size(); ++q) {
        kernel_.eval_in_support(t, row.nodes[q], C);
        const double w = row.weights[q];
        for (int j = 0; j < N; ++j) {
          U2.block(i * d, j * d, d, d).noalias() += (w * row.basis(Eigen::Index(q), j)) * C;
        }
      }
    }
  }

  if (!U1.allFinite() || !U2.allFinite()) {
    throw NumericError("assemble_T: non-finite kernel integrals in window starting at t = " +
                       std::to_string(window_start));
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(d * N, d * N) - U2;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rc = lu.rcond();
  if (!(rc >= 1e-12)) {
    throw AssemblyError("assemble_T: step equation ill-conditioned, rcond = " + std::to_string(rc));
  }

  EvolutionMatrix T;
  T.entries.noalias() = t2_ * lu.solve(U1);  // T1 contribution is identically zero for h = tau
  T.window_start = window_start;
  T.window_length = mesh_.h;
  T.M = M;
  T.N = N;
  T.d = d;
  return T;
}

Eigen::MatrixXd build_U1(const Kernel& kernel, double s, const mesh::CollocationMesh& m, int Q) {
  check_mesh_kernel(kernel, m);
  if (Q < 2) throw std::invalid_argument("build_U1: quadrature order must be >= 2");
  const int M = m.M, N = m.N, d = kernel.d;
  Eigen::MatrixXd U1 = Eigen::MatrixXd::Zero(d * N, d * (M + 1));
  Eigen::MatrixXd C(d, d);
  std::vector<double> basis(M + 1);
  for (int i = 0; i < N; ++i) {
    const double t_i = m.step_nodes[i];
    const Interval iv = u1_interval(m.tau, kernel, t_i);
    if (iv.empty()) continue;
    const mesh::QuadRule rule = mesh::cc_rule(Q, iv.lo, iv.hi);
    for (int q = 0; q <= Q; ++q) {
      mesh::interp_basis(m.state_nodes, m.state_bary_weights, t_i + rule.nodes[q], basis);
      kernel.eval_in_support(s + t_i, rule.nodes[q], C);
      for (int j = 0; j <= M; ++j) {
        U1.block(i * d, j * d, d, d).noalias() += (rule.weights[q] * basis[j]) * C;
      }
    }
  }
  return U1;
}

Eigen::MatrixXd build_U2(const Kernel& kernel, double s, const mesh::CollocationMesh& m, int Q) {
  check_mesh_kernel(kernel, m);
  if (Q < 2) throw std::invalid_argument("build_U2: quadrature order must be >= 2");
  const int N = m.N, d = kernel.d;
  Eigen::MatrixXd U2 = Eigen::MatrixXd::Zero(d * N, d * N);
  Eigen::MatrixXd C(d, d);
  std::vector<double> basis(N);
  for (int i = 0; i < N; ++i) {
    const double t_i = m.step_nodes[i];
    const Interval iv = u2_interval(kernel, t_i);
    if (iv.empty()) continue;
    const mesh::QuadRule rule = mesh::cc_rule(Q, iv.lo, iv.hi);
    for (int q = 0; q <= Q; ++q) {
      mesh::interp_basis(m.step_nodes, m.step_bary_weights, t_i + rule.nodes[q], basis);
      kernel.eval_in_support(s + t_i, rule.nodes[q], C);
      for (int j = 0; j < N; ++j) {
        U2.block(i * d, j * d, d, d).noalias() += (rule.weights[q] * basis[j]) * C;
      }
    }
  }
  return U2;
}

Eigen::MatrixXd build_T1(const mesh::CollocationMesh& m, int d) {
  return Eigen::MatrixXd::Zero(d * (m.M + 1), d * (m.M + 1));
}

Eigen::MatrixXd build_T2(const mesh::CollocationMesh& m, int d) {
  const int M = m.M, N = m.N;
  Eigen::MatrixXd T2 = Eigen::MatrixXd::Zero(d * (M + 1), d * N);
  std::vector<double> basis(N);
  for (int j = 0; j <= M; ++j) {
    mesh::interp_basis(m.step_nodes, m.step_bary_weights, m.h + m.state_nodes[j], basis);
    for (int i = 0; i < N; ++i) {
      for (int p = 0; p < d; ++p) T2(j * d + p, i * d + p) = basis[i];
    }
  }
  return T2;
}

EvolutionMatrix assemble_T(const Kernel& kernel, double s, const mesh::CollocationMesh& m, int Q) {
  return WindowAssembler(kernel, m, Q).assemble(s);
}

}  // namespace relyap
