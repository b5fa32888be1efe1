#pragma once

#include <Eigen/Core>
#include <vector>

#include "relyap/mesh.hpp"
#include "relyap/model.hpp"

namespace relyap {

/// Dense realization of one evolution operator over [window_start,
/// window_start + window_length], acting on state values at the mesh's
/// state nodes. Order is d*(M+1).
struct EvolutionMatrix {
  Eigen::MatrixXd entries;
  double window_start = 0;
  double window_length = 0;
  int M = 0;
  int N = 0;
  int d = 1;
};

// The step values W solve (I - U2) W = U1 Phi; the new state is
// T1 Phi + T2 W. Row i of U1/U2 integrates the kernel at time s + t_i
// against the state/step interpolant, over the part of the kernel support
// where the interpolant argument t_i + theta falls left (state) or right
// (step) of 0. Quadrature intervals are intersected with the support, so
// each piece is free of kernel jumps.

Eigen::MatrixXd build_U1(const Kernel& kernel, double s, const mesh::CollocationMesh& mesh, int Q);
Eigen::MatrixXd build_U2(const Kernel& kernel, double s, const mesh::CollocationMesh& mesh, int Q);

/// Zero matrix of order d*(M+1): with h = tau the shifted past contributes
/// only at the single node theta = -tau, and that node is assigned from the
/// step polynomial by build_T2.
Eigen::MatrixXd build_T1(const mesh::CollocationMesh& mesh, int d = 1);

/// Row block j evaluates the step interpolant at h + theta_j (at theta_j =
/// -tau this is the polynomial's value at 0).
Eigen::MatrixXd build_T2(const mesh::CollocationMesh& mesh, int d = 1);

/// T1 + T2 (I - U2)^{-1} U1 via a pivoted LU solve. Throws AssemblyError when
/// the reciprocal condition of I - U2 falls below 1e-12.
EvolutionMatrix assemble_T(const Kernel& kernel, double s, const mesh::CollocationMesh& mesh, int Q);

/// Assembles windows of one kernel repeatedly; the quadrature nodes and the
/// interpolation-basis tables do not depend on the window, so they are built
/// once. assemble() is const over immutable tables and an immutable kernel,
/// so distinct windows may be assembled concurrently.
class WindowAssembler {
 public:
  WindowAssembler(Kernel kernel, mesh::CollocationMesh mesh, int Q);

  EvolutionMatrix assemble(double window_start) const;
  int order() const { return kernel_.d * (mesh_.M + 1); }
  const mesh::CollocationMesh& mesh() const { return mesh_; }

 private:
  struct RowQuad {
    std::vector<double> nodes;
    std::vector<double> weights;
    // row-major so interp_basis can fill one quadrature row in place
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> basis;
  };

  Kernel kernel_;
  mesh::CollocationMesh mesh_;
  int quad_order_;
  std::vector<RowQuad> state_rows_;  // U1 tables, one per step node (may be empty)
  std::vector<RowQuad> step_rows_;   // U2 tables
  Eigen::MatrixXd t2_;
};

}  // namespace relyap
