#pragma once

#include <Eigen/Core>

namespace relyap {

struct NonlinearRE;

/// Numerically integrated solution on a uniform grid of step delta = 1/r,
/// with constant history on [t_start - tau, t_start]. Exact at grid points,
/// piecewise linear in between. Immutable once built; safe to share.
struct Trajectory {
  int d = 1;
  double delta = 0;
  double t_start = 0;
  double tau = 0;
  Eigen::MatrixXd samples;  // column m holds x(t_begin() + m*delta)

  double t_begin() const { return t_start - tau; }
  double t_end() const { return t_begin() + delta * double(samples.cols() - 1); }

  Eigen::VectorXd eval(double t) const;  // CoverageError outside [t_begin, t_end]
};

/// Composite-trapezoid integration of the nonlinear RE from constant initial
/// data phi. The lag endpoints must be multiples of 1/r. A lag window
/// reaching 0 makes the step implicit; that scalar equation is solved by
/// fixed-point iteration (tol 1e-12, at most 100 sweeps). The solution jumps
/// at t = 0, so quadrature panels meeting that grid point use the one-sided
/// value of their own side (phi(0) from the left, the equation's value from
/// the right); the stored sample at 0 is the history value.
Trajectory solve_re(const NonlinearRE& model, const Eigen::VectorXd& phi, double t_end, int r);

}  // namespace relyap
