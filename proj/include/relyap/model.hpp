#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>

#include "relyap/trajectory.hpp"

namespace relyap {

/// Linear(ized) integration kernel C(t, theta), d x d, supported on
/// [support_lo, support_hi] within [-tau, 0] and zero outside. Evaluation at
/// the support endpoints uses the in-support value (the jump is resolved
/// toward the support, deterministically).
struct Kernel {
  int d = 1;
  double tau = 0;
  double support_lo = 0;
  double support_hi = 0;
  std::function<void(double t, double theta, Eigen::Ref<Eigen::MatrixXd>)> eval_in_support;

  Eigen::MatrixXd eval(double t, double theta) const;
  void eval_into(double t, double theta, Eigen::Ref<Eigen::MatrixXd> out) const;
};

/// Right-hand side of a nonlinear RE: x(t) = integral over the lag window of
/// integrand(t, theta, x(t+theta)). Both maps vanish outside the lag window.
struct NonlinearRE {
  int d = 1;
  double tau = 0;
  double lag_lo = 0;
  double lag_hi = 0;
  std::function<Eigen::VectorXd(double t, double theta, const Eigen::VectorXd&)> integrand;
  std::function<Eigen::MatrixXd(double t, double theta, const Eigen::VectorXd&)> jacobian_integrand;
};

struct Equilibria {
  double trivial = 0;
  double nontrivial = 0;
};

/// x(t) = (gamma/2) * integral_{-3}^{-1} x(t+theta) (1 - x(t+theta)) dtheta
NonlinearRE quad_re(double gamma);

/// Constant solutions of the quadratic RE: 0 and 1 - 1/gamma.
Equilibria equilibria(double gamma);

/// Kernel of the formal linearization along a reference trajectory:
/// C(t, theta) = jacobian_integrand(t, theta, xbar(t+theta)) on the lag window.
Kernel linearize(const NonlinearRE& model, std::shared_ptr<const Trajectory> xbar);

/// Linearization at a constant state (autonomous kernel).
Kernel linearize(const NonlinearRE& model, const Eigen::VectorXd& xbar);

}  // namespace relyap
