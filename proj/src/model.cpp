#include "relyap/model.hpp"

#include <stdexcept>

namespace relyap {

Eigen::MatrixXd Kernel::eval(double t, double theta) const {
  Eigen::MatrixXd out(d, d);
  eval_into(t, theta, out);
  return out;
}

void Kernel::eval_into(double t, double theta, Eigen::Ref<Eigen::MatrixXd> out) const {
  if (theta < support_lo || theta > support_hi) {
    out.setZero();
    return;
  }
  eval_in_support(t, theta, out);
}

NonlinearRE quad_re(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("quad_re: gamma must be positive");
  NonlinearRE model;
  model.d = 1;
  model.tau = 3.0;
  model.lag_lo = -3.0;
  model.lag_hi = -1.0;
  const double half_gamma = gamma / 2.0;
  model.integrand = [half_gamma](double, double theta, const Eigen::VectorXd& x) {
    Eigen::VectorXd out(1);
    out[0] = (theta < -3.0 || theta > -1.0) ? 0.0 : half_gamma * x[0] * (1.0 - x[0]);
    return out;
  };
  model.jacobian_integrand = [half_gamma](double, double theta, const Eigen::VectorXd& x) {
    Eigen::MatrixXd out(1, 1);
    out(0, 0) = (theta < -3.0 || theta > -1.0) ? 0.0 : half_gamma * (1.0 - 2.0 * x[0]);
    return out;
  };
  return model;
}

Equilibria equilibria(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("equilibria: gamma must be positive");
  return Equilibria{0.0, 1.0 - 1.0 / gamma};
}

Kernel linearize(const NonlinearRE& model, std::shared_ptr<const Trajectory> xbar) {
  Kernel k;
  k.d = model.d;
  k.tau = model.tau;
  k.support_lo = model.lag_lo;
  k.support_hi = model.lag_hi;
  k.eval_in_support = [jac = model.jacobian_integrand, traj = std::move(xbar)](
                          double t, double theta, Eigen::Ref<Eigen::MatrixXd> out) {
    out = jac(t, theta, traj->eval(t + theta));
  };
  return k;
}

Kernel linearize(const NonlinearRE& model, const Eigen::VectorXd& xbar) {
  Kernel k;
  k.d = model.d;
  k.tau = model.tau;
  k.support_lo = model.lag_lo;
  k.support_hi = model.lag_hi;
  k.eval_in_support = [jac = model.jacobian_integrand, xbar](double t, double theta,
                                                             Eigen::Ref<Eigen::MatrixXd> out) {
    out = jac(t, theta, xbar);
  };
  return k;
}

}  // namespace relyap
