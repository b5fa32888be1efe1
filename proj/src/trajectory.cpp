#include "relyap/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "relyap/errors.hpp"
#include "relyap/model.hpp"

namespace relyap {

namespace {

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol;
}

}  // namespace

Eigen::VectorXd Trajectory::eval(double t) const {
  const double u = (t - t_begin()) / delta;
  const double last = double(samples.cols() - 1);
  if (u < -1e-9 || u > last + 1e-9) {
    throw CoverageError("trajectory eval at t outside integrated range");
  }
  double fl = std::floor(u);
  if (fl < 0) fl = 0;
  if (fl > last - 1) fl = last - 1;
  const auto i = Eigen::Index(fl);
  const double frac = u - fl;
  if (frac <= 1e-9) return samples.col(i);
  if (frac >= 1.0 - 1e-9) return samples.col(i + 1);
  return samples.col(i) * (1.0 - frac) + samples.col(i + 1) * frac;
}

Trajectory solve_re(const NonlinearRE& model, const Eigen::VectorXd& phi, double t_end, int r) {
  if (r < 1) throw std::invalid_argument("solve_re: r must be >= 1");
  if (!(t_end > 0)) throw std::invalid_argument("solve_re: t_end must be positive");
  if (phi.size() != model.d) throw std::invalid_argument("solve_re: phi has wrong dimension");
  if (!(model.lag_lo < model.lag_hi) || model.lag_lo < -model.tau || model.lag_hi > 0.0) {
    throw std::invalid_argument("solve_re: lag window must be a proper interval in [-tau, 0]");
  }
  if (!near_integer(model.lag_lo * r) || !near_integer(model.lag_hi * r) ||
      !near_integer(model.tau * r)) {
    throw std::invalid_argument("solve_re: lag endpoints and tau must be multiples of 1/r");
  }

  const double delta = 1.0 / double(r);
  const int n_hist = int(std::round(model.tau * r));
  const int i_lo = int(std::round(model.lag_lo * r));  // negative offsets
  const int i_hi = int(std::round(model.lag_hi * r));
  const int n_lag = i_hi - i_lo;
  const int K = int(std::ceil(t_end * r - 1e-9));
  const bool implicit = (i_hi == 0);

  Trajectory traj;
  traj.d = model.d;
  traj.delta = delta;
  traj.t_start = 0.0;
  traj.tau = model.tau;
  traj.samples.resize(model.d, n_hist + K + 1);
  for (int m = 0; m <= n_hist; ++m) traj.samples.col(m) = phi;

  const auto settle = [&](double tk, const Eigen::VectorXd& explicit_part,
                          const Eigen::VectorXd& guess) {
    Eigen::VectorXd x = guess;
    for (int it = 0; it < 100; ++it) {
      Eigen::VectorXd next = explicit_part + 0.5 * delta * model.integrand(tk, 0.0, x);
      const double change = (next - x).cwiseAbs().maxCoeff();
      x = next;
      if (change <= 1e-12) return x;
    }
    throw SolverFailure("solve_re: fixed-point iteration did not converge");
  };

  // The solution generically jumps at t = 0 (the history value and the
  // equation's own value differ), so the grid point 0 carries two values:
  // phi(0) for panels ending there, x(0+) for panels starting there.
  Eigen::VectorXd x0plus(model.d);
  {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(model.d);
    const int m_last = implicit ? n_lag - 1 : n_lag;
    for (int m = 0; m <= m_last; ++m) {
      const double w = (m == 0 || m == n_lag) ? 0.5 * delta : delta;
      acc.noalias() += w * model.integrand(0.0, model.lag_lo + m * delta, phi);
    }
    x0plus = implicit ? settle(0.0, acc, phi) : acc;
  }

  Eigen::VectorXd acc(model.d);
  for (int k = 1; k <= K; ++k) {
    const double tk = k * delta;
    const int base = n_hist + k + i_lo;
    acc.setZero();
    const int m_last = implicit ? n_lag - 1 : n_lag;
    for (int m = 0; m <= m_last; ++m) {
      const double theta = model.lag_lo + m * delta;
      const double w = (m == 0 || m == n_lag) ? 0.5 * delta : delta;
      if (base + m != n_hist) {
        acc.noalias() += w * model.integrand(tk, theta, traj.samples.col(base + m));
      } else if (m == 0) {
        acc.noalias() += w * model.integrand(tk, theta, x0plus);
      } else if (m == n_lag) {
        acc.noalias() += w * model.integrand(tk, theta, phi);
      } else {
        acc.noalias() += 0.5 * delta * (model.integrand(tk, theta, phi) +
                                        model.integrand(tk, theta, x0plus));
      }
    }
    traj.samples.col(n_hist + k) =
        implicit ? settle(tk, acc, traj.samples.col(n_hist + k - 1)) : acc;
  }
  return traj;
}

}  // namespace relyap
