#include "relyap/dqr.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "relyap/errors.hpp"

namespace relyap {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// uniform in (0, 1) straight from the engine words; std::normal_distribution
// streams differ between standard libraries
double next_uniform(std::mt19937_64& gen) {
  return (double(gen() >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

Eigen::MatrixXd random_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("random_unitary: m must be >= 1");
  std::mt19937_64 gen(seed);
  Eigen::MatrixXd A(m, m);
  double spare = 0.0;
  bool have_spare = false;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (have_spare) {
        A(i, j) = spare;
        have_spare = false;
      } else {
        const double u1 = next_uniform(gen);
        const double u2 = next_uniform(gen);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        A(i, j) = radius * std::cos(kTwoPi * u2);
        spare = radius * std::sin(kTwoPi * u2);
        have_spare = true;
      }
    }
  }
  return qr_pos(A).Q;
}

QrFactors qr_pos(const Eigen::MatrixXd& A) {
  const Eigen::Index m = A.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  QrFactors f;
  f.Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, A.cols());
  f.R = qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < f.R.rows(); ++i) {
    if (f.R(i, i) < 0.0) {
      f.R.row(i) = -f.R.row(i);
      f.Q.col(i) = -f.Q.col(i);
    }
  }
  return f;
}

std::vector<double> LyapunovEstimate::sorted() const {
  std::vector<double> out(exponents.data(), exponents.data() + exponents.size());
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

LyapunovEstimate dqr_run(const std::function<EvolutionMatrix(int)>& op_source, int m,
                         double tau, double t_f, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("dqr_run: m must be >= 1");
  if (!(tau > 0)) throw std::invalid_argument("dqr_run: tau must be positive");
  if (!(t_f >= tau)) throw std::invalid_argument("dqr_run: t_f must be >= tau");
  const int n_steps = int(std::floor(t_f / tau + 1e-12));

  DqrState st;
  st.seed = seed;
  st.Q = random_unitary(m, seed);
  st.log_sums = Eigen::VectorXd::Zero(m);

  LyapunovEstimate est;
  est.history.resize(n_steps, m);
  est.times.resize(n_steps);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m, m);

  for (int n = 0; n < n_steps; ++n) {
    const EvolutionMatrix T = op_source(n);
    if (T.entries.rows() != m || T.entries.cols() != m) {
      throw std::invalid_argument("dqr_run: operator order mismatch at window " + std::to_string(n));
    }
    if (!T.entries.allFinite()) {
      throw NumericError("dqr_run: non-finite evolution matrix at window " + std::to_string(n));
    }
    QrFactors f = qr_pos(T.entries * st.Q);
    st.Q = std::move(f.Q);
    st.log_sums += f.R.diagonal().array().log().matrix();
    const double orth_err = (st.Q.transpose() * st.Q - identity).cwiseAbs().maxCoeff();
    if (orth_err > 1e-10) {
      st.Q = qr_pos(st.Q).Q;
      ++st.reorthonormalizations;
    }
    st.steps = n + 1;
    st.elapsed = double(n + 1) * tau;
    est.history.row(n) = (st.log_sums / st.elapsed).transpose();
    est.times[n] = st.elapsed;
  }

  est.exponents = st.log_sums / st.elapsed;
  est.t_f = t_f;
  est.steps = st.steps;
  est.reorthonormalizations = st.reorthonormalizations;
  return est;
}

}  // namespace relyap
