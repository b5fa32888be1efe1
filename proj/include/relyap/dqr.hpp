#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "relyap/evolution.hpp"

namespace relyap {

/// Orthonormal factor from the QR factorization of an m x m matrix of
/// standard normal draws (Box-Muller over a seeded mt19937_64, so the same
/// seed gives the same matrix on every platform).
Eigen::MatrixXd random_unitary(int m, std::uint64_t seed);

struct QrFactors {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;  // upper triangular, diagonal >= 0
};

/// QR factorization with the non-negative-diagonal normalization (columns of
/// Q and rows of R sign-flipped after a Householder QR).
QrFactors qr_pos(const Eigen::MatrixXd& A);

struct DqrState {
  Eigen::MatrixXd Q;
  Eigen::VectorXd log_sums;  // entries may be -inf (log 0)
  double elapsed = 0;
  int steps = 0;
  std::uint64_t seed = 0;
  int reorthonormalizations = 0;
};

struct LyapunovEstimate {
  Eigen::VectorXd exponents;      // QR-frame order, log_sums / elapsed
  Eigen::MatrixXd history;        // steps x m running estimates
  std::vector<double> times;      // elapsed time per step
  double t_f = 0;
  int steps = 0;
  int reorthonormalizations = 0;

  std::vector<double> sorted() const;  // descending view for display
};

/// Discrete QR iteration: Q_{n+1} R_n = T_n Q_n over the windows
/// [s + n*tau, s + (n+1)*tau] supplied by op_source, n = 0..floor(t_f/tau)-1,
/// starting from random_unitary(m, seed). Reported exponents are the
/// accumulated log-diagonals divided by the elapsed time. Orthonormality of Q
/// is checked each step at 1e-10 and restored by re-factorization if lost.
/// Non-finite operator entries abort with the window index; a zero diagonal
/// entry propagates as a -inf exponent, not an error.
LyapunovEstimate dqr_run(const std::function<EvolutionMatrix(int)>& op_source, int m,
                         double tau, double t_f, std::uint64_t seed);

}  // namespace relyap
