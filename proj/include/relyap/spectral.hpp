#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "relyap/evolution.hpp"

namespace relyap {

/// Real exponential ansatz for an autonomous kernel c on [support_lo,
/// support_hi]: exponents lambda solve value(lambda) = 1 with
/// value(lambda) = c * integral e^{lambda*theta} dtheta over the support.
/// value is continuous at 0 (limit c * support length) and strictly
/// decreasing for c > 0.
struct CharacteristicProblem {
  double c = 0;
  double support_lo = -3.0;
  double support_hi = -1.0;

  double value(double lambda) const;
};

/// Bisection on value(lambda) = 1 within [lo, hi] to tolerance tol; nullopt
/// when the bracket shows no sign change (e.g. c <= 0 admits no real root).
std::optional<double> dominant_real_root(const CharacteristicProblem& problem,
                                         double lo, double hi, double tol);

/// All eigenvalues of the dense real matrix, in conjugate pairs.
Eigen::VectorXcd operator_eigs(const EvolutionMatrix& T);
Eigen::VectorXcd matrix_eigs(const Eigen::MatrixXd& A);

/// log|mu| / h, sorted descending; zero modulus maps to -inf.
std::vector<double> le_from_eigs(const Eigen::VectorXcd& eigs, double h);

}  // namespace relyap
