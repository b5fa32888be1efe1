#include "relyap/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relyap/errors.hpp"

namespace relyap {

double CharacteristicProblem::value(double lambda) const {
  const double len = support_hi - support_lo;
  if (lambda == 0.0) return c * len;
  // c * (e^{lambda*hi} - e^{lambda*lo}) / lambda, written to stay accurate
  // through lambda -> 0
  return c * std::exp(lambda * support_lo) * std::expm1(lambda * len) / lambda;
}

std::optional<double> dominant_real_root(const CharacteristicProblem& problem,
                                         double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("dominant_real_root: bracket must satisfy lo < hi");
  if (!(tol > 0)) throw std::invalid_argument("dominant_real_root: tol must be positive");
  double glo = problem.value(lo) - 1.0;
  double ghi = problem.value(hi) - 1.0;
  if (glo * ghi > 0.0) return std::nullopt;
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = problem.value(mid) - 1.0;
    if (gm == 0.0) return mid;
    if (glo * gm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXcd matrix_eigs(const Eigen::MatrixXd& A) {
  if (!A.allFinite()) throw NumericError("matrix_eigs: non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericError("matrix_eigs: eigensolver failed");
  return solver.eigenvalues();
}

Eigen::VectorXcd operator_eigs(const EvolutionMatrix& T) { return matrix_eigs(T.entries); }

std::vector<double> le_from_eigs(const Eigen::VectorXcd& eigs, double h) {
  if (!(h > 0)) throw std::invalid_argument("le_from_eigs: h must be positive");
  std::vector<double> out;
  out.reserve(size_t(eigs.size()));
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double mod = std::abs(eigs[i]);
    out.push_back(mod == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(mod) / h);
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace relyap
