#include "relyap/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace relyap::mesh {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("mesh: interval must satisfy a < b");
}

}  // namespace

std::vector<double> cheb_extrema(int M, double a, double b) {
  if (M < 1) throw std::invalid_argument("cheb_extrema: M must be >= 1");
  check_interval(a, b);
  std::vector<double> x(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double c = std::cos(double(j) * kPi / double(M));
    x[j] = (a * (1.0 - c) + b * (1.0 + c)) / 2.0;
  }
  x.front() = b;
  x.back() = a;
  return x;
}

std::vector<double> cheb_zeros(int N, double a, double b) {
  if (N < 1) throw std::invalid_argument("cheb_zeros: N must be >= 1");
  check_interval(a, b);
  std::vector<double> x(N);
  for (int i = 1; i <= N; ++i) {
    const double c = std::cos((2.0 * i - 1.0) * kPi / (2.0 * N));
    x[i - 1] = (a * (1.0 - c) + b * (1.0 + c)) / 2.0;
  }
  return x;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const int n = int(nodes.size());
  if (n == 0) throw std::invalid_argument("barycentric_weights: empty node set");
  double lo = nodes[0], hi = nodes[0];
  for (double x : nodes) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  // rescaling each difference by 4/(b-a) keeps the products near unit size
  const double scale = (hi > lo) ? 4.0 / (hi - lo) : 1.0;
  std::vector<double> w(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double diff = nodes[j] - nodes[k];
      if (diff == 0.0) throw std::invalid_argument("barycentric_weights: duplicate nodes");
      w[j] /= diff * scale;
    }
  }
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, std::abs(v));
  for (double& v : w) v /= wmax;
  return w;
}

double interp_eval(std::span<const double> nodes, std::span<const double> weights,
                   std::span<const double> values, double t) {
  const int n = int(nodes.size());
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double diff = t - nodes[j];
    if (diff == 0.0) return values[j];
    const double q = weights[j] / diff;
    num += q * values[j];
    den += q;
  }
  return num / den;
}

void interp_basis(std::span<const double> nodes, std::span<const double> weights,
                  double t, std::span<double> out) {
  const int n = int(nodes.size());
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double diff = t - nodes[j];
    if (diff == 0.0) {
      for (int k = 0; k < n; ++k) out[k] = 0.0;
      out[j] = 1.0;
      return;
    }
    out[j] = weights[j] / diff;
    den += out[j];
  }
  for (int j = 0; j < n; ++j) out[j] /= den;
}

QuadRule cc_rule(int Q, double a, double b) {
  if (Q < 2) throw std::invalid_argument("cc_rule: Q must be >= 2");
  check_interval(a, b);
  QuadRule rule;
  rule.nodes = cheb_extrema(Q, a, b);
  rule.weights.resize(Q + 1);
  const double half = (b - a) / 2.0;
  for (int j = 0; j <= Q; ++j) {
    double s = 1.0;
    for (int k = 1; k <= Q / 2; ++k) {
      const double bk = (2 * k == Q) ? 1.0 : 2.0;
      s -= bk / (4.0 * k * k - 1.0) * std::cos(2.0 * k * j * kPi / Q);
    }
    const double cj = (j == 0 || j == Q) ? 1.0 : 2.0;
    rule.weights[j] = cj / Q * s * half;
  }
  return rule;
}

double quad_cc(const std::function<double(double)>& f, double a, double b, int Q) {
  const QuadRule rule = cc_rule(Q, a, b);
  double acc = 0.0;
  for (int j = 0; j <= Q; ++j) acc += rule.weights[j] * f(rule.nodes[j]);
  return acc;
}

CollocationMesh make_mesh(int M, int N, double tau) {
  if (M < 1 || N < 1) throw std::invalid_argument("make_mesh: M and N must be >= 1");
  if (!(tau > 0)) throw std::invalid_argument("make_mesh: tau must be positive");
  CollocationMesh m;
  m.M = M;
  m.N = N;
  m.tau = tau;
  m.h = tau;
  m.state_nodes = cheb_extrema(M, -tau, 0.0);
  m.step_nodes = cheb_zeros(N, 0.0, m.h);
  m.state_bary_weights = barycentric_weights(m.state_nodes);
  m.step_bary_weights = barycentric_weights(m.step_nodes);
  return m;
}

}  // namespace relyap::mesh
