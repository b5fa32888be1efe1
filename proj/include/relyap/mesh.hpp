#pragma once

#include <functional>
#include <span>
#include <vector>

namespace relyap::mesh {

/// Chebyshev extrema cos(j*pi/M), j = 0..M, mapped affinely to [a, b].
/// Endpoints included; returned in decreasing order (b first).
std::vector<double> cheb_extrema(int M, double a, double b);

/// Chebyshev zeros cos((2i-1)*pi/(2N)), i = 1..N, mapped affinely to [a, b].
/// Strictly interior; returned in decreasing order.
std::vector<double> cheb_zeros(int N, double a, double b);

/// Barycentric weights w_j = 1/prod_{k!=j}(x_j - x_k), rescaled by a common
/// factor so the largest magnitude is 1.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Second-form barycentric interpolation of (nodes, values) at t.
/// An exact node hit returns the stored value.
double interp_eval(std::span<const double> nodes, std::span<const double> weights,
                   std::span<const double> values, double t);

/// All Lagrange basis values at t; out must have nodes.size() entries.
void interp_basis(std::span<const double> nodes, std::span<const double> weights,
                  double t, std::span<double> out);

struct QuadRule {
  std::vector<double> nodes;    // Q+1 points, decreasing
  std::vector<double> weights;  // positive, summing to b-a
};

/// Clenshaw-Curtis rule with Q+1 nodes on [a, b]; exact for degree <= Q.
QuadRule cc_rule(int Q, double a, double b);

double quad_cc(const std::function<double(double)>& f, double a, double b, int Q);

/// Node sets and barycentric weights shared by every window of one
/// discretization: state nodes (extrema on [-tau, 0], endpoints included)
/// and step nodes (zeros on (0, h), interior), with h = tau.
struct CollocationMesh {
  int M = 0;
  int N = 0;
  double tau = 0;
  double h = 0;
  std::vector<double> state_nodes;
  std::vector<double> step_nodes;
  std::vector<double> state_bary_weights;
  std::vector<double> step_bary_weights;
};

CollocationMesh make_mesh(int M, int N, double tau);

}  // namespace relyap::mesh
