#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "relyap/mesh.hpp"

using namespace relyap;

TEST_CASE("chebyshev extrema nodes") {
  const auto n2 = mesh::cheb_extrema(2, -1.0, 1.0);
  REQUIRE(n2.size() == 3);
  CHECK(n2[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(n2[1]) < 1e-15);
  CHECK(n2[2] == doctest::Approx(-1.0).epsilon(1e-15));

  const auto n1 = mesh::cheb_extrema(1, -3.0, 0.0);
  CHECK(n1[0] == 0.0);
  CHECK(n1[1] == -3.0);

  const auto n4 = mesh::cheb_extrema(4, -3.0, 0.0);
  CHECK(std::abs(n4[2] + 1.5) < 1e-14);
  for (size_t j = 0; j + 1 < n4.size(); ++j) {
    CHECK(std::abs((n4[j] + 1.5) + (n4[n4.size() - 1 - j] + 1.5)) < 1e-14);  // symmetry
  }

  CHECK_THROWS_AS(mesh::cheb_extrema(0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mesh::cheb_extrema(2, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(mesh::cheb_extrema(2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("chebyshev zeros nodes") {
  const auto z1 = mesh::cheb_zeros(1, 0.0, 3.0);
  REQUIRE(z1.size() == 1);
  CHECK(z1[0] == doctest::Approx(1.5).epsilon(1e-15));

  const auto z2 = mesh::cheb_zeros(2, 0.0, 2.0);
  CHECK(z2[0] == doctest::Approx(1.0 + std::sqrt(2.0) / 2.0));
  CHECK(z2[1] == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0));

  const auto z3 = mesh::cheb_zeros(3, -1.0, 1.0);
  CHECK(std::abs(z3[1]) < 1e-15);

  // strictly interior
  for (double z : mesh::cheb_zeros(9, 0.0, 3.0)) {
    CHECK(z > 0.0);
    CHECK(z < 3.0);
  }

  CHECK_THROWS_AS(mesh::cheb_zeros(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mesh::cheb_zeros(2, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("barycentric weights") {
  const std::vector<double> nodes{1.0, 0.0, -1.0};
  const auto w = mesh::barycentric_weights(nodes);
  CHECK(w[0] / w[1] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(w[2] / w[1] == doctest::Approx(-0.5).epsilon(1e-14));

  const std::vector<double> two{0.7, -2.3};
  const auto w2 = mesh::barycentric_weights(two);
  CHECK(w2[0] / w2[1] == doctest::Approx(-1.0).epsilon(1e-14));

  const std::vector<double> dup{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(mesh::barycentric_weights(dup), std::invalid_argument);

  // degree-M exactness for f(x) = x^8 on 9 extrema
  const auto x8 = mesh::cheb_extrema(8, -1.0, 1.0);
  const auto w8 = mesh::barycentric_weights(x8);
  std::vector<double> vals(9);
  for (int j = 0; j < 9; ++j) vals[j] = std::pow(x8[j], 8);
  for (double t : {-0.93, -0.41, 0.07, 0.55, 0.99}) {
    const double exact = std::pow(t, 8);
    const double got = mesh::interp_eval(x8, w8, vals, t);
    CHECK(std::abs(got - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("barycentric interpolation evaluation") {
  const auto nodes = mesh::cheb_extrema(6, -2.0, 1.0);
  const auto w = mesh::barycentric_weights(nodes);

  std::vector<double> constant(nodes.size(), 4.25);
  for (double t : {-1.9, -0.77, 0.0, 0.33}) {
    CHECK(mesh::interp_eval(nodes, w, constant, t) == doctest::Approx(4.25).epsilon(1e-14));
  }

  std::vector<double> identity(nodes.begin(), nodes.end());
  CHECK(mesh::interp_eval(nodes, w, identity, 0.5) == doctest::Approx(0.5).epsilon(1e-13));

  // node hit returns the stored value exactly
  CHECK(mesh::interp_eval(nodes, w, identity, nodes[3]) == identity[3]);

  // degree-8 interpolation of e^x carries an O(1e-8) error (e / (9! 2^8));
  // four more nodes push it below 1e-9
  const auto x9 = mesh::cheb_extrema(8, -1.0, 1.0);
  const auto w9 = mesh::barycentric_weights(x9);
  std::vector<double> expv(9);
  for (int j = 0; j < 9; ++j) expv[j] = std::exp(x9[j]);
  CHECK(std::abs(mesh::interp_eval(x9, w9, expv, 0.3) - std::exp(0.3)) < 5e-8);

  const auto x13 = mesh::cheb_extrema(12, -1.0, 1.0);
  const auto w13 = mesh::barycentric_weights(x13);
  std::vector<double> expv13(13);
  for (int j = 0; j < 13; ++j) expv13[j] = std::exp(x13[j]);
  CHECK(std::abs(mesh::interp_eval(x13, w13, expv13, 0.3) - std::exp(0.3)) < 1e-9);
}

TEST_CASE("interp_basis matches interp_eval") {
  const auto nodes = mesh::cheb_zeros(7, 0.0, 3.0);
  const auto w = mesh::barycentric_weights(nodes);
  std::vector<double> vals{0.3, -1.2, 0.9, 2.2, -0.4, 0.0, 1.7};
  std::vector<double> basis(7);
  for (double t : {0.11, 1.0, 2.9, nodes[4]}) {
    mesh::interp_basis(nodes, w, t, basis);
    double acc = 0.0, bsum = 0.0;
    for (int j = 0; j < 7; ++j) {
      acc += basis[j] * vals[j];
      bsum += basis[j];
    }
    CHECK(acc == doctest::Approx(mesh::interp_eval(nodes, w, vals, t)).epsilon(1e-13));
    CHECK(bsum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("clenshaw-curtis quadrature") {
  for (int Q : {2, 5, 8, 17}) {
    CHECK(mesh::quad_cc([](double) { return 1.0; }, 0.0, 1.0, Q) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(mesh::quad_cc([](double x) { return x * x; }, -1.0, 1.0, 4) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const double exact = std::exp(-1.0) - std::exp(-3.0);  // integral of e^t on [-3,-1]
  const double q32 = mesh::quad_cc([](double x) { return std::exp(x); }, -3.0, -1.0, 32);
  CHECK(std::abs(q32 - exact) < 1e-12);
  const double q8 = mesh::quad_cc([](double x) { return std::exp(x); }, -3.0, -1.0, 8);
  CHECK(std::abs(q32 - exact) <= std::abs(q8 - exact));

  // weights are positive and sum to the interval length
  const auto rule = mesh::cc_rule(9, -3.0, -1.0);
  double wsum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    wsum += w;
  }
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(mesh::quad_cc([](double) { return 0.0; }, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("polynomial reproduction up to mesh degree") {
  std::mt19937 gen(2024);
  const auto check_family = [&](const std::vector<double>& nodes, int degree, double a, double b) {
    const auto w = mesh::barycentric_weights(nodes);
    std::uniform_real_distribution<double> pick(a, b);
    for (int k = 0; k <= degree; ++k) {
      std::vector<double> vals(nodes.size());
      double scale = 1.0;
      for (size_t j = 0; j < nodes.size(); ++j) {
        vals[j] = std::pow(nodes[j], k);
        scale = std::max(scale, std::abs(vals[j]));
      }
      for (int p = 0; p < 100; ++p) {
        const double t = pick(gen);
        const double err = std::abs(mesh::interp_eval(nodes, w, vals, t) - std::pow(t, k));
        CHECK(err <= 1e-10 * scale);
      }
    }
  };
  check_family(mesh::cheb_extrema(16, -3.0, 0.0), 16, -3.0, 0.0);
  check_family(mesh::cheb_zeros(16, 0.0, 3.0), 15, 0.0, 3.0);
}

TEST_CASE("collocation mesh layout") {
  const auto m = mesh::make_mesh(16, 12, 3.0);
  CHECK(m.h == m.tau);
  REQUIRE(m.state_nodes.size() == 17);
  REQUIRE(m.step_nodes.size() == 12);
  CHECK(m.state_nodes.front() == 0.0);
  CHECK(m.state_nodes.back() == -3.0);
  for (size_t j = 0; j + 1 < m.state_nodes.size(); ++j) CHECK(m.state_nodes[j] > m.state_nodes[j + 1]);
  for (size_t i = 0; i + 1 < m.step_nodes.size(); ++i) CHECK(m.step_nodes[i] > m.step_nodes[i + 1]);
  for (double t : m.step_nodes) {
    CHECK(t > 0.0);
    CHECK(t < 3.0);
  }
  for (double v : m.state_bary_weights) CHECK(v != 0.0);
  for (double v : m.step_bary_weights) CHECK(v != 0.0);
  CHECK_THROWS_AS(mesh::make_mesh(0, 4, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(mesh::make_mesh(4, 4, -1.0), std::invalid_argument);
}
