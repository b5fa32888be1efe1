#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "relyap/dqr.hpp"
#include "relyap/errors.hpp"
#include "relyap/spectral.hpp"
#include "test_util.hpp"

using namespace relyap;

namespace {

EvolutionMatrix wrap(const Eigen::MatrixXd& A, double h = 3.0) {
  EvolutionMatrix T;
  T.entries = A;
  T.window_length = h;
  T.d = 1;
  return T;
}

}  // namespace

TEST_CASE("random unitary starting matrix") {
  const Eigen::MatrixXd q1 = random_unitary(1, 7);
  CHECK(std::abs(std::abs(q1(0, 0)) - 1.0) < 1e-15);

  const Eigen::MatrixXd a = random_unitary(12, 42);
  const Eigen::MatrixXd b = random_unitary(12, 42);
  CHECK(a == b);  // same seed, same matrix
  CHECK(random_unitary(12, 43) != a);
  const Eigen::MatrixXd gram = a.transpose() * a - Eigen::MatrixXd::Identity(12, 12);
  CHECK(gram.cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(random_unitary(0, 1), std::invalid_argument);
}

TEST_CASE("sign-normalized QR factorization") {
  const auto fi = qr_pos(Eigen::MatrixXd::Identity(3, 3));
  CHECK((fi.Q - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((fi.R - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::MatrixXd d(2, 2);
  d << -2.0, 0.0, 0.0, 3.0;
  const auto fd = qr_pos(d);
  CHECK(fd.R(0, 0) == doctest::Approx(2.0));
  CHECK(fd.R(1, 1) == doctest::Approx(3.0));
  CHECK(fd.Q(0, 0) == doctest::Approx(-1.0));
  CHECK(fd.Q(1, 1) == doctest::Approx(1.0));

  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXd A(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) A(i, j) = u(gen);
    const auto f = qr_pos(A);
    CHECK((f.Q * f.R - A).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(f.R.diagonal().minCoeff() >= 0.0);
    CHECK((f.Q.transpose() * f.Q - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() <=
          1e-12);
    for (int i = 1; i < 20; ++i)
      for (int j = 0; j < i; ++j) CHECK(f.R(i, j) == 0.0);
  }
}

TEST_CASE("scalar iterations telescope") {
  Eigen::MatrixXd a(1, 1);
  a << 2.0;
  const auto est = dqr_run([&](int) { return wrap(a); }, 1, 3.0, 30.0, 5);
  CHECK(est.steps == 10);
  CHECK(est.exponents[0] == doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-15));

  Eigen::MatrixXd up(1, 1), down(1, 1);
  up << 2.0;
  down << 0.5;
  const auto alt = dqr_run([&](int n) { return wrap(n % 2 ? down : up, 1.0); }, 1, 1.0, 10.0, 5);
  CHECK(std::abs(alt.exponents[0]) <= 1e-14);  // even number of steps cancels exactly
  // the running history oscillates and is exposed per step
  CHECK(alt.history.rows() == 10);
  CHECK(alt.history(0, 0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("estimates are deterministic given the seed") {
  const auto m = mesh::make_mesh(6, 6, 3.0);
  const WindowAssembler asmb(testutil::const_kernel(0.25), m, 20);
  const auto source = [&](int) { return asmb.assemble(0.0); };
  const auto a = dqr_run(source, 7, 3.0, 30.0, 123);
  const auto b = dqr_run(source, 7, 3.0, 30.0, 123);
  CHECK(a.exponents == b.exponents);
  CHECK(a.history == b.history);
}

TEST_CASE("autonomous agreement with the operator spectrum") {
  const auto m = mesh::make_mesh(16, 16, 3.0);
  const auto T = assemble_T(testutil::const_kernel(0.25), 0.0, m, 40);
  const double from_eigs = le_from_eigs(operator_eigs(T), 3.0)[0];

  const auto source = [&](int) { return T; };
  const auto est = dqr_run(source, 17, 3.0, 1000.0, 0);
  const double err1000 = std::abs(est.sorted()[0] - from_eigs);
  CHECK(err1000 <= 5e-3);

  const auto est100 = dqr_run(source, 17, 3.0, 100.0, 0);
  CHECK(err1000 <= std::abs(est100.sorted()[0] - from_eigs));
}

TEST_CASE("orthonormality is maintained across many steps") {
  const auto m = mesh::make_mesh(10, 10, 3.0);
  const auto T = assemble_T(testutil::const_kernel(0.25), 0.0, m, 28);
  const auto est = dqr_run([&](int) { return T; }, 11, 3.0, 600.0, 3);
  CHECK(est.steps == 200);
  for (double v : est.sorted()) CHECK((std::isfinite(v) || v < 0));
}

TEST_CASE("rank collapse yields -inf exponents, not an error") {
  const auto est =
      dqr_run([&](int) { return wrap(Eigen::MatrixXd::Zero(3, 3)); }, 3, 3.0, 9.0, 11);
  for (int i = 0; i < 3; ++i) {
    CHECK(est.exponents[i] == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("non-finite operators abort with the window index") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(
      dqr_run([&](int n) { return wrap(n == 2 ? bad : Eigen::MatrixXd::Identity(2, 2)); }, 2, 3.0,
              30.0, 0),
      doctest::Contains("window 2"), NumericError);
  CHECK_THROWS_AS(dqr_run([&](int) { return wrap(bad); }, 2, 3.0, 1.0, 0), std::invalid_argument);
}
