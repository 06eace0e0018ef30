#include <doctest.h>

#include <cmath>

#include "kinetic/errors.hpp"
#include "kinetic/integrators.hpp"
#include "oracles.hpp"

using namespace kinetic;
using Eigen::VectorXd;

namespace {

auto linear(double lambda) {
  return [lambda](const VectorXd& y, VectorXd& out) { out = lambda * y; };
}

auto zero_rhs() {
  return [](const VectorXd& y, VectorXd& out) { out.setZero(y.size()); };
}

VectorXd scalar(double v) { return VectorXd::Constant(1, v); }

double pfe_amplification(double z, int K, double M) {
  return std::pow(1.0 + z, K) * (1.0 + z + M * z);
}

}  // namespace

TEST_CASE("tableau validation") {
  CHECK(RkTableau::rk4().stages() == 4);
  CHECK(RkTableau::forward_euler().stages() == 1);
  CHECK(RkTableau::by_name("rk2").stages() == 2);
  CHECK_THROWS_AS(RkTableau::by_name("rk5"), ConfigError);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 0) = 0.5;
  CHECK_THROWS_AS(RkTableau("bad", a, Eigen::Vector2d(0.5, 0.6), Eigen::Vector2d(0, 0.5)), ConfigError);
  CHECK_THROWS_AS(RkTableau("bad", a, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0, 0.4)), ConfigError);
  a(1, 0) = 0.0;
  CHECK_THROWS_AS(RkTableau("bad", a, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0, 0)), ConfigError);
  Eigen::MatrixXd up = Eigen::MatrixXd::Zero(2, 2);
  up(0, 1) = 0.5;
  CHECK_THROWS_AS(RkTableau("bad", up, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.5, 0)), ConfigError);
}

TEST_CASE("forward euler examples") {
  CHECK(forward_euler_step(linear(-1.0), scalar(1.0), 0.1)(0) == doctest::Approx(0.9).epsilon(1e-15));
  const VectorXd y = VectorXd::LinSpaced(5, -1, 1);
  CHECK(forward_euler_step(zero_rhs(), y, 0.3) == y);
  CHECK(forward_euler_step(linear(-1.0 / 0.25), scalar(1.0), 0.25)(0) == 0.0);
  CHECK_THROWS_AS(forward_euler_step(linear(1.0), scalar(1.0), 0.0), ConfigError);
}

TEST_CASE("step rejection carries the offending index") {
  auto bad = [](const VectorXd& y, VectorXd& out) {
    out = y;
    out(3) = std::nan("");
  };
  try {
    forward_euler_step(bad, VectorXd(VectorXd::Ones(6)), 0.1);
    FAIL("expected rejection");
  } catch (const StepRejected& e) {
    CHECK(e.index() == 3);
  }
  CHECK_THROWS_AS(rk4_step(bad, VectorXd(VectorXd::Ones(6)), 0.1), StepRejected);
  CHECK_THROWS_AS(projective_step(bad, VectorXd(VectorXd::Ones(6)), 0.1, 2, 1.0, RkTableau::rk4()), StepRejected);
}

TEST_CASE("rk4 examples") {
  CHECK(rk4_step(linear(-1.0), scalar(1.0), 0.1)(0) ==
        doctest::Approx(1 - 0.1 + 0.005 - 0.1 * 0.1 * 0.1 / 6 + 0.0001 / 24).epsilon(1e-15));
  const VectorXd y = VectorXd::LinSpaced(4, 0, 1);
  CHECK(rk4_step(zero_rhs(), y, 0.5) == y);

  oracle::Rng rng(53);
  Eigen::MatrixXd A(8, 8);
  for (int i = 0; i < 64; ++i) A.data()[i] = rng.uniform(-1, 1);
  VectorXd u(8);
  for (int i = 0; i < 8; ++i) u(i) = rng.uniform(-1, 1);
  const double h = 0.2;
  const Eigen::MatrixXd hA = h * A;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(8, 8);
  const VectorXd expect = (I + hA + hA * hA / 2 + hA * hA * hA / 6 + hA * hA * hA * hA / 24) * u;
  auto rhs = [&A](const VectorXd& y, VectorXd& out) { out = A * y; };
  CHECK((rk4_step(rhs, u, h) - expect).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("projective step examples") {
  const VectorXd y = VectorXd::LinSpaced(3, 1, 2);
  CHECK(projective_step(zero_rhs(), y, 0.01, 2, 0.5, RkTableau::rk4()) == y);
  CHECK(projective_step(zero_rhs(), y, 0.01, 2, 0.5, RkTableau::forward_euler()) == y);
  // lambda dt = -1 annihilates after the first inner step
  CHECK(projective_step(linear(-100.0), scalar(1.0), 0.01, 3, 0.5, RkTableau::forward_euler())(0) == 0.0);
  CHECK_THROWS_AS(projective_step(linear(-1.0), scalar(1.0), 0.1, 2, 0.25, RkTableau::rk4()), InfeasiblePlan);
}

TEST_CASE("property: PFE amplification identity") {
  oracle::Rng rng(59);
  for (int t = 0; t < 1000; ++t) {
    const double dt = rng.uniform(1e-4, 1e-1);
    const double lambda = -rng.uniform(0.0, 2.0) / dt;
    const int K = rng.integer(0, 8);
    const double M = rng.uniform(0.0, 50.0);
    const double Dt = (M + K + 1) * dt;
    const double got = projective_step(linear(lambda), scalar(1.0), dt, K, Dt, RkTableau::forward_euler())(0);
    // M recomputed exactly as the step sees it
    const double Meff = (Dt - (K + 1) * dt) / dt;
    const double expect = pfe_amplification(lambda * dt, K, Meff);
    CHECK(std::abs(got - expect) <= 1e-14 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("PRK4 temporal order on a smooth non-stiff problem") {
  // y' = -y^2, y(0) = 1. The projective error carries an O(dt) damping term and a
  // chord-slope round-off term O(u / dt); dt = 1e-7 Dt keeps both below the Dt^4 term.
  auto rhs = [](const VectorXd& y, VectorXd& out) {
    out.resize(1);
    out(0) = -y(0) * y(0);
  };
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const double Dt = r == 0 ? 0.2 : 0.1;
    VectorXd y = VectorXd::Ones(1);
    const int n = static_cast<int>(std::lround(2.0 / Dt));
    for (int i = 0; i < n; ++i) y = projective_step(rhs, y, 1e-7 * Dt, 2, Dt, RkTableau::rk4());
    err[r] = std::abs(y(0) - 1.0 / 3.0);
  }
  CHECK(std::log2(err[0] / err[1]) >= 3.8);
}

TEST_CASE("plan layout checks") {
  const IntegratorPlan p = IntegratorPlan::from_factors(1e-5, {6, 6}, {14.24, 11.83}, RkTableau::rk4());
  CHECK(p.outer_step() == doctest::Approx(21.24 * 18.83 * 1e-5).epsilon(1e-12));
  CHECK(std::abs(p.outer_step() - 0.4 * 0.01) <= 1e-3 * 0.4 * 0.01);
  CHECK_THROWS_AS(IntegratorPlan::from_steps({1e-3, 2e-3}, {2}, RkTableau::rk4()), InfeasiblePlan);
  CHECK_THROWS_AS(IntegratorPlan::from_steps({1e-3}, {2}, RkTableau::rk4()), ConfigError);
  CHECK_THROWS_AS(IntegratorPlan::from_factors(1e-3, {2}, {-0.5}, RkTableau::rk4()), InfeasiblePlan);
  CHECK(speedup(IntegratorPlan::plain(0.1, RkTableau::rk4())) == 1.0);
}

TEST_CASE("telescopic examples") {
  oracle::Rng rng(61);
  VectorXd y(5);
  for (int i = 0; i < 5; ++i) y(i) = rng.uniform(-1, 1);
  auto rhs = [](const VectorXd& x, VectorXd& out) { out = -50.0 * x + x.cwiseProduct(x).reverse(); };

  // L = 1 collapses to the projective step
  for (const char* tab : {"fe", "rk2", "rk4"}) {
    const IntegratorPlan p = IntegratorPlan::from_factors(0.01, {2}, {7.5}, RkTableau::by_name(tab));
    CHECK(telescopic_step(rhs, y, p) == projective_step(rhs, y, 0.01, 2, p.outer_step(), RkTableau::by_name(tab)));
  }
  // zero rhs is the identity through every level
  const IntegratorPlan p2 = IntegratorPlan::from_factors(1e-3, {3, 2, 4}, {2.5, 1.0, 3.25}, RkTableau::rk4());
  CHECK(telescopic_step(zero_rhs(), y, p2) == y);

  // K = M = 0 everywhere is plain forward Euler with h0
  const IntegratorPlan p0 = IntegratorPlan::from_factors(0.01, {0, 0}, {0.0, 0.0}, RkTableau::forward_euler());
  TelescopicIntegrator<VectorXd> integ(p0, rhs);
  VectorXd a = y, b = y;
  for (int i = 0; i < 5; ++i) {
    integ.step(a);
    VectorXd k;
    rhs(b, k);
    b += 0.01 * k;
  }
  CHECK(a == b);
}

TEST_CASE("property: one outermost step covers h_L") {
  oracle::Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    const int L = rng.integer(1, 3);
    std::vector<int> K(L);
    std::vector<double> M(L);
    for (int l = 0; l < L; ++l) {
      K[l] = rng.integer(0, 4);
      M[l] = rng.uniform(0.0, 10.0);
    }
    const IntegratorPlan p = IntegratorPlan::from_factors(rng.uniform(1e-6, 1e-3), K, M,
                                                          RkTableau::by_name(rng.integer(0, 1) ? "rk4" : "fe"));
    TelescopicIntegrator<VectorXd> integ(p, linear(-1.0));
    VectorXd y = scalar(1.0);
    const double covered = integ.step(y);
    CHECK(std::abs(covered - p.outer_step()) <= 1e-12 * p.outer_step());
    CHECK(integ.steps_per_level()[L] == 1);
  }
}

TEST_CASE("advance handles remainders at every level") {
  const IntegratorPlan p = IntegratorPlan::from_factors(1e-3, {2, 2}, {3.0, 4.0}, RkTableau::rk4());
  // h = 1e-3, 6e-3, 4.2e-2
  for (double duration : {0.1, 0.042, 0.02, 0.004, 0.0005, 0.0}) {
    TelescopicIntegrator<VectorXd> integ(p, linear(-1.0));
    VectorXd y = scalar(1.0);
    integ.advance(y, duration);
    CHECK(integ.time() == doctest::Approx(duration).epsilon(1e-12));
    if (duration > 0) CHECK(std::abs(y(0) - std::exp(-duration)) <= 5e-3 * duration + 1e-6);
  }
  const IntegratorPlan plain = IntegratorPlan::plain(0.03, RkTableau::rk4());
  TelescopicIntegrator<VectorXd> integ(plain, linear(-1.0));
  VectorXd y = scalar(1.0);
  integ.advance(y, 0.1);
  CHECK(integ.time() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(y(0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-8));
  CHECK(integ.steps_per_level()[0] == 4);
}

TEST_CASE("counters") {
  const IntegratorPlan p = IntegratorPlan::from_factors(1e-3, {2}, {5.0}, RkTableau::rk4());
  TelescopicIntegrator<VectorXd> integ(p, linear(-1.0));
  VectorXd y = scalar(1.0);
  integ.step(y);
  CHECK(integ.rhs_evaluations() == 4 * 3);
  CHECK(integ.steps_per_level()[0] == 12);
  CHECK(integ.steps_per_level()[1] == 1);
}
