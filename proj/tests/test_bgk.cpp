#include <doctest.h>

#include <cmath>

#include "kinetic/bgk.hpp"
#include "kinetic/errors.hpp"
#include "oracles.hpp"

using namespace kinetic;
using Eigen::Vector2d;

namespace {

DistributionField cell_field(const VelocityGrid& v, int cells, double eps) {
  return DistributionField(SpatialGrid::line(0, 1, std::max(cells, 5), Boundary::periodic), v, eps);
}

// Invariant moments of one slice: mass, momentum, energy.
Eigen::VectorXd invariants(const VelocityGrid& g, const Eigen::VectorXd& f) {
  Eigen::VectorXd m(2 + g.dims());
  m(0) = g.weight() * f.sum();
  for (int d = 0; d < g.dims(); ++d) m(1 + d) = g.weight() * (g.component(d) * f.array()).sum();
  m(1 + g.dims()) = g.weight() * (g.speed_squared() * f.array()).sum();
  return m;
}

}  // namespace

TEST_CASE("collision frequency") {
  BgkConfig c;
  CoreMoments m;
  m.rho = 0.3;
  CHECK(collision_frequency(c, m) == 1.0);
  c.mode = FrequencyMode::density;
  m.rho = 0.125;
  CHECK(collision_frequency(c, m) == 0.125);
  m.rho = 2.0;
  CHECK(collision_frequency(c, m) == 2.0);
  BgkConfig bad;
  bad.nu0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("bgk examples") {
  const VelocityGrid g = VelocityGrid::make(2, 8.0, 64);
  BgkConfig cfg;
  cfg.epsilon = 1e-3;
  DistributionField f = cell_field(g, 5, cfg.epsilon);
  for (int c = 0; c < 5; ++c) f.values.col(c) = maxwellian(g, 1.0, Vector2d::Zero(), 1.0);
  const double rate = cfg.nu0 / cfg.epsilon;
  CHECK(bgk_rhs(f, cfg).cwiseAbs().maxCoeff() <= 1e-6 * rate);

  f.values *= 2.0;
  CHECK(bgk_rhs(f, cfg).cwiseAbs().maxCoeff() <= 1e-6 * rate);

  f.values.setZero();
  std::vector<int> degenerate;
  Eigen::MatrixXd out;
  bgk_rhs(g, cfg, f.values, out, &degenerate);
  CHECK(out.isZero(0.0));
  CHECK(degenerate.size() == 5);
}

TEST_CASE("property: discrete collision invariants") {
  const VelocityGrid g = VelocityGrid::make(2, 8.0, 64);
  oracle::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    // two displaced Maxwellians
    Eigen::VectorXd f = maxwellian(g, rng.uniform(0.2, 1.5), Vector2d(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)),
                                   rng.uniform(0.3, 1.5)) +
                        maxwellian(g, rng.uniform(0.2, 1.5), Vector2d(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)),
                                   rng.uniform(0.3, 1.5));
    for (FrequencyMode mode : {FrequencyMode::constant, FrequencyMode::density}) {
      BgkConfig cfg;
      cfg.mode = mode;
      Eigen::MatrixXd out;
      bgk_rhs(g, cfg, f, out);
      const Eigen::VectorXd inv = invariants(g, out.col(0));
      // relative to the same moments of the two terms
      const Eigen::VectorXd ref = invariants(g, f.cwiseAbs()) * collision_frequency(cfg, moments(g, f));
      for (int i = 0; i < inv.size(); ++i) CHECK(std::abs(inv(i)) <= 1e-6 * std::max(ref(0), ref(i)));
    }
  }
}

TEST_CASE("property: sign structure and epsilon scaling") {
  const VelocityGrid g = VelocityGrid::make(1, 8.0, 64);
  oracle::Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::VectorXd f = maxwellian(g, 1.0, Vector2d(rng.uniform(-1, 1), 0), rng.uniform(0.5, 1.5));
    for (int j = 0; j < f.size(); ++j) f(j) *= 1.0 + 0.3 * std::sin(rng.uniform(0, 6.3) + 0.7 * j);
    BgkConfig cfg;
    cfg.epsilon = rng.uniform(1e-6, 1.0);
    Eigen::MatrixXd out;
    bgk_rhs(g, cfg, f, out);
    const CoreMoments c = moments(g, f);
    const Eigen::VectorXd M = maxwellian(g, c.rho, c.u, c.T);
    for (int j = 0; j < f.size(); ++j) {
      if (f(j) > M(j)) CHECK(out(j, 0) < 0.0);
      if (f(j) < M(j)) CHECK(out(j, 0) > 0.0);
    }
    BgkConfig tenth = cfg;
    tenth.epsilon = cfg.epsilon / 10.0;
    Eigen::MatrixXd out10;
    bgk_rhs(g, tenth, f, out10);
    CHECK(((out10 - 10.0 * out).cwiseAbs().maxCoeff()) <= 1e-14 * out10.cwiseAbs().maxCoeff());
  }
}
