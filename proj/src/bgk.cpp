#include "kinetic/bgk.hpp"

#include <cmath>

#include "kinetic/errors.hpp"

namespace kinetic {

void BgkConfig::validate() const {
  if (mode == FrequencyMode::constant && !(nu0 > 0.0 && std::isfinite(nu0)))
    throw ConfigError("BGK: constant collision frequency must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("BGK: epsilon must be positive");
}

double collision_frequency(const BgkConfig& cfg, const CoreMoments& core) {
  return cfg.mode == FrequencyMode::constant ? cfg.nu0 : core.rho;
}

void bgk_rhs(const VelocityGrid& velocity, const BgkConfig& cfg, const Eigen::MatrixXd& f,
             Eigen::MatrixXd& out, std::vector<int>* degenerate) {
  cfg.validate();
  if (f.rows() != velocity.size()) throw ConfigError("bgk_rhs: slice length does not match grid");
  out.resize(f.rows(), f.cols());
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const CoreMoments core = moments(velocity, f.col(c), cfg.rho_floor);
    if (core.degenerate) {
      out.col(c).setZero();
      if (degenerate) degenerate->push_back(static_cast<int>(c));
      continue;
    }
    // infinite epsilon means no collisions at all
    const double rate = std::isinf(cfg.epsilon) ? 0.0 : collision_frequency(cfg, core) / cfg.epsilon;
    maxwellian_into(velocity, core.rho, core.u, core.T, out.col(c));
    out.col(c) = rate * (out.col(c) - f.col(c));
  }
}

Eigen::MatrixXd bgk_rhs(const DistributionField& field, const BgkConfig& cfg) {
  Eigen::MatrixXd out;
  bgk_rhs(field.velocity, cfg, field.values, out);
  return out;
}

}  // namespace kinetic
