#include "kinetic/system.hpp"

#include <cmath>
#include <numbers>

#include "kinetic/errors.hpp"

namespace kinetic {

CollisionModel CollisionModel::parse(const std::string& name, double nu0, int n_theta) {
  if (name == "none") return none();
  if (name == "bgk") return bgk(nu0);
  if (name == "bgk_rho") return bgk_density();
  if (name == "boltzmann") return boltzmann(n_theta);
  throw ConfigError("unknown collision model '" + name + "' (none, bgk, bgk_rho, boltzmann)");
}

std::string CollisionModel::name() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::bgk_constant: return "bgk";
    case Kind::bgk_density: return "bgk_rho";
    case Kind::boltzmann: return "boltzmann";
  }
  return "?";
}

KineticSystem::KineticSystem(SpatialGrid space, VelocityGrid velocity, WenoConfig weno,
                             CollisionModel model, double epsilon, bool with_transport)
    : space_(std::move(space)), velocity_(std::move(velocity)), weno_(weno), model_(model),
      epsilon_(epsilon), with_transport_(with_transport) {
  weno_.validate();
  if (!(epsilon_ > 0.0)) throw ConfigError("epsilon must be positive");
  if (velocity_.dims() < space_.dims())
    throw ConfigError("velocity space has fewer dimensions than physical space");
  if (model_.kind == CollisionModel::Kind::bgk_constant && !(model_.nu0 > 0.0))
    throw ConfigError("BGK collision frequency must be positive");
  if (model_.kind == CollisionModel::Kind::boltzmann) {
    if (velocity_.dims() != 2 || velocity_.count(0) != velocity_.count(1))
      throw ConfigError("Boltzmann collisions need a square 2D velocity grid");
    plan_ = plan_spectral(velocity_.count(0), velocity_.extent(), model_.n_theta, model_.b0);
    workspace_ = std::make_unique<SpectralWorkspace>(*plan_);
  }
}

void KineticSystem::transport(const Eigen::MatrixXd& f, Eigen::MatrixXd& out) const {
  transport_rhs(space_, velocity_, weno_, f, out);
}

void KineticSystem::collision(const Eigen::MatrixXd& f, Eigen::MatrixXd& out) {
  switch (model_.kind) {
    case CollisionModel::Kind::none:
      out.setZero(f.rows(), f.cols());
      return;
    case CollisionModel::Kind::bgk_constant:
    case CollisionModel::Kind::bgk_density: {
      BgkConfig cfg;
      cfg.mode = model_.kind == CollisionModel::Kind::bgk_constant ? FrequencyMode::constant
                                                                   : FrequencyMode::density;
      cfg.nu0 = model_.nu0;
      cfg.epsilon = epsilon_;
      bgk_rhs(velocity_, cfg, f, out);
      return;
    }
    case CollisionModel::Kind::boltzmann:
      boltzmann_rhs(velocity_, *plan_, *workspace_, epsilon_, f, out);
      return;
  }
}

void KineticSystem::rhs(const Eigen::MatrixXd& f, Eigen::MatrixXd& out) {
  const bool collide = model_.kind != CollisionModel::Kind::none && !std::isinf(epsilon_);
  if (!with_transport_) {
    if (collide) collision(f, out);
    else out.setZero(f.rows(), f.cols());
    return;
  }
  transport(f, out);
  if (!collide) return;
  collision(f, scratch_);
  out += scratch_;
}

double KineticSystem::fastest_rate(const Eigen::MatrixXd& f) const {
  if (model_.kind == CollisionModel::Kind::none) return 0.0;
  if (model_.kind == CollisionModel::Kind::bgk_constant) return model_.nu0;
  const double rho_max = (velocity_.weight() * f.colwise().sum()).maxCoeff();
  if (model_.kind == CollisionModel::Kind::boltzmann) return 2.0 * std::numbers::pi * model_.b0 * rho_max;
  return rho_max;
}

Eigen::MatrixXd rhs_total(const DistributionField& field, const WenoConfig& weno,
                          const CollisionModel& model) {
  KineticSystem sys(field.space, field.velocity, weno, model, field.epsilon);
  Eigen::MatrixXd out;
  sys.rhs(field.values, out);
  return out;
}

}  // namespace kinetic
