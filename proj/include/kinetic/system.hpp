#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "kinetic/bgk.hpp"
#include "kinetic/boltzmann.hpp"
#include "kinetic/phase_space.hpp"
#include "kinetic/weno.hpp"

namespace kinetic {

/// Collisionless sentinel for epsilon.
inline constexpr double kCollisionless = std::numeric_limits<double>::infinity();

struct CollisionModel {
  enum class Kind { none, bgk_constant, bgk_density, boltzmann };
  Kind kind = Kind::bgk_constant;
  double nu0 = 1.0;
  int n_theta = 4;
  double b0 = kPseudoMaxwellB0;

  static CollisionModel none() { return {Kind::none}; }
  static CollisionModel bgk(double nu0) { return {Kind::bgk_constant, nu0}; }
  static CollisionModel bgk_density() { return {Kind::bgk_density}; }
  static CollisionModel boltzmann(int n_theta = 4, double b0 = kPseudoMaxwellB0) {
    return {Kind::boltzmann, 1.0, n_theta, b0};
  }
  /// "none", "bgk", "bgk_rho" or "boltzmann".
  static CollisionModel parse(const std::string& name, double nu0 = 1.0, int n_theta = 4);
  std::string name() const;
};

/// Semidiscrete right-hand side -v . grad_x f + Q(f) / epsilon on fixed grids. Owns the
/// spectral plan and a workspace, so one instance serves one trajectory at a time.
class KineticSystem {
 public:
  KineticSystem(SpatialGrid space, VelocityGrid velocity, WenoConfig weno, CollisionModel model,
                double epsilon, bool with_transport = true);

  const SpatialGrid& space() const { return space_; }
  const VelocityGrid& velocity() const { return velocity_; }
  const WenoConfig& weno() const { return weno_; }
  const CollisionModel& model() const { return model_; }
  double epsilon() const { return epsilon_; }

  void rhs(const Eigen::MatrixXd& f, Eigen::MatrixXd& out);
  void transport(const Eigen::MatrixXd& f, Eigen::MatrixXd& out) const;
  void collision(const Eigen::MatrixXd& f, Eigen::MatrixXd& out);

  /// Largest collision frequency over the field (nu0, max rho, or the Boltzmann loss rate
  /// 2 pi b0 max rho). Zero without collisions.
  double fastest_rate(const Eigen::MatrixXd& f) const;

 private:
  SpatialGrid space_;
  VelocityGrid velocity_;
  WenoConfig weno_;
  CollisionModel model_;
  double epsilon_;
  bool with_transport_;
  std::optional<SpectralPlan> plan_;
  std::unique_ptr<SpectralWorkspace> workspace_;
  Eigen::MatrixXd scratch_;
};

/// Convenience one-shot evaluation over a field (uses field.epsilon).
Eigen::MatrixXd rhs_total(const DistributionField& field, const WenoConfig& weno,
                          const CollisionModel& model);

}  // namespace kinetic
