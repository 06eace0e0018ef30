#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kinetic/phase_space.hpp"
#include "kinetic/system.hpp"

namespace kinetic {

struct MacroState {
  double rho = 1.0;
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  double T = 1.0;
};

enum class Preset { paper, desk };

/// A benchmark problem: grids, initial macroscopic data (the initial distribution is its local
/// Maxwellian), physics, and the default time-stepping parameters.
struct Scenario {
  std::string name;
  SpatialGrid space;
  VelocityGrid velocity;
  std::function<MacroState(double x, double y)> initial;
  CollisionModel model;
  double epsilon = 1e-5;
  double t_end = 0.0;
  int weno_k = 2;
  std::string integrator = "prk4";
  int K = 2;
  double cfl = 0.4;
  int levels = 0;
  /// Preferred extrapolation factors for telescopic runs (reconciled with the CFL target).
  std::vector<double> M;
  int snapshots = 5;
};

std::vector<Scenario> catalogue(Preset preset = Preset::paper);
/// Throws ConfigError for an unknown name.
Scenario find_scenario(const std::string& name, Preset preset = Preset::paper);
Preset parse_preset(const std::string& name);

DistributionField initial_field(const Scenario& s);

/// Position of the first downward crossing of `level` in rho, scanning the row of cells
/// nearest y = 0 from the left (linear interpolation between cell centres). NaN if none.
double density_front(const SpatialGrid& space, const Eigen::ArrayXd& rho, double level = 1.5);

}  // namespace kinetic
