#pragma once

#include <vector>

#include <Eigen/Core>

#include "kinetic/phase_space.hpp"

namespace kinetic {

enum class FrequencyMode { constant, density };

/// Relaxation nu / epsilon (M_f - f). In density mode nu equals the local density.
struct BgkConfig {
  FrequencyMode mode = FrequencyMode::constant;
  double nu0 = 1.0;
  double epsilon = 1.0;
  double rho_floor = kDefaultDensityFloor;

  void validate() const;
};

double collision_frequency(const BgkConfig& cfg, const CoreMoments& core);

/// Writes the BGK term of every cell into `out` (resized to match f). Cells below the density
/// floor contribute zero; their indices are appended to `degenerate` when it is non-null.
void bgk_rhs(const VelocityGrid& velocity, const BgkConfig& cfg, const Eigen::MatrixXd& f,
             Eigen::MatrixXd& out, std::vector<int>* degenerate = nullptr);

Eigen::MatrixXd bgk_rhs(const DistributionField& field, const BgkConfig& cfg);

}  // namespace kinetic
