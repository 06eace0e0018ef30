#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "kinetic/errors.hpp"
#include "kinetic/phase_space.hpp"

namespace kinetic {

/// Order parameter k (stencil width; formal smooth order 2k - 1) and the regularization
/// added to the smoothness indicators.
struct WenoConfig {
  int k = 2;
  double delta = 1e-6;

  void validate() const;
};

/// Which interface value of the centre cell to reconstruct.
///  - left:  u^-_{i+1/2}, the value just left of the right interface (upwind for v > 0);
///  - right: u^+_{i-1/2}, the value just right of the left interface (upwind for v < 0).
enum class Side { left, right };

/// Convex ideal weights d_l, l = 0..k-1, for k in {1, 2, 3}.
std::vector<double> ideal_weights(int k);

namespace detail {

template <typename Scalar>
constexpr Scalar sq(Scalar x) {
  return x * x;
}

// Window u[0..2k-2] = U_{i-k+1} .. U_{i+k-1}; index l of the outputs is the left shift of the
// sub-stencil, as in the cell-average reconstruction literature.
template <typename Scalar>
std::array<Scalar, 3> indicators(int k, const Scalar* u) {
  if (k == 1) return {Scalar(0), Scalar(0), Scalar(0)};
  if (k == 2) return {sq(u[1] - u[2]), sq(u[0] - u[1]), Scalar(0)};
  const Scalar c4 = Scalar(1) / Scalar(4), c13 = Scalar(13) / Scalar(12);
  return {c4 * sq(3 * u[2] - 4 * u[3] + u[4]) + c13 * sq(u[2] - 2 * u[3] + u[4]),
          c4 * sq(u[1] - u[3]) + c13 * sq(u[1] - 2 * u[2] + u[3]),
          c4 * sq(u[0] - 4 * u[1] + 3 * u[2]) + c13 * sq(u[0] - 2 * u[1] + u[2])};
}

// Candidate values u^l_{i+1/2} of each sub-stencil.
template <typename Scalar>
std::array<Scalar, 3> candidates(int k, const Scalar* u) {
  if (k == 1) return {u[0], Scalar(0), Scalar(0)};
  if (k == 2) return {(u[1] + u[2]) / 2, (3 * u[1] - u[0]) / 2, Scalar(0)};
  return {(2 * u[2] + 5 * u[3] - u[4]) / 6, (-u[1] + 5 * u[2] + 2 * u[3]) / 6,
          (2 * u[0] - 7 * u[1] + 11 * u[2]) / 6};
}

template <typename Scalar>
std::array<Scalar, 3> weights(int k, const Scalar* u, double delta) {
  static constexpr double d2[2] = {2.0 / 3.0, 1.0 / 3.0};
  static constexpr double d3[3] = {3.0 / 10.0, 6.0 / 10.0, 1.0 / 10.0};
  if (k == 1) return {Scalar(1), Scalar(0), Scalar(0)};
  const std::array<Scalar, 3> beta = indicators(k, u);
  const double* d = k == 2 ? d2 : d3;
  std::array<Scalar, 3> alpha{};
  Scalar total(0);
  for (int l = 0; l < k; ++l) {
    alpha[l] = d[l] / sq(delta + beta[l]);
    total += alpha[l];
  }
  for (int l = 0; l < k; ++l) alpha[l] /= total;
  return alpha;
}

// u^-_{i+1/2} from the window centred at i.
template <typename Scalar>
Scalar reconstruct_left(int k, const Scalar* u, double delta) {
  const std::array<Scalar, 3> omega = weights(k, u, delta);
  const std::array<Scalar, 3> p = candidates(k, u);
  Scalar out(0);
  for (int l = 0; l < k; ++l) out += omega[l] * p[l];
  return out;
}

}  // namespace detail

/// Smoothness indicators beta_l (l = 0..k-1) of a window of 2k-1 values centred at cell i.
template <typename Scalar>
std::vector<Scalar> smoothness_indicators(int k, std::span<const Scalar> window) {
  WenoConfig{k, 1e-6}.validate();
  if (static_cast<int>(window.size()) != 2 * k - 1)
    throw ConfigError("smoothness_indicators: window must hold 2k-1 values");
  const std::array<Scalar, 3> beta = detail::indicators(k, window.data());
  return {beta.begin(), beta.begin() + k};
}

/// Nonlinear weights omega_l for the left-side (u^-_{i+1/2}) reconstruction.
template <typename Scalar>
std::vector<Scalar> nonlinear_weights(const WenoConfig& cfg, std::span<const Scalar> window) {
  cfg.validate();
  if (static_cast<int>(window.size()) != 2 * cfg.k - 1)
    throw ConfigError("nonlinear_weights: window must hold 2k-1 values");
  const std::array<Scalar, 3> w = detail::weights(cfg.k, window.data(), cfg.delta);
  return {w.begin(), w.begin() + cfg.k};
}

/// WENO interface value of the centre cell of a 2k-1 window. The right side is the mirror
/// image of the left side.
template <typename Scalar>
Scalar weno_reconstruct(const WenoConfig& cfg, std::span<const Scalar> window, Side side) {
  cfg.validate();
  if (static_cast<int>(window.size()) != 2 * cfg.k - 1)
    throw ConfigError("weno_reconstruct: window must hold 2k-1 values");
  if (side == Side::left) return detail::reconstruct_left(cfg.k, window.data(), cfg.delta);
  std::array<Scalar, 5> mirrored{};
  std::copy(window.rbegin(), window.rend(), mirrored.begin());
  return detail::reconstruct_left(cfg.k, mirrored.data(), cfg.delta);
}

/// -v . grad_x f for every (cell, velocity node), upwind finite-difference WENO per node.
/// Periodic axes wrap, outflow axes copy the boundary cell into the ghost layer.
void transport_rhs(const SpatialGrid& space, const VelocityGrid& velocity, const WenoConfig& cfg,
                   const Eigen::MatrixXd& f, Eigen::MatrixXd& out);

Eigen::MatrixXd transport_rhs(const DistributionField& field, const WenoConfig& cfg);

}  // namespace kinetic
