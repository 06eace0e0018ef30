#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "kinetic/phase_space.hpp"

namespace kinetic {

/// Angular factor tables and sizes for the fast spectral collision operator of 2D
/// pseudo-Maxwellian particles. Immutable once built; share it between workers and give each
/// worker its own SpectralWorkspace.
///
/// Velocities are mapped affinely from [-V, V]^2 to [-pi, pi]^2. Retained Fourier modes are
/// |k_d| < N/2 (the unpaired Nyquist mode is dropped so that the real-input symmetry of every
/// table is exact). Quadratic products are formed on a zero-padded grid of P = 3N/2 points per
/// axis, which removes aliasing from the retained modes.
struct SpectralPlan {
  int modes = 0;        // N, equal to the velocity node count per axis
  int padded = 0;       // P
  int n_theta = 0;
  double extent = 0.0;  // V
  double b0 = 0.0;
  double lambda = 0.0;
  double radius = 0.0;  // R = lambda * pi
  /// alpha_p(l) and alpha'_p(m) on the padded mode grid (row-major, x fastest), zero outside
  /// the retained modes.
  std::vector<Eigen::ArrayXd> alpha;
  std::vector<Eigen::ArrayXd> alpha_perp;
  /// B_F(m, m) on the padded mode grid.
  Eigen::ArrayXd diagonal;

  /// Constant in front of the Carleman integral (2 b0 in two dimensions).
  double kernel_constant() const { return 2.0 * b0; }
  /// (V / pi)^2, converts a rescaled-velocity result back to physical units.
  double jacobian() const;
  /// theta_p = pi p / N_theta, p = 1..N_theta.
  double angle(int p) const;
  /// 2R sinc(R s).
  double phi(double s) const;
};

inline constexpr double kPseudoMaxwellB0 = 0.15915494309189535;  // 1 / (2 pi)

SpectralPlan plan_spectral(int modes, double extent, int n_theta = 4, double b0 = kPseudoMaxwellB0);

/// Mode coefficients g_k = N^-2 sum_j f_j exp(-i k . xi_j), stored at (k mod N) with
/// k in [-N/2, N/2) per axis, x index fastest.
struct FourierSlice {
  int modes = 0;
  Eigen::VectorXcd coefficients;
};

/// Per-worker FFT buffers and plans. Not copyable; results are deterministic.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const SpectralPlan& plan);
  ~SpectralWorkspace();
  SpectralWorkspace(SpectralWorkspace&&) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) noexcept;
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

FourierSlice forward_transform(const SpectralPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& slice);
/// Full inverse over all stored modes; returns the complex node values.
Eigen::VectorXcd inverse_transform(const SpectralPlan& plan, const FourierSlice& modes);

/// Gain and loss parts of Q in physical units; Q = gain - loss.
struct CollisionParts {
  Eigen::VectorXd gain;
  Eigen::VectorXd loss;
  /// Largest imaginary residue of the final inverse transform relative to max |Q|.
  double imaginary_residue = 0.0;
};

void boltzmann_q(const SpectralPlan& plan, SpectralWorkspace& ws,
                 const Eigen::Ref<const Eigen::VectorXd>& slice, Eigen::Ref<Eigen::VectorXd> out);
Eigen::VectorXd boltzmann_q(const SpectralPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& slice);
CollisionParts boltzmann_parts(const SpectralPlan& plan, SpectralWorkspace& ws,
                               const Eigen::Ref<const Eigen::VectorXd>& slice);

/// (1/epsilon) Q for every cell. An infinite epsilon gives zero.
void boltzmann_rhs(const VelocityGrid& velocity, const SpectralPlan& plan, SpectralWorkspace& ws,
                   double epsilon, const Eigen::MatrixXd& f, Eigen::MatrixXd& out);
Eigen::MatrixXd boltzmann_rhs(const DistributionField& field, const SpectralPlan& plan);

/// Throws ConfigError unless the grid is the 2D N x N box the plan was built for.
void check_compatible(const SpectralPlan& plan, const VelocityGrid& velocity);

}  // namespace kinetic
