#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kinetic/phase_space.hpp"

namespace kinetic {

/// Matrix-free linear map on flat vectors of length n.
struct LinearizedOperator {
  int n = 0;
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> action;
  std::string description;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// Collision invariant basis {1, v_d, (|v|^2 - D) / sqrt(2D)} sampled at the nodes
/// (columns), orthonormal for the standard Gaussian weight.
Eigen::MatrixXd invariant_basis(const VelocityGrid& grid);
/// Quadrature weights w (2 pi)^{-D/2} exp(-|v|^2 / 2) of that inner product.
Eigen::VectorXd gaussian_weights(const VelocityGrid& grid);
/// Discrete Gram matrix of invariant_basis.
Eigen::MatrixXd invariant_gram(const VelocityGrid& grid);

/// g -> -(nu / epsilon) (g - Pi g), Pi the projection onto the invariants in the Gaussian inner
/// product. Throws DomainError when the Gram matrix is more than 0.01 away from identity.
LinearizedOperator build_linearized_bgk(const VelocityGrid& grid, double nu, double epsilon);

using FieldRhs = std::function<void(const Eigen::MatrixXd&, Eigen::MatrixXd&)>;

/// Central-difference Jacobian of `rhs` at `state`; the increment is relative_eta times
/// ||state|| / ||u||.
LinearizedOperator jacobian_probe(FieldRhs rhs, const Eigen::MatrixXd& state,
                                  double relative_eta = 1e-7);

inline constexpr int kMaxDenseSize = 4096;

/// Dense matrix of an operator (n <= kMaxDenseSize).
Eigen::MatrixXd assemble(const LinearizedOperator& op);

struct SpectrumReport {
  /// Sorted by increasing modulus.
  std::vector<std::complex<double>> eigenvalues;
  /// True for members of the fast (large modulus) cluster.
  std::vector<bool> fast;
  /// min |fast| / max |slow|; 1 when there is a single cluster.
  double gap_ratio = 1.0;
  int slow_count() const;
};

/// Dense eigen-decomposition, then a two-cluster split at the largest gap between consecutive
/// moduli (measured relative to the spectral radius).
SpectrumReport spectrum(const LinearizedOperator& op);
SpectrumReport spectrum(const Eigen::MatrixXd& dense);

/// CSV with header `re,im,cluster`.
void write_eigenvalues_csv(const std::string& path, const SpectrumReport& report);

}  // namespace kinetic
