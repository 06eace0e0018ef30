#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace kinetic {

enum class Boundary { periodic, outflow };

/// Uniform cell-centered velocity grid on the box [-V, V]^dims (dims = 1 or 2).
///
/// Nodes are ordered with the first velocity axis fastest: j = jx + Jx * jy.
/// Every node carries the same midpoint quadrature weight prod_d (2V / J_d).
class VelocityGrid {
 public:
  VelocityGrid(int dims, double extent, std::array<int, 2> counts);

  /// Same node count along every axis.
  static VelocityGrid make(int dims, double extent, int count);

  int dims() const { return dims_; }
  double extent() const { return extent_; }
  int count(int axis) const { return counts_[axis]; }
  int size() const { return size_; }
  double spacing(int axis) const { return 2.0 * extent_ / counts_[axis]; }
  double weight() const { return weight_; }

  /// 1D node coordinates of one axis.
  const Eigen::ArrayXd& axis_nodes(int axis) const { return axis_nodes_[axis]; }
  /// Velocity component d at every node (length size()).
  const Eigen::ArrayXd& component(int d) const { return components_[d]; }
  /// |v_j|^2 at every node.
  const Eigen::ArrayXd& speed_squared() const { return speed_squared_; }

 private:
  int dims_;
  double extent_;
  std::array<int, 2> counts_;
  int size_;
  double weight_;
  std::array<Eigen::ArrayXd, 2> axis_nodes_;
  std::array<Eigen::ArrayXd, 2> components_;
  Eigen::ArrayXd speed_squared_;
};

/// Uniform cell-centered spatial grid. Cells are ordered x-fastest: c = ix + Ix * iy.
class SpatialGrid {
 public:
  SpatialGrid(int dims, std::array<double, 2> lower, std::array<double, 2> upper,
              std::array<int, 2> counts, std::array<Boundary, 2> boundary);

  static SpatialGrid line(double lower, double upper, int count, Boundary boundary);

  int dims() const { return dims_; }
  int count(int axis) const { return counts_[axis]; }
  int size() const { return counts_[0] * counts_[1]; }
  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  double spacing(int axis) const { return (upper_[axis] - lower_[axis]) / counts_[axis]; }
  double min_spacing() const;
  double cell_volume() const;
  Boundary boundary(int axis) const { return boundary_[axis]; }
  double center(int axis, int i) const { return lower_[axis] + (i + 0.5) * spacing(axis); }
  int index(int ix, int iy = 0) const { return ix + counts_[0] * iy; }

 private:
  int dims_;
  std::array<double, 2> lower_;
  std::array<double, 2> upper_;
  std::array<int, 2> counts_;
  std::array<Boundary, 2> boundary_;
};

/// Discrete f(x_i, v_j). Column i of `values` is the velocity slice of spatial cell i.
struct DistributionField {
  SpatialGrid space;
  VelocityGrid velocity;
  Eigen::MatrixXd values;
  double epsilon = 1.0;

  DistributionField(SpatialGrid s, VelocityGrid v, double eps)
      : space(std::move(s)), velocity(std::move(v)),
        values(Eigen::MatrixXd::Zero(velocity.size(), space.size())), epsilon(eps) {}

  auto slice(int cell) { return values.col(cell); }
  auto slice(int cell) const { return values.col(cell); }
};

inline constexpr double kDefaultDensityFloor = 1e-14;

/// Density, bulk velocity and temperature of one velocity slice.
struct CoreMoments {
  double rho = 0.0;
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  double T = 1.0;
  /// Set when rho <= floor (or the temperature came out non-positive); u and T then hold the
  /// fallback values u = 0, T = 1.
  bool degenerate = false;
};

struct DerivedMoments {
  double P = 0.0;
  double E = 0.0;
  double Ma = 0.0;
};

/// Per-cell observables of a whole field.
struct MomentField {
  Eigen::ArrayXd rho, T, P, E, Ma;
  Eigen::ArrayXXd u;  // dims x cells
  Eigen::ArrayXXd q;  // dims x cells
  std::vector<int> degenerate_cells;
};

/// rho / (2 pi T)^{D/2} exp(-|v - u|^2 / (2T)) at every node.
Eigen::VectorXd maxwellian(const VelocityGrid& grid, double rho, const Eigen::Vector2d& u,
                           double T);
void maxwellian_into(const VelocityGrid& grid, double rho, const Eigen::Vector2d& u, double T,
                     Eigen::Ref<Eigen::VectorXd> out);

CoreMoments moments(const VelocityGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& slice,
                    double rho_floor = kDefaultDensityFloor);

/// q^d = 1/2 sum_j w |v_j - u|^2 (v_j - u)^d f_j.
Eigen::Vector2d heat_flux(const VelocityGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& slice,
                          const CoreMoments& core);

/// P = rho T, E = rho |u|^2 / 2 + P, Ma = |u| / sqrt(T).
DerivedMoments derived(const CoreMoments& core);

MomentField field_moments(const DistributionField& field, double rho_floor = kDefaultDensityFloor);

}  // namespace kinetic
