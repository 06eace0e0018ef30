#include "kinetic/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

VelocityGrid::VelocityGrid(int dims, double extent, std::array<int, 2> counts)
    : dims_(dims), extent_(extent), counts_(counts) {
  if (dims != 1 && dims != 2) throw ConfigError("velocity grid: dims must be 1 or 2");
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw ConfigError("velocity grid: extent must be positive");
  if (dims == 1) counts_[1] = 1;
  for (int d = 0; d < dims; ++d)
    if (counts_[d] < 2) throw ConfigError("velocity grid: need at least 2 nodes per axis");

  size_ = counts_[0] * counts_[1];
  weight_ = 1.0;
  for (int d = 0; d < dims; ++d) {
    const double h = spacing(d);
    weight_ *= h;
    axis_nodes_[d] = Eigen::ArrayXd(counts_[d]);
    for (int j = 0; j < counts_[d]; ++j) axis_nodes_[d](j) = -extent + (j + 0.5) * h;
  }

  components_[0] = Eigen::ArrayXd(size_);
  components_[1] = Eigen::ArrayXd::Zero(size_);
  for (int jy = 0; jy < counts_[1]; ++jy) {
    for (int jx = 0; jx < counts_[0]; ++jx) {
      const int j = jx + counts_[0] * jy;
      components_[0](j) = axis_nodes_[0](jx);
      if (dims == 2) components_[1](j) = axis_nodes_[1](jy);
    }
  }
  speed_squared_ = components_[0].square() + components_[1].square();
}

VelocityGrid VelocityGrid::make(int dims, double extent, int count) {
  return VelocityGrid(dims, extent, {count, count});
}

SpatialGrid::SpatialGrid(int dims, std::array<double, 2> lower, std::array<double, 2> upper,
                         std::array<int, 2> counts, std::array<Boundary, 2> boundary)
    : dims_(dims), lower_(lower), upper_(upper), counts_(counts), boundary_(boundary) {
  if (dims != 1 && dims != 2) throw ConfigError("spatial grid: dims must be 1 or 2");
  if (dims == 1) {
    counts_[1] = 1;
    lower_[1] = 0.0;
    upper_[1] = 1.0;
  }
  for (int d = 0; d < dims; ++d) {
    if (counts_[d] < 5)
      throw ConfigError("spatial grid: axis " + std::to_string(d) + " needs at least 5 cells");
    if (!(upper_[d] > lower_[d])) throw ConfigError("spatial grid: empty axis");
  }
}

SpatialGrid SpatialGrid::line(double lower, double upper, int count, Boundary boundary) {
  return SpatialGrid(1, {lower, 0.0}, {upper, 1.0}, {count, 1}, {boundary, Boundary::periodic});
}

double SpatialGrid::min_spacing() const {
  return dims_ == 1 ? spacing(0) : std::min(spacing(0), spacing(1));
}

double SpatialGrid::cell_volume() const {
  return dims_ == 1 ? spacing(0) : spacing(0) * spacing(1);
}

namespace {

void check_maxwellian_args(double rho, const Eigen::Vector2d& u, double T) {
  if (std::isnan(rho) || !u.allFinite() || std::isnan(T))
    throw DomainError("maxwellian: non-finite input");
  if (rho < 0.0) throw DomainError("maxwellian: negative density");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("maxwellian: temperature must be > 0");
}

}  // namespace

void maxwellian_into(const VelocityGrid& grid, double rho, const Eigen::Vector2d& u, double T,
                     Eigen::Ref<Eigen::VectorXd> out) {
  check_maxwellian_args(rho, u, T);
  if (rho == 0.0) {
    out.setZero();
    return;
  }
  const double inv2T = 0.5 / T;
  // separable in 2D: J_x + J_y exponentials instead of J_x * J_y
  const Eigen::ArrayXd ex = (-(grid.axis_nodes(0) - u(0)).square() * inv2T).exp();
  if (grid.dims() == 1) {
    out = (rho / std::sqrt(2.0 * std::numbers::pi * T)) * ex.matrix();
    return;
  }
  const Eigen::ArrayXd ey = (-(grid.axis_nodes(1) - u(1)).square() * inv2T).exp();
  const double pref = rho / (2.0 * std::numbers::pi * T);
  Eigen::Map<Eigen::MatrixXd> tile(out.data(), grid.count(0), grid.count(1));
  tile.noalias() = pref * ex.matrix() * ey.matrix().transpose();
}

Eigen::VectorXd maxwellian(const VelocityGrid& grid, double rho, const Eigen::Vector2d& u,
                           double T) {
  Eigen::VectorXd out(grid.size());
  maxwellian_into(grid, rho, u, T, out);
  return out;
}

CoreMoments moments(const VelocityGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& slice,
                    double rho_floor) {
  const double w = grid.weight();
  const Eigen::ArrayXd f = slice.array();

  CoreMoments m;
  m.rho = w * f.sum();
  if (!(m.rho > rho_floor)) {
    m.degenerate = true;
    return m;
  }
  Eigen::ArrayXd c2 = Eigen::ArrayXd::Zero(f.size());
  for (int d = 0; d < grid.dims(); ++d) {
    m.u(d) = w * (grid.component(d) * f).sum() / m.rho;
    c2 += (grid.component(d) - m.u(d)).square();
  }
  m.T = w * (c2 * f).sum() / (grid.dims() * m.rho);
  if (!(m.T > 0.0) || !std::isfinite(m.T)) {
    // negative or non-finite slices have no equilibrium to relax to
    m.u.setZero();
    m.T = 1.0;
    m.degenerate = true;
  }
  return m;
}

Eigen::Vector2d heat_flux(const VelocityGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& slice,
                          const CoreMoments& core) {
  const Eigen::ArrayXd f = slice.array();
  Eigen::ArrayXd c2 = Eigen::ArrayXd::Zero(f.size());
  for (int d = 0; d < grid.dims(); ++d) c2 += (grid.component(d) - core.u(d)).square();
  Eigen::Vector2d q = Eigen::Vector2d::Zero();
  for (int d = 0; d < grid.dims(); ++d)
    q(d) = 0.5 * grid.weight() * (c2 * (grid.component(d) - core.u(d)) * f).sum();
  return q;
}

DerivedMoments derived(const CoreMoments& core) {
  if (!(core.T > 0.0)) throw DomainError("derived moments: temperature must be > 0");
  if (core.rho < 0.0) throw DomainError("derived moments: negative density");
  const double speed2 = core.u.squaredNorm();
  DerivedMoments out;
  out.P = core.rho * core.T;
  out.E = 0.5 * core.rho * speed2 + out.P;
  out.Ma = std::sqrt(speed2) / std::sqrt(core.T);
  return out;
}

MomentField field_moments(const DistributionField& field, double rho_floor) {
  const int n = field.space.size();
  const int dims = field.velocity.dims();
  MomentField out;
  out.rho.resize(n);
  out.T.resize(n);
  out.P.resize(n);
  out.E.resize(n);
  out.Ma.resize(n);
  out.u.resize(dims, n);
  out.q.resize(dims, n);
  for (int i = 0; i < n; ++i) {
    const CoreMoments core = moments(field.velocity, field.slice(i), rho_floor);
    if (core.degenerate) out.degenerate_cells.push_back(i);
    DerivedMoments dm;
    if (core.degenerate) {
      // fallback moments (u = 0, T = 1) keep vacuum and blown-up cells printable
      dm.P = core.rho * core.T;
      dm.E = dm.P;
    } else {
      dm = derived(core);
    }
    const Eigen::Vector2d q = heat_flux(field.velocity, field.slice(i), core);
    out.rho(i) = core.rho;
    out.T(i) = core.T;
    out.P(i) = dm.P;
    out.E(i) = dm.E;
    out.Ma(i) = dm.Ma;
    for (int d = 0; d < dims; ++d) {
      out.u(d, i) = core.u(d);
      out.q(d, i) = q(d);
    }
  }
  return out;
}

}  // namespace kinetic
