#include "kinetic/weno.hpp"

#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

void WenoConfig::validate() const {
  if (k < 1 || k > 3) throw ConfigError("WENO order k must be 1, 2 or 3 (got " + std::to_string(k) + ")");
  if (!(delta >= 1e-7 && delta <= 1e-5))
    throw ConfigError("WENO delta must lie in [1e-7, 1e-5]");
}

std::vector<double> ideal_weights(int k) {
  if (k < 1 || k > 3) throw ConfigError("ideal_weights: k must be 1, 2 or 3");
  auto binom = [](int n, int r) {
    double out = 1.0;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
  };
  std::vector<double> d(k);
  for (int l = 0; l < k; ++l)
    d[l] = binom(k - 1, k - 1 - l) * binom(k, k - 1 - l) / binom(2 * k - 1, k);
  return d;
}

namespace {

int ghost_index(int p, int n, Boundary bc) {
  if (bc == Boundary::periodic) return ((p % n) + n) % n;
  return p < 0 ? 0 : (p >= n ? n - 1 : p);
}

// Accumulates -d/dx_axis (v_axis f) into out for every line of cells along `axis`.
void sweep_axis(const SpatialGrid& space, const VelocityGrid& velocity, const WenoConfig& cfg,
                int axis, const Eigen::MatrixXd& f, Eigen::MatrixXd& out) {
  const int k = cfg.k;
  const int n = space.count(axis);
  const int lines = space.size() / n;
  const int stride = axis == 0 ? 1 : space.count(0);
  const int J = velocity.size();
  const double inv_dx = 1.0 / space.spacing(axis);
  const Eigen::ArrayXd& v = velocity.component(axis);
  const Boundary bc = space.boundary(axis);

  std::vector<const double*> cols(n + 2 * k);
  std::vector<int> cell(n + 2 * k);
  Eigen::ArrayXd flux_prev(J), flux(J);
  double u[5];

  for (int line = 0; line < lines; ++line) {
    const int base = axis == 0 ? line * space.count(0) : line;
    for (int p = -k; p < n + k; ++p) {
      cell[p + k] = base + stride * ghost_index(p, n, bc);
      cols[p + k] = f.data() + static_cast<std::ptrdiff_t>(J) * cell[p + k];
    }
    // interface i + 1/2 sits between positions i and i + 1
    for (int i = -1; i < n; ++i) {
      for (int j = 0; j < J; ++j) {
        const double vj = v(j);
        if (vj > 0.0) {
          for (int m = 0; m < 2 * k - 1; ++m) u[m] = cols[i - k + 1 + m + k][j];
          flux(j) = vj * detail::reconstruct_left(k, u, cfg.delta);
        } else if (vj < 0.0) {
          for (int m = 0; m < 2 * k - 1; ++m) u[m] = cols[i + k - m + k][j];
          flux(j) = vj * detail::reconstruct_left(k, u, cfg.delta);
        } else {
          flux(j) = 0.0;
        }
      }
      if (i >= 0) out.col(cell[i + k]).array() -= (flux - flux_prev) * inv_dx;
      flux_prev.swap(flux);
    }
  }
}

}  // namespace

void transport_rhs(const SpatialGrid& space, const VelocityGrid& velocity, const WenoConfig& cfg,
                   const Eigen::MatrixXd& f, Eigen::MatrixXd& out) {
  cfg.validate();
  if (f.rows() != velocity.size() || f.cols() != space.size())
    throw ConfigError("transport_rhs: field shape does not match the grids");
  for (int d = 0; d < space.dims(); ++d) {
    if (space.count(d) < 2 * cfg.k - 1)
      throw ConfigError("transport_rhs: grid too small for the WENO stencil");
    if (d >= velocity.dims())
      throw ConfigError("transport_rhs: velocity space has fewer dimensions than physical space");
  }
  out.setZero(f.rows(), f.cols());
  for (int d = 0; d < space.dims(); ++d) sweep_axis(space, velocity, cfg, d, f, out);
}

Eigen::MatrixXd transport_rhs(const DistributionField& field, const WenoConfig& cfg) {
  Eigen::MatrixXd out;
  transport_rhs(field.space, field.velocity, cfg, field.values, out);
  return out;
}

}  // namespace kinetic
