#include "kinetic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "kinetic/errors.hpp"

namespace kinetic {

Eigen::VectorXd LinearizedOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n) throw ConfigError("linearized operator: vector length mismatch");
  Eigen::VectorXd y(n);
  action(x, y);
  return y;
}

Eigen::MatrixXd invariant_basis(const VelocityGrid& grid) {
  const int D = grid.dims();
  Eigen::MatrixXd psi(grid.size(), D + 2);
  psi.col(0).setOnes();
  for (int d = 0; d < D; ++d) psi.col(1 + d) = grid.component(d).matrix();
  psi.col(D + 1) = ((grid.speed_squared() - D) / std::sqrt(2.0 * D)).matrix();
  return psi;
}

Eigen::VectorXd gaussian_weights(const VelocityGrid& grid) {
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dims());
  return (grid.weight() * norm * (-0.5 * grid.speed_squared()).exp()).matrix();
}

Eigen::MatrixXd invariant_gram(const VelocityGrid& grid) {
  const Eigen::MatrixXd psi = invariant_basis(grid);
  return psi.transpose() * gaussian_weights(grid).asDiagonal() * psi;
}

LinearizedOperator build_linearized_bgk(const VelocityGrid& grid, double nu, double epsilon) {
  if (grid.size() > kMaxDenseSize) throw ConfigError("linearized BGK: grid too large for the probe");
  if (!(nu > 0.0) || !(epsilon > 0.0)) throw ConfigError("linearized BGK: nu and epsilon must be positive");
  const double deviation =
      (invariant_gram(grid) - Eigen::MatrixXd::Identity(grid.dims() + 2, grid.dims() + 2)).cwiseAbs().maxCoeff();
  if (deviation > 0.01)
    throw DomainError("linearized BGK: velocity grid too coarse, Gram matrix deviates by " +
                      std::to_string(deviation));
  const Eigen::MatrixXd psi = invariant_basis(grid);
  const Eigen::MatrixXd weighted = gaussian_weights(grid).asDiagonal() * psi;
  const double rate = nu / epsilon;
  LinearizedOperator op;
  op.n = grid.size();
  op.description = "linearized BGK, nu/epsilon = " + std::to_string(rate);
  op.action = [psi, weighted, rate](const Eigen::VectorXd& g, Eigen::VectorXd& out) {
    out = -rate * (g - psi * (weighted.transpose() * g));
  };
  return op;
}

LinearizedOperator jacobian_probe(FieldRhs rhs, const Eigen::MatrixXd& state, double relative_eta) {
  if (!state.allFinite()) throw DomainError("jacobian probe: state is not finite");
  if (!(relative_eta > 0.0)) throw ConfigError("jacobian probe: increment must be positive");
  const Eigen::Index rows = state.rows(), cols = state.cols();
  LinearizedOperator op;
  op.n = static_cast<int>(state.size());
  op.description = "finite-difference Jacobian";
  const double scale = relative_eta * std::max(state.norm(), 1.0e-300);
  op.action = [rhs, state, scale, rows, cols](const Eigen::VectorXd& u, Eigen::VectorXd& out) {
    const double un = u.norm();
    out.setZero(u.size());
    if (un == 0.0) return;
    const double eta = scale / un;
    const Eigen::Map<const Eigen::MatrixXd> du(u.data(), rows, cols);
    Eigen::MatrixXd plus, minus;
    rhs(state + eta * du, plus);
    rhs(state - eta * du, minus);
    if (!plus.allFinite() || !minus.allFinite()) throw DomainError("jacobian probe: non-finite evaluation");
    out = Eigen::Map<const Eigen::VectorXd>(plus.data(), plus.size()) -
          Eigen::Map<const Eigen::VectorXd>(minus.data(), minus.size());
    out /= 2.0 * eta;
  };
  return op;
}

Eigen::MatrixXd assemble(const LinearizedOperator& op) {
  if (op.n > kMaxDenseSize)
    throw ConfigError("assemble: operator of size " + std::to_string(op.n) + " exceeds the dense limit");
  Eigen::MatrixXd A(op.n, op.n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(op.n), col(op.n);
  for (int i = 0; i < op.n; ++i) {
    e(i) = 1.0;
    op.action(e, col);
    A.col(i) = col;
    e(i) = 0.0;
  }
  return A;
}

int SpectrumReport::slow_count() const {
  return static_cast<int>(std::count(fast.begin(), fast.end(), false));
}

SpectrumReport spectrum(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols()) throw ConfigError("spectrum: matrix must be square");
  if (dense.rows() > kMaxDenseSize) throw ConfigError("spectrum: matrix exceeds the dense limit");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, false);
  if (solver.info() != Eigen::Success) throw DomainError("spectrum: eigenvalue iteration did not converge");
  SpectrumReport rep;
  const Eigen::VectorXcd ev = solver.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::stable_sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                   [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  const std::size_t n = rep.eigenvalues.size();
  rep.fast.assign(n, false);
  if (n < 2) return rep;
  const double radius = std::abs(rep.eigenvalues.back());
  if (radius == 0.0) return rep;
  std::size_t split = 0;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = (std::abs(rep.eigenvalues[i + 1]) - std::abs(rep.eigenvalues[i])) / radius;
    if (gap > best) {
      best = gap;
      split = i + 1;
    }
  }
  // equal moduli throughout: one cluster
  if (best <= 1e-12) return rep;
  for (std::size_t i = split; i < n; ++i) rep.fast[i] = true;
  const double slow_max = std::abs(rep.eigenvalues[split - 1]);
  const double fast_min = std::abs(rep.eigenvalues[split]);
  rep.gap_ratio = slow_max > 0.0 ? fast_min / slow_max : std::numeric_limits<double>::infinity();
  return rep;
}

SpectrumReport spectrum(const LinearizedOperator& op) { return spectrum(assemble(op)); }

void write_eigenvalues_csv(const std::string& path, const SpectrumReport& report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "re,im,cluster\n";
  char line[96];
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%s\n", report.eigenvalues[i].real(),
                  report.eigenvalues[i].imag(), report.fast[i] ? "fast" : "slow");
    os << line;
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace kinetic
