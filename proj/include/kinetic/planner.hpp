#pragma once

#include <vector>

#include "kinetic/integrators.hpp"

namespace kinetic {

enum class PlanMode { two_cluster, zero_one_stable };

/// The innermost step is h0 = epsilon / fastest_rate; the outer step is cfl * dx.
struct PlannerInput {
  double epsilon = 1e-5;
  double fastest_rate = 1.0;
  double dx = 0.01;
  double cfl = 0.4;
  int K = 2;
  PlanMode mode = PlanMode::two_cluster;

  double h0() const { return epsilon / fastest_rate; }
  double outer_step() const { return cfl * dx; }
  void validate() const;
};

/// Single projective level: dt = h0, Dt = cfl dx, M = Dt / dt - (K + 1). Requires K >= 2.
IntegratorPlan plan_two_cluster(const PlannerInput& in, const RkTableau& tableau = RkTableau::rk4());

/// round-half-up(log(hL / h0) / log(factor)), at least 1; 0 when hL <= h0.
int plan_levels(double h0, double hL, double factor);
int plan_levels(const PlannerInput& in, double hL, double factor);

/// Extrapolation factors with prod_l (M_l + K + 1) h0 = hL. Starts from `preferred` when given
/// (one value per level), otherwise from the uniform geometric split, then re-solves the
/// coarsest level for the product identity, moving to the next finer level whenever a factor
/// would turn negative.
std::vector<double> adapt_M(double h0, double hL, int K, int L,
                            const std::vector<double>& preferred = {});

/// L-level plan from adapt_M with the same K on every level.
IntegratorPlan plan_telescopic(double h0, double hL, int K, int L, const RkTableau& tableau,
                               const std::vector<double>& preferred = {});

}  // namespace kinetic
