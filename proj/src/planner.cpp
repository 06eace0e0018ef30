#include "kinetic/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

void PlannerInput::validate() const {
  if (!(epsilon > 0.0) || !(fastest_rate > 0.0) || !(dx > 0.0) || !(cfl > 0.0))
    throw ConfigError("planner: epsilon, fastest rate, dx and cfl must be positive");
  if (K < 0) throw ConfigError("planner: K must be non-negative");
  if (mode == PlanMode::two_cluster && K < 2)
    throw ConfigError("planner: two-cluster plans need K >= 2");
}

IntegratorPlan plan_two_cluster(const PlannerInput& in, const RkTableau& tableau) {
  in.validate();
  if (in.mode != PlanMode::two_cluster) throw ConfigError("plan_two_cluster: wrong mode");
  const double dt = in.h0();
  const double Dt = in.outer_step();
  if (Dt <= (in.K + 1) * dt)
    throw InfeasiblePlan("planner: outer step " + std::to_string(Dt) +
                         " does not exceed the damping sweep; the problem is not stiff enough");
  return IntegratorPlan::from_steps({dt, Dt}, {in.K}, tableau);
}

int plan_levels(double h0, double hL, double factor) {
  if (!(h0 > 0.0) || !(hL > 0.0)) throw ConfigError("plan_levels: steps must be positive");
  if (!(factor > 1.0)) throw ConfigError("plan_levels: level factor must exceed 1");
  if (hL <= h0) return 0;
  const double x = std::log(hL / h0) / std::log(factor);
  // a tiny slack keeps exact ratios such as log(400)/log(20) = 2 from rounding down
  const int L = static_cast<int>(std::floor(x + 0.5 + 1e-12));
  return L < 1 ? 1 : L;
}

int plan_levels(const PlannerInput& in, double hL, double factor) {
  in.validate();
  return plan_levels(in.h0(), hL, factor);
}

std::vector<double> adapt_M(double h0, double hL, int K, int L, const std::vector<double>& preferred) {
  if (!(h0 > 0.0) || !(hL >= h0)) throw ConfigError("adapt_M: need 0 < h0 <= hL");
  if (L < 1 || K < 0) throw ConfigError("adapt_M: need L >= 1 and K >= 0");
  const double ratio = hL / h0;
  const double uniform = std::pow(ratio, 1.0 / L);
  if (uniform < (K + 1) * (1.0 - 1e-12))
    throw InfeasiblePlan("adapt_M: outer step too short for " + std::to_string(L) +
                         " levels of K + 1 = " + std::to_string(K + 1) + " inner steps");
  std::vector<double> M;
  if (preferred.empty()) {
    M.assign(L, std::max(0.0, uniform - (K + 1)));
  } else {
    if (static_cast<int>(preferred.size()) != L) throw ConfigError("adapt_M: need one preferred M per level");
    for (double m : preferred)
      if (!(m >= 0.0)) throw ConfigError("adapt_M: preferred M must be non-negative");
    M = preferred;
  }
  for (int l = L - 1; l >= 0; --l) {
    double others = 1.0;
    for (int i = 0; i < L; ++i)
      if (i != l) others *= M[i] + K + 1;
    const double m = ratio / others - (K + 1);
    if (m >= 0.0) {
      M[l] = m;
      return M;
    }
    M[l] = 0.0;
  }
  throw InfeasiblePlan("adapt_M: no non-negative factors reproduce the outer step");
}

IntegratorPlan plan_telescopic(double h0, double hL, int K, int L, const RkTableau& tableau,
                               const std::vector<double>& preferred) {
  if (L == 0) return IntegratorPlan::plain(h0, tableau);
  return IntegratorPlan::from_factors(h0, std::vector<int>(L, K), adapt_M(h0, hL, K, L, preferred),
                                      tableau);
}

}  // namespace kinetic
