#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kinetic/errors.hpp"

namespace kinetic {

/// Explicit Runge-Kutta tableau. Construction checks sum(b) = 1, row sums of a equal c,
/// b and c inside [0, 1], strictly lower-triangular a, and c_s > 0 for every stage after the
/// first (projective stage seeding divides by c_s).
class RkTableau {
 public:
  RkTableau(std::string name, Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c);

  static RkTableau forward_euler();
  static RkTableau rk2();
  static RkTableau rk4();
  /// "fe", "rk2" or "rk4".
  static RkTableau by_name(const std::string& name);

  const std::string& name() const { return name_; }
  int stages() const { return static_cast<int>(b_.size()); }
  double a(int s, int i) const { return a_(s, i); }
  double b(int s) const { return b_(s); }
  double c(int s) const { return c_(s); }
  /// Smallest non-zero node.
  double min_positive_node() const;

 private:
  std::string name_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_, c_;
};

/// Level hierarchy h_0 < ... < h_L with h_{l+1} = (M_l + K_l + 1) h_l. L = 0 is plain
/// stepping with h_0 and the tableau.
class IntegratorPlan {
 public:
  /// Step sizes given, M derived.
  static IntegratorPlan from_steps(std::vector<double> h, std::vector<int> K, RkTableau tableau);
  /// Innermost step and extrapolation factors given, outer steps derived.
  static IntegratorPlan from_factors(double h0, std::vector<int> K, std::vector<double> M,
                                     RkTableau tableau);
  static IntegratorPlan plain(double h0, RkTableau tableau);

  int levels() const { return static_cast<int>(K_.size()); }
  double h(int level) const { return h_[level]; }
  int K(int level) const { return K_[level]; }
  double M(int level) const { return M_[level]; }
  double outer_step() const { return h_.back(); }
  const RkTableau& tableau() const { return tableau_; }
  const std::vector<double>& steps() const { return h_; }
  const std::vector<int>& inner_counts() const { return K_; }
  const std::vector<double>& factors() const { return M_; }

  /// Re-checks every invariant; throws ConfigError / InfeasiblePlan.
  void validate() const;

 private:
  IntegratorPlan(std::vector<double> h, std::vector<int> K, std::vector<double> M, RkTableau t);

  std::vector<double> h_;
  std::vector<int> K_;
  std::vector<double> M_;
  RkTableau tableau_;
};

/// prod_l (M_l + K_l + 1) / (K_l + 1); 1 for L = 0.
double speedup(const IntegratorPlan& plan);

namespace detail {

template <typename State>
void check_finite(const State& s, const char* where) {
  const auto* p = s.data();
  const Eigen::Index n = s.size();
  for (Eigen::Index i = 0; i < n; ++i)
    if (!std::isfinite(p[i])) throw StepRejected(std::string(where) + ": non-finite right-hand side", i);
}

template <typename State, typename Rhs>
void eval(Rhs& rhs, const State& y, State& out) {
  rhs(y, out);
  check_finite(out, "rhs");
}

// out = base + coef * sum_i w_i k_i, in the fixed summation order shared by every
// projective variant so that equivalent schedules agree bit-for-bit.
template <typename State>
void combine(const State& base, double coef, const std::vector<State>& k, const std::vector<double>& w,
             int count, State& out) {
  out = base;
  for (int i = 0; i < count; ++i)
    if (w[i] != 0.0) out += (coef * w[i]) * k[i];
}

// Buffers for one projective level.
template <typename State>
struct ProjectiveBuffers {
  State base, prev;
  std::vector<State> k;
  std::vector<double> weights;
};

// One projective step of outer length H on top of an inner integrator `inner(y)` that advances
// y by one step of length h and returns the simulated time it covered.
template <typename State, typename Inner>
double projective_outer(Inner&& inner, State& y, int K, double h, double H, const RkTableau& tab,
                        ProjectiveBuffers<State>& buf) {
  const int S = tab.stages();
  buf.k.resize(S);
  buf.weights.resize(S);
  auto sweep = [&](State& z, State& chord) {
    double t = 0.0;
    for (int i = 0; i <= K; ++i) {
      if (i == K) buf.prev = z;
      t += inner(z);
    }
    chord = (z - buf.prev) / h;
    return t;
  };
  const double damped = (K + 1) * h;
  const double elapsed = sweep(y, buf.k[0]);
  buf.base = y;
  for (int s = 1; s < S; ++s) {
    for (int i = 0; i < s; ++i) buf.weights[i] = tab.a(s, i) / tab.c(s);
    combine(buf.base, tab.c(s) * H - damped, buf.k, buf.weights, s, y);
    sweep(y, buf.k[s]);
  }
  for (int s = 0; s < S; ++s) buf.weights[s] = tab.b(s);
  const double extrapolation = H - damped;
  combine(buf.base, extrapolation, buf.k, buf.weights, S, y);
  return elapsed + extrapolation;
}

}  // namespace detail

template <typename State>
using RhsFunction = std::function<void(const State&, State&)>;

/// y + h rhs(y).
template <typename State, typename Rhs>
State forward_euler_step(Rhs&& rhs, const State& y, double h) {
  if (!(h > 0.0)) throw ConfigError("forward Euler: step must be positive");
  State k;
  detail::eval(rhs, y, k);
  return y + h * k;
}

/// One explicit Runge-Kutta step with the given tableau.
template <typename State, typename Rhs>
State explicit_rk_step(Rhs&& rhs, const State& y, double h, const RkTableau& tab) {
  if (!(h > 0.0)) throw ConfigError("Runge-Kutta: step must be positive");
  const int S = tab.stages();
  std::vector<State> k(S);
  State stage;
  for (int s = 0; s < S; ++s) {
    stage = y;
    for (int i = 0; i < s; ++i)
      if (tab.a(s, i) != 0.0) stage += (h * tab.a(s, i)) * k[i];
    detail::eval(rhs, stage, k[s]);
  }
  State out = y;
  for (int s = 0; s < S; ++s)
    if (tab.b(s) != 0.0) out += (h * tab.b(s)) * k[s];
  return out;
}

template <typename State, typename Rhs>
State rk4_step(Rhs&& rhs, const State& y, double h) {
  static const RkTableau tab = RkTableau::rk4();
  return explicit_rk_step(rhs, y, h, tab);
}

/// Projective Runge-Kutta step: per stage K + 1 forward Euler steps of size dt, chord slope of
/// the last two iterates, then extrapolation to the outer step Dt. The forward Euler tableau
/// gives projective forward Euler with M = Dt / dt - (K + 1).
template <typename State, typename Rhs>
State projective_step(Rhs&& rhs, const State& y, double dt, int K, double Dt, const RkTableau& tab) {
  if (!(dt > 0.0) || K < 0) throw ConfigError("projective step: need dt > 0 and K >= 0");
  if (Dt < (K + 1) * dt)
    throw InfeasiblePlan("projective step: outer step shorter than the K + 1 inner steps");
  State out = y;
  State k;
  detail::ProjectiveBuffers<State> buf;
  auto inner = [&](State& z) {
    detail::eval(rhs, z, k);
    z += dt * k;
    return dt;
  };
  detail::projective_outer(inner, out, K, dt, Dt, tab, buf);
  return out;
}

/// Telescopic projective integrator: level 0 is forward Euler with h_0, each level l >= 1
/// runs K_{l-1} + 1 level l-1 steps and extrapolates along the last chord, and the outermost
/// level uses the plan's tableau. Buffers are allocated once per integrator.
template <typename State>
class TelescopicIntegrator {
 public:
  TelescopicIntegrator(IntegratorPlan plan, RhsFunction<State> rhs)
      : plan_(std::move(plan)), rhs_(std::move(rhs)) {
    plan_.validate();
    buffers_.resize(plan_.levels() + 1);
    steps_.assign(plan_.levels() + 1, 0);
  }

  const IntegratorPlan& plan() const { return plan_; }
  double time() const { return time_; }
  /// Completed steps at each level, level 0 first.
  const std::vector<std::int64_t>& steps_per_level() const { return steps_; }
  std::int64_t rhs_evaluations() const { return rhs_calls_; }

  /// One outermost step; returns the simulated time covered (h_L).
  double step(State& y) {
    const double dt = plan_.levels() == 0 ? rk_step(y, plan_.h(0)) : level_step(plan_.levels(), y);
    time_ += dt;
    return dt;
  }

  /// Advances by `duration` using whole outermost steps plus one shortened step schedule for
  /// the remainder (see partial()).
  void advance(State& y, double duration) {
    if (duration < 0.0) throw ConfigError("advance: negative duration");
    const double H = plan_.outer_step();
    const double tol = 1e-12 * H;
    auto n = static_cast<std::int64_t>(std::floor((duration + tol) / H));
    for (std::int64_t i = 0; i < n; ++i) step(y);
    const double r = duration - static_cast<double>(n) * H;
    if (r > tol) time_ += partial(plan_.levels(), y, r);
  }

 private:
  double fe(State& y, double h) {
    detail::eval(rhs_, y, scratch_);
    ++rhs_calls_;
    y += h * scratch_;
    return h;
  }

  double rk_step(State& y, double h) {
    RhsFunction<State> counted = [this](const State& a, State& b) {
      rhs_(a, b);
      ++rhs_calls_;
    };
    y = explicit_rk_step(counted, y, h, plan_.tableau());
    ++steps_[0];
    return h;
  }

  double level_step(int level, State& y) {
    if (level == 0) {
      ++steps_[0];
      return fe(y, plan_.h(0));
    }
    return outer(level, y, plan_.h(level), level == plan_.levels() ? plan_.tableau() : fe_tableau_);
  }

  double outer(int level, State& y, double H, const RkTableau& tab) {
    auto inner = [this, level](State& z) { return level_step(level - 1, z); };
    const double t = detail::projective_outer(inner, y, plan_.K(level - 1), plan_.h(level - 1), H, tab,
                                              buffers_[level]);
    ++steps_[level];
    return t;
  }

  // Shortened schedule of length r < h_level. A full inner sweep fits: shortened extrapolation,
  // with the tableau only when every stage still lands after the sweep. Otherwise whole inner
  // steps then recursion on what is left; level 0 finishes with one short forward Euler step.
  double partial(int level, State& y, double r) {
    if (level == 0) {
      if (plan_.levels() == 0) return rk_step(y, r);
      ++steps_[0];
      return fe(y, r);
    }
    const int K = plan_.K(level - 1);
    const double h = plan_.h(level - 1);
    if (r >= (K + 1) * h) {
      const bool use_tableau = level == plan_.levels() &&
                               plan_.tableau().min_positive_node() * r >= (K + 1) * h;
      return outer(level, y, r, use_tableau ? plan_.tableau() : fe_tableau_);
    }
    double t = 0.0;
    const auto whole = static_cast<int>(std::floor(r / h));
    for (int i = 0; i < whole; ++i) t += level_step(level - 1, y);
    const double rest = r - whole * h;
    if (rest > 1e-12 * h) t += partial(level - 1, y, rest);
    return t;
  }

  IntegratorPlan plan_;
  RhsFunction<State> rhs_;
  RkTableau fe_tableau_ = RkTableau::forward_euler();
  std::vector<detail::ProjectiveBuffers<State>> buffers_;
  State scratch_;
  std::vector<std::int64_t> steps_;
  std::int64_t rhs_calls_ = 0;
  double time_ = 0.0;
};

/// One outermost telescopic step; builds a throwaway integrator.
template <typename State, typename Rhs>
State telescopic_step(Rhs&& rhs, const State& y, const IntegratorPlan& plan) {
  TelescopicIntegrator<State> integ(plan, RhsFunction<State>(std::forward<Rhs>(rhs)));
  State out = y;
  integ.step(out);
  return out;
}

}  // namespace kinetic
