#include "kinetic/integrators.hpp"

#include <algorithm>
#include <limits>

namespace kinetic {

RkTableau::RkTableau(std::string name, Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const Eigen::Index S = b_.size();
  if (S < 1 || a_.rows() != S || a_.cols() != S || c_.size() != S)
    throw ConfigError("tableau " + name_ + ": inconsistent sizes");
  const double tol = 1e-14;
  if (std::abs(b_.sum() - 1.0) > tol) throw ConfigError("tableau " + name_ + ": weights must sum to 1");
  for (Eigen::Index s = 0; s < S; ++s) {
    for (Eigen::Index i = s; i < S; ++i)
      if (a_(s, i) != 0.0) throw ConfigError("tableau " + name_ + ": stage matrix must be strictly lower triangular");
    if (std::abs(a_.row(s).sum() - c_(s)) > tol)
      throw ConfigError("tableau " + name_ + ": row sums must equal the nodes");
    if (b_(s) < 0.0 || b_(s) > 1.0 || c_(s) < 0.0 || c_(s) > 1.0)
      throw ConfigError("tableau " + name_ + ": weights and nodes must lie in [0, 1]");
    if (s > 0 && c_(s) == 0.0)
      throw ConfigError("tableau " + name_ + ": zero node after the first stage is not supported");
  }
}

RkTableau RkTableau::forward_euler() {
  return RkTableau("fe", Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1));
}

RkTableau RkTableau::rk2() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 0) = 0.5;
  Eigen::VectorXd b(2), c(2);
  b << 0.0, 1.0;
  c << 0.0, 0.5;
  return RkTableau("rk2", a, b, c);
}

RkTableau RkTableau::rk4() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(1, 0) = 0.5;
  a(2, 1) = 0.5;
  a(3, 2) = 1.0;
  Eigen::VectorXd b(4), c(4);
  b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  c << 0.0, 0.5, 0.5, 1.0;
  return RkTableau("rk4", a, b, c);
}

RkTableau RkTableau::by_name(const std::string& name) {
  if (name == "fe") return forward_euler();
  if (name == "rk2") return rk2();
  if (name == "rk4") return rk4();
  throw ConfigError("unknown tableau '" + name + "'");
}

double RkTableau::min_positive_node() const {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index s = 0; s < c_.size(); ++s)
    if (c_(s) > 0.0) m = std::min(m, c_(s));
  return std::isinf(m) ? 1.0 : m;
}

IntegratorPlan::IntegratorPlan(std::vector<double> h, std::vector<int> K, std::vector<double> M, RkTableau t)
    : h_(std::move(h)), K_(std::move(K)), M_(std::move(M)), tableau_(std::move(t)) {
  validate();
}

IntegratorPlan IntegratorPlan::from_steps(std::vector<double> h, std::vector<int> K, RkTableau tableau) {
  if (h.size() != K.size() + 1) throw ConfigError("plan: need one more step size than inner counts");
  for (double v : h)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("plan: step sizes must be positive");
  std::vector<double> M(K.size());
  for (std::size_t l = 0; l < K.size(); ++l) {
    if (K[l] < 0) throw ConfigError("plan: inner counts must be non-negative");
    M[l] = h[l + 1] / h[l] - (K[l] + 1);
    // absorb rounding of an exactly representable layout
    if (M[l] < 0.0 && M[l] > -1e-12 * (K[l] + 1)) M[l] = 0.0;
  }
  return IntegratorPlan(std::move(h), std::move(K), std::move(M), std::move(tableau));
}

IntegratorPlan IntegratorPlan::from_factors(double h0, std::vector<int> K, std::vector<double> M,
                                            RkTableau tableau) {
  if (K.size() != M.size()) throw ConfigError("plan: K and M lists differ in length");
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw ConfigError("plan: h0 must be positive");
  std::vector<double> h{h0};
  for (std::size_t l = 0; l < K.size(); ++l) h.push_back((M[l] + K[l] + 1) * h[l]);
  return IntegratorPlan(std::move(h), std::move(K), std::move(M), std::move(tableau));
}

IntegratorPlan IntegratorPlan::plain(double h0, RkTableau tableau) {
  return from_steps({h0}, {}, std::move(tableau));
}

void IntegratorPlan::validate() const {
  if (h_.size() != K_.size() + 1 || M_.size() != K_.size())
    throw ConfigError("plan: inconsistent level lists");
  for (double v : h_)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("plan: step sizes must be positive");
  for (std::size_t l = 0; l < K_.size(); ++l) {
    if (K_[l] < 0) throw ConfigError("plan: inner counts must be non-negative");
    if (!(M_[l] >= 0.0) || !std::isfinite(M_[l]))
      throw InfeasiblePlan("plan: level " + std::to_string(l) +
                           " outer step is shorter than its K + 1 inner steps");
    const double expect = (M_[l] + K_[l] + 1) * h_[l];
    if (std::abs(h_[l + 1] - expect) > 1e-12 * h_[l + 1])
      throw ConfigError("plan: level " + std::to_string(l) + " violates h_{l+1} = (M + K + 1) h_l");
  }
}

double speedup(const IntegratorPlan& plan) {
  double s = 1.0;
  for (int l = 0; l < plan.levels(); ++l) s *= (plan.M(l) + plan.K(l) + 1) / (plan.K(l) + 1);
  return s;
}

}  // namespace kinetic
