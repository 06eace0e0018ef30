#include "kinetic/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed mode number of storage index i on an n-point grid.
int signed_mode(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }

bool retained(int k, int n) { return 2 * std::abs(k) < n; }

struct FftwPlan {
  fftw_plan p = nullptr;
  FftwPlan() = default;
  explicit FftwPlan(fftw_plan q) : p(q) {}
  FftwPlan(FftwPlan&& o) noexcept : p(o.p) { o.p = nullptr; }
  FftwPlan& operator=(FftwPlan&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~FftwPlan() {
    if (p) fftw_destroy_plan(p);
  }
};

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

}  // namespace

double SpectralPlan::jacobian() const {
  const double s = extent / kPi;
  return s * s;
}

double SpectralPlan::angle(int p) const { return kPi * p / n_theta; }

double SpectralPlan::phi(double s) const {
  const double x = radius * s;
  return 2.0 * radius * (x == 0.0 ? 1.0 : std::sin(x) / x);
}

SpectralPlan plan_spectral(int modes, double extent, int n_theta, double b0) {
  if (modes < 8 || modes % 2 != 0)
    throw ConfigError("spectral plan: node count per axis must be even and at least 8");
  if (n_theta < 1) throw ConfigError("spectral plan: need at least one angle");
  if (!(extent > 0.0)) throw ConfigError("spectral plan: velocity extent must be positive");
  if (!(b0 > 0.0)) throw ConfigError("spectral plan: kernel constant must be positive");

  SpectralPlan plan;
  plan.modes = modes;
  plan.padded = 3 * modes / 2;
  plan.n_theta = n_theta;
  plan.extent = extent;
  plan.b0 = b0;
  plan.lambda = 2.0 / (3.0 + std::numbers::sqrt2);
  plan.radius = plan.lambda * kPi;

  const int P = plan.padded;
  plan.alpha.assign(n_theta, Eigen::ArrayXd::Zero(P * P));
  plan.alpha_perp.assign(n_theta, Eigen::ArrayXd::Zero(P * P));
  plan.diagonal = Eigen::ArrayXd::Zero(P * P);
  const double w = kPi / n_theta;
  for (int p = 0; p < n_theta; ++p) {
    const double th = plan.angle(p + 1);
    const double c = std::cos(th), s = std::sin(th);
    for (int iy = 0; iy < P; ++iy) {
      const int ly = signed_mode(iy, P);
      if (!retained(ly, modes)) continue;
      for (int ix = 0; ix < P; ++ix) {
        const int lx = signed_mode(ix, P);
        if (!retained(lx, modes)) continue;
        const int idx = ix + P * iy;
        const double a = plan.phi(lx * c + ly * s);
        const double ap = plan.phi(-lx * s + ly * c);
        plan.alpha[p](idx) = a;
        plan.alpha_perp[p](idx) = ap;
        plan.diagonal(idx) += w * a * ap;
      }
    }
  }
  return plan;
}

void check_compatible(const SpectralPlan& plan, const VelocityGrid& velocity) {
  if (velocity.dims() != 2 || velocity.count(0) != plan.modes || velocity.count(1) != plan.modes)
    throw ConfigError("spectral plan: velocity grid must be 2D with " + std::to_string(plan.modes) +
                      " nodes per axis");
  if (std::abs(velocity.extent() - plan.extent) > 1e-12 * plan.extent)
    throw ConfigError("spectral plan: velocity extent does not match the plan");
}

struct SpectralWorkspace::Impl {
  int n, P;
  std::vector<std::complex<double>> small, spec, big;
  Eigen::ArrayXd gain, loss;
  FftwPlan fwd_small, inv_small, inv_big, fwd_big;

  explicit Impl(const SpectralPlan& plan)
      : n(plan.modes), P(plan.padded), small(n * n), spec(n * n), big(P * P),
        gain(P * P), loss(P * P) {
    fwd_small = FftwPlan(fftw_plan_dft_2d(n, n, as_fftw(small), as_fftw(spec), FFTW_FORWARD, FFTW_ESTIMATE));
    inv_small = FftwPlan(fftw_plan_dft_2d(n, n, as_fftw(spec), as_fftw(small), FFTW_BACKWARD, FFTW_ESTIMATE));
    inv_big = FftwPlan(fftw_plan_dft_2d(P, P, as_fftw(big), as_fftw(big), FFTW_BACKWARD, FFTW_ESTIMATE));
    fwd_big = FftwPlan(fftw_plan_dft_2d(P, P, as_fftw(big), as_fftw(big), FFTW_FORWARD, FFTW_ESTIMATE));
  }
};

SpectralWorkspace::SpectralWorkspace(const SpectralPlan& plan) : impl_(std::make_unique<Impl>(plan)) {}
SpectralWorkspace::~SpectralWorkspace() = default;
SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&&) noexcept = default;
SpectralWorkspace& SpectralWorkspace::operator=(SpectralWorkspace&&) noexcept = default;

namespace {

void check_slice(const SpectralPlan& plan, Eigen::Index len) {
  if (len != static_cast<Eigen::Index>(plan.modes) * plan.modes)
    throw ConfigError("spectral plan: slice length does not match the plan");
}

// Padded-grid gain and loss products (rescaled velocity units, without kernel constant).
// Mode phases from the cell-centred nodes cancel in every quadratic product, so plain DFT
// coefficients are used throughout.
void padded_products(const SpectralPlan& plan, SpectralWorkspace::Impl& w,
                     const Eigen::Ref<const Eigen::VectorXd>& slice) {
  const int n = w.n, P = w.P;
  for (int j = 0; j < n * n; ++j) w.small[j] = slice(j);
  fftw_execute(w.fwd_small.p);
  const double norm = 1.0 / (static_cast<double>(n) * n);

  auto scatter = [&](auto&& factor) {
    std::fill(w.big.begin(), w.big.end(), std::complex<double>(0.0));
    for (int iy = 0; iy < n; ++iy) {
      const int ly = signed_mode(iy, n);
      if (!retained(ly, n)) continue;
      for (int ix = 0; ix < n; ++ix) {
        const int lx = signed_mode(ix, n);
        if (!retained(lx, n)) continue;
        const int pi = (lx + P) % P + P * ((ly + P) % P);
        w.big[pi] = factor(pi) * (w.spec[ix + n * iy] * norm);
      }
    }
    fftw_execute(w.inv_big.p);
  };

  w.gain.setZero();
  const double weight = kPi / plan.n_theta;
  for (int p = 0; p < plan.n_theta; ++p) {
    const Eigen::ArrayXd& a = plan.alpha[p];
    const Eigen::ArrayXd& ap = plan.alpha_perp[p];
    scatter([&](int i) { return std::complex<double>(a(i), ap(i)); });
    for (int i = 0; i < P * P; ++i) w.gain(i) += weight * w.big[i].real() * w.big[i].imag();
  }
  scatter([&](int i) { return std::complex<double>(1.0, plan.diagonal(i)); });
  for (int i = 0; i < P * P; ++i) w.loss(i) = w.big[i].real() * w.big[i].imag();
}

// Projects a padded-grid field onto the retained modes and evaluates it at the velocity nodes.
// Returns the largest imaginary residue.
double project(SpectralWorkspace::Impl& w, const Eigen::ArrayXd& field,
               double scale, Eigen::Ref<Eigen::VectorXd> out) {
  const int n = w.n, P = w.P;
  for (int i = 0; i < P * P; ++i) w.big[i] = field(i);
  fftw_execute(w.fwd_big.p);
  const double norm = scale / (static_cast<double>(P) * P);
  std::fill(w.spec.begin(), w.spec.end(), std::complex<double>(0.0));
  for (int iy = 0; iy < n; ++iy) {
    const int ky = signed_mode(iy, n);
    if (!retained(ky, n)) continue;
    for (int ix = 0; ix < n; ++ix) {
      const int kx = signed_mode(ix, n);
      if (!retained(kx, n)) continue;
      w.spec[ix + n * iy] = w.big[(kx + P) % P + P * ((ky + P) % P)] * norm;
    }
  }
  fftw_execute(w.inv_small.p);
  double imag = 0.0;
  for (int j = 0; j < n * n; ++j) {
    out(j) = w.small[j].real();
    imag = std::max(imag, std::abs(w.small[j].imag()));
  }
  return imag;
}

}  // namespace

void boltzmann_q(const SpectralPlan& plan, SpectralWorkspace& ws,
                 const Eigen::Ref<const Eigen::VectorXd>& slice, Eigen::Ref<Eigen::VectorXd> out) {
  check_slice(plan, slice.size());
  check_slice(plan, out.size());
  SpectralWorkspace::Impl& w = ws.impl();
  if (w.n != plan.modes) throw ConfigError("spectral workspace built for a different plan");
  padded_products(plan, w, slice);
  w.gain -= w.loss;
  project(w, w.gain, plan.kernel_constant() * plan.jacobian(), out);
}

Eigen::VectorXd boltzmann_q(const SpectralPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& slice) {
  SpectralWorkspace ws(plan);
  Eigen::VectorXd out(slice.size());
  boltzmann_q(plan, ws, slice, out);
  return out;
}

CollisionParts boltzmann_parts(const SpectralPlan& plan, SpectralWorkspace& ws,
                               const Eigen::Ref<const Eigen::VectorXd>& slice) {
  check_slice(plan, slice.size());
  SpectralWorkspace::Impl& w = ws.impl();
  if (w.n != plan.modes) throw ConfigError("spectral workspace built for a different plan");
  padded_products(plan, w, slice);
  const double scale = plan.kernel_constant() * plan.jacobian();
  CollisionParts parts;
  parts.gain.resize(slice.size());
  parts.loss.resize(slice.size());
  const Eigen::ArrayXd total = w.gain - w.loss;
  const Eigen::ArrayXd loss = w.loss;
  Eigen::VectorXd q(slice.size());
  const double imag = project(w, total, scale, q);
  project(w, loss, scale, parts.loss);
  parts.gain = q + parts.loss;
  const double qmax = q.cwiseAbs().maxCoeff();
  parts.imaginary_residue = qmax > 0.0 ? imag / qmax : imag;
  return parts;
}

void boltzmann_rhs(const VelocityGrid& velocity, const SpectralPlan& plan, SpectralWorkspace& ws,
                   double epsilon, const Eigen::MatrixXd& f, Eigen::MatrixXd& out) {
  check_compatible(plan, velocity);
  if (!(epsilon > 0.0)) throw ConfigError("boltzmann_rhs: epsilon must be positive");
  out.resize(f.rows(), f.cols());
  if (std::isinf(epsilon)) {
    out.setZero();
    return;
  }
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    boltzmann_q(plan, ws, f.col(c), out.col(c));
    out.col(c) /= epsilon;
  }
}

Eigen::MatrixXd boltzmann_rhs(const DistributionField& field, const SpectralPlan& plan) {
  SpectralWorkspace ws(plan);
  Eigen::MatrixXd out;
  boltzmann_rhs(field.velocity, plan, ws, field.epsilon, field.values, out);
  return out;
}

FourierSlice forward_transform(const SpectralPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& slice) {
  check_slice(plan, slice.size());
  const int n = plan.modes;
  std::vector<std::complex<double>> in(n * n), out(n * n);
  for (int j = 0; j < n * n; ++j) in[j] = slice(j);
  FftwPlan p(fftw_plan_dft_2d(n, n, as_fftw(in), as_fftw(out), FFTW_FORWARD, FFTW_ESTIMATE));
  fftw_execute(p.p);
  FourierSlice fs;
  fs.modes = n;
  fs.coefficients.resize(n * n);
  // node xi_j = -pi + (j + 1/2) 2 pi / n, so each mode picks up exp(i k (pi - pi / n))
  const double shift = kPi - kPi / n;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int k = signed_mode(ix, n) + signed_mode(iy, n);
      fs.coefficients(ix + n * iy) = out[ix + n * iy] / (static_cast<double>(n) * n) *
                                     std::polar(1.0, k * shift);
    }
  }
  return fs;
}

Eigen::VectorXcd inverse_transform(const SpectralPlan& plan, const FourierSlice& modes) {
  const int n = plan.modes;
  if (modes.modes != n || modes.coefficients.size() != n * n)
    throw ConfigError("inverse_transform: mode count does not match the plan");
  std::vector<std::complex<double>> in(n * n), out(n * n);
  const double shift = kPi - kPi / n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int k = signed_mode(ix, n) + signed_mode(iy, n);
      in[ix + n * iy] = modes.coefficients(ix + n * iy) * std::polar(1.0, -k * shift);
    }
  FftwPlan p(fftw_plan_dft_2d(n, n, as_fftw(in), as_fftw(out), FFTW_BACKWARD, FFTW_ESTIMATE));
  fftw_execute(p.p);
  Eigen::VectorXcd v(n * n);
  for (int j = 0; j < n * n; ++j) v(j) = out[j];
  return v;
}

}  // namespace kinetic
