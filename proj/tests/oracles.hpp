#pragma once
// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

/// Direct O(N^4 N_theta) evaluation of the spectral collision quadrature in physical units.
inline Eigen::VectorXd boltzmann_direct(const Eigen::VectorXd& f, int N, double V, int n_theta,
                                        double b0) {
  using cd = std::complex<double>;
  const double pi = std::numbers::pi;
  const double lambda = 2.0 / (3.0 + std::sqrt(2.0));
  const double R = lambda * pi;
  auto phi = [R](double s) { return s == 0.0 ? 2.0 * R : 2.0 * std::sin(R * s) / s; };
  const int lo = -N / 2 + 1, hi = N / 2 - 1, n = hi - lo + 1;
  auto xi = [&](int j) { return -pi + (j + 0.5) * 2.0 * pi / N; };

  std::vector<cd> g(n * n, 0.0);
  for (int ly = lo; ly <= hi; ++ly)
    for (int lx = lo; lx <= hi; ++lx) {
      cd acc = 0.0;
      for (int jy = 0; jy < N; ++jy)
        for (int jx = 0; jx < N; ++jx)
          acc += f(jx + N * jy) * std::polar(1.0, -(lx * xi(jx) + ly * xi(jy)));
      g[(lx - lo) + n * (ly - lo)] = acc / double(N * N);
    }
  auto B = [&](int lx, int ly, int mx, int my) {
    double s = 0.0;
    for (int p = 1; p <= n_theta; ++p) {
      const double th = pi * p / n_theta;
      s += phi(lx * std::cos(th) + ly * std::sin(th)) * phi(-mx * std::sin(th) + my * std::cos(th));
    }
    return pi / n_theta * s;
  };
  std::vector<cd> q(n * n, 0.0);
  for (int ly = lo; ly <= hi; ++ly)
    for (int lx = lo; lx <= hi; ++lx)
      for (int my = lo; my <= hi; ++my)
        for (int mx = lo; mx <= hi; ++mx) {
          const int kx = lx + mx, ky = ly + my;
          if (kx < lo || kx > hi || ky < lo || ky > hi) continue;
          const double beta = B(lx, ly, mx, my) - B(mx, my, mx, my);
          q[(kx - lo) + n * (ky - lo)] += beta * g[(lx - lo) + n * (ly - lo)] * g[(mx - lo) + n * (my - lo)];
        }
  const double scale = 2.0 * b0 * (V / pi) * (V / pi);
  Eigen::VectorXd out(N * N);
  for (int jy = 0; jy < N; ++jy)
    for (int jx = 0; jx < N; ++jx) {
      cd acc = 0.0;
      for (int ky = lo; ky <= hi; ++ky)
        for (int kx = lo; kx <= hi; ++kx)
          acc += q[(kx - lo) + n * (ky - lo)] * std::polar(1.0, kx * xi(jx) + ky * xi(jy));
      out(jx + N * jy) = scale * acc.real();
    }
  return out;
}

/// Small deterministic generator (splitmix64) for hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double a = 0.0, double b = 1.0) { return a + (b - a) * (next() >> 11) * 0x1.0p-53; }
  int integer(int a, int b) { return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1)); }

 private:
  std::uint64_t s_;
};

/// Reference cell moments by direct summation on the node coordinates.
struct Moments {
  double rho, ux, uy, T;
};

inline Moments direct_moments(const Eigen::VectorXd& f, const std::vector<double>& vx,
                              const std::vector<double>& vy, double w, int dims) {
  double rho = 0, mx = 0, my = 0;
  for (std::size_t j = 0; j < vx.size(); ++j) {
    rho += w * f(j);
    mx += w * vx[j] * f(j);
    my += w * vy[j] * f(j);
  }
  const double ux = mx / rho, uy = my / rho;
  double e = 0;
  for (std::size_t j = 0; j < vx.size(); ++j)
    e += w * ((vx[j] - ux) * (vx[j] - ux) + (vy[j] - uy) * (vy[j] - uy)) * f(j);
  return {rho, ux, uy, e / (dims * rho)};
}

}  // namespace oracle
