// Test-side oracles, independent of the library implementation paths they
// check: finite-difference gradients, random state generators, and a
// naive transcription of the Ismail-Roe flux.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "vmfv/euler.hpp"
#include "vmfv/vec.hpp"

namespace oracles {

using vmfv::Mat;
using vmfv::Vec;

/// Central finite-difference gradient with componentwise relative step.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f,
                       const Vec& u, double rel_step = 1e-6) {
  Vec g(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(u[i]));
    Vec up = u, dn = u;
    up[i] += h;
    dn[i] -= h;
    g[i] = (f(up) - f(dn)) / (2.0 * h);
  }
  return g;
}

/// Central finite-difference Jacobian (rows are gradients of components).
inline Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& u,
                       double rel_step = 1e-6) {
  Mat j(u.size());
  for (int c = 0; c < u.size(); ++c) {
    const double h = rel_step * std::max(1.0, std::abs(u[c]));
    Vec up = u, dn = u;
    up[c] += h;
    dn[c] -= h;
    const Vec fu = f(up), fd = f(dn);
    for (int r = 0; r < u.size(); ++r) j(r, c) = (fu[r] - fd[r]) / (2.0 * h);
  }
  return j;
}

/// Gauss-eliminated inverse for small matrices.
inline Mat inverse(const Mat& m) {
  Mat inv(m.size());
  for (int c = 0; c < m.size(); ++c) {
    Vec e(m.size());
    e[c] = 1.0;
    inv.set_col(c, m.solve(e));
  }
  return inv;
}

inline Vec random_sw_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  return Vec{d(rng), d(rng)};
}

/// Admissible Euler conserved state with density and pressure in
/// [lo, hi] (log-uniform) and moderate velocity.
inline Vec random_euler_state(std::mt19937& rng, double gamma,
                              double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> logd(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> vel(-2.0, 2.0);
  return vmfv::euler_prim_to_cons(
      {std::exp(logd(rng)), vel(rng), std::exp(logd(rng))}, gamma);
}

/// Second state whose density and pressure ratios to the first lie in
/// [ratio_lo, ratio_hi] (log-uniform).
inline Vec random_euler_partner(std::mt19937& rng, const Vec& first,
                                double gamma, double ratio_lo = 0.1,
                                double ratio_hi = 10.0) {
  const vmfv::EulerPrim w = vmfv::euler_cons_to_prim(first, gamma);
  std::uniform_real_distribution<double> logr(std::log(ratio_lo),
                                              std::log(ratio_hi));
  std::uniform_real_distribution<double> vel(-2.0, 2.0);
  return vmfv::euler_prim_to_cons(
      {w.rho * std::exp(logr(rng)), vel(rng), w.p * std::exp(logr(rng))},
      gamma);
}

/// Independent transcription of the Ismail-Roe entropy conservative flux,
/// written directly from the component formulas with a plain logarithmic
/// mean (no series branch; callers keep states apart).
inline Vec ismail_roe_reference(const Vec& ul, const Vec& ur, double gamma) {
  const vmfv::EulerPrim l = vmfv::euler_cons_to_prim(ul, gamma);
  const vmfv::EulerPrim r = vmfv::euler_cons_to_prim(ur, gamma);
  const double z1l = std::sqrt(l.rho / l.p), z1r = std::sqrt(r.rho / r.p);
  const double z2l = z1l * l.u, z2r = z1r * r.u;
  const double z3l = std::sqrt(l.rho * l.p), z3r = std::sqrt(r.rho * r.p);
  const auto lm = [](double a, double b) {
    return a == b ? a : (a - b) / (std::log(a) - std::log(b));
  };
  const double z1m = 0.5 * (z1l + z1r), z2m = 0.5 * (z2l + z2r),
               z3m = 0.5 * (z3l + z3r);
  const double rho_hat = z1m * lm(z3l, z3r);
  const double u_hat = z2m / z1m;
  const double p1_hat = z3m / z1m;
  const double p2_hat = (gamma + 1.0) / (2.0 * gamma) * lm(z3l, z3r) /
                            lm(z1l, z1r) +
                        (gamma - 1.0) / (2.0 * gamma) * z3m / z1m;
  const double h_hat =
      gamma / (gamma - 1.0) * p2_hat / rho_hat + 0.5 * u_hat * u_hat;
  return Vec{rho_hat * u_hat, p1_hat + rho_hat * u_hat * u_hat,
             rho_hat * u_hat * h_hat};
}

}  // namespace oracles
