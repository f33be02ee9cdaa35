#include "vmfv/euler.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vmfv {

namespace {

[[noreturn]] void throw_inadmissible(double rho, double p) {
  std::ostringstream os;
  os << "euler: inadmissible state (rho = " << rho << ", p = " << p << ")";
  throw std::domain_error(os.str());
}

struct PrimCache {
  double rho, u, p;
};

PrimCache unpack(const Vec& cons, double gamma) {
  const double rho = cons[0];
  const double p =
      (gamma - 1.0) * (cons[2] - 0.5 * cons[1] * cons[1] / cons[0]);
  if (!(rho > 0.0) || !(p > 0.0)) throw_inadmissible(rho, p);
  return {rho, cons[1] / rho, p};
}

}  // namespace

Vec euler_prim_to_cons(const EulerPrim& prim, double gamma) {
  if (!(prim.rho > 0.0) || !(prim.p > 0.0))
    throw_inadmissible(prim.rho, prim.p);
  return Vec{prim.rho, prim.rho * prim.u,
             prim.p / (gamma - 1.0) + 0.5 * prim.rho * prim.u * prim.u};
}

EulerPrim euler_cons_to_prim(const Vec& cons, double gamma) {
  const PrimCache w = unpack(cons, gamma);
  return {w.rho, w.u, w.p};
}

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("log_mean: arguments must be positive");
  // Canonical argument order keeps the result exactly symmetric.
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double f = (hi - lo) / (hi + lo);
  const double v = f * f;
  double big_f;
  if (f < 1e-4) {
    // 4-term expansion of log((1+f)/(1-f)) / (2f); the direct quotient
    // cancels catastrophically as a -> b.
    big_f = 1.0 + v / 3.0 + v * v / 5.0 + v * v * v / 7.0;
  } else {
    big_f = std::log(hi / lo) / (2.0 * f);
  }
  return 0.5 * (hi + lo) / big_f;
}

Vec euler_ns_interface_diffusion(double u_left, double theta_left,
                                 double u_right, double theta_right,
                                 double c_max) {
  return Vec{0.0, c_max * (u_right - u_left),
             c_max * (0.5 * (u_right * u_right - u_left * u_left) +
                      (theta_right - theta_left))};
}

EulerModel::EulerModel(double gamma, double nu, double kappa)
    : gamma_(gamma), nu_(nu), kappa_(kappa) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("EulerModel: gamma must exceed 1");
  if (nu < 0.0 || kappa < 0.0)
    throw std::invalid_argument("EulerModel: nu, kappa must be nonnegative");
}

Vec EulerModel::flux(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  return Vec{u[1], u[1] * w.u + w.p, (u[2] + w.p) * w.u};
}

Eigensystem EulerModel::jacobian_eigen(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  const double c = std::sqrt(gamma_ * w.p / w.rho);
  const double enthalpy = (u[2] + w.p) / w.rho;

  Eigensystem es;
  es.lambdas = Vec{w.u - c, w.u, w.u + c};
  es.right_vectors = Mat(3);
  es.right_vectors.set_col(0, Vec{1.0, w.u - c, enthalpy - w.u * c});
  es.right_vectors.set_col(1, Vec{1.0, w.u, 0.5 * w.u * w.u});
  es.right_vectors.set_col(2, Vec{1.0, w.u + c, enthalpy + w.u * c});
  for (int i = 0; i < 3; ++i)
    if (es.lambdas[i] < 0.0) ++es.k_negative;
  return es;
}

double EulerModel::entropy(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  const double s = std::log(w.p) - gamma_ * std::log(w.rho);
  return -w.rho * s / (gamma_ - 1.0);
}

double EulerModel::entropy_flux(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  return entropy(u) * w.u;
}

Vec EulerModel::entropy_vars(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  const double s = std::log(w.p) - gamma_ * std::log(w.rho);
  return Vec{(gamma_ - s) / (gamma_ - 1.0) - 0.5 * w.rho * w.u * w.u / w.p,
             w.rho * w.u / w.p, -w.rho / w.p};
}

double EulerModel::entropy_potential(const Vec& u) const {
  unpack(u, gamma_);
  return u[1];  // V.F - Q collapses to the mass flux rho u
}

Mat EulerModel::viscosity_matrix(const Vec& u) const {
  // Conservative-variable form of the Navier-Stokes right-hand side
  // (nu u_xx row two, nu (u^2/2)_xx + kappa theta_xx row three):
  // gradients of u and theta with respect to (rho, rho u, E).
  const PrimCache w = unpack(u, gamma_);
  const Vec grad_u{-w.u / w.rho, 1.0 / w.rho, 0.0};
  const Vec grad_theta{w.u * w.u / w.rho - u[2] / (w.rho * w.rho),
                       -w.u / w.rho, 1.0 / w.rho};
  Mat b(3);
  for (int j = 0; j < 3; ++j) {
    b(1, j) = nu_ * grad_u[j];
    b(2, j) = nu_ * w.u * grad_u[j] + kappa_ * grad_theta[j];
  }
  return b;
}

Vec EulerModel::ec_flux(const Vec& ul, const Vec& ur) const {
  const PrimCache l = unpack(ul, gamma_);
  const PrimCache r = unpack(ur, gamma_);

  // Ismail-Roe parameter vector z = (sqrt(rho/p), sqrt(rho/p) u, sqrt(rho p)).
  const double z1l = std::sqrt(l.rho / l.p), z1r = std::sqrt(r.rho / r.p);
  const double z2l = z1l * l.u, z2r = z1r * r.u;
  const double z3l = std::sqrt(l.rho * l.p), z3r = std::sqrt(r.rho * r.p);

  const double z1m = 0.5 * (z1l + z1r);
  const double z2m = 0.5 * (z2l + z2r);
  const double z3m = 0.5 * (z3l + z3r);
  const double z1ln = log_mean(z1l, z1r);
  const double z3ln = log_mean(z3l, z3r);

  const double f1 = z2m * z3ln;
  const double f2 = z3m / z1m + (z2m / z1m) * f1;
  const double f3 = 0.5 * (z2m / z1m) *
                    ((gamma_ + 1.0) / (gamma_ - 1.0) * z3ln / z1ln + f2);
  return Vec{f1, f2, f3};
}

Vec EulerModel::cnd_interface_diffusion(const Vec& ul, const Vec& ur,
                                        double c_max) const {
  const PrimCache l = unpack(ul, gamma_);
  const PrimCache r = unpack(ur, gamma_);
  return euler_ns_interface_diffusion(l.u, l.p / ((gamma_ - 1.0) * l.rho),
                                      r.u, r.p / ((gamma_ - 1.0) * r.rho),
                                      c_max);
}

double EulerModel::max_abs_eigenvalue(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  return std::abs(w.u) + std::sqrt(gamma_ * w.p / w.rho);
}

bool EulerModel::admissible(const Vec& u) const {
  if (!u.all_finite() || u.size() != 3) return false;
  const double p = (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
  return u[0] > 0.0 && p > 0.0;
}

double EulerModel::temperature(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  return w.p / ((gamma_ - 1.0) * w.rho);
}

double EulerModel::sound_speed(const Vec& u) const {
  const PrimCache w = unpack(u, gamma_);
  return std::sqrt(gamma_ * w.p / w.rho);
}

}  // namespace vmfv
