#pragma once

#include <memory>

#include "vmfv/model.hpp"

namespace vmfv {

/// Primitive description (density, velocity, pressure) of a gas state.
struct EulerPrim {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// Ideal-gas conversions. Conserved layout is (rho, rho u, E) with
/// E = p/(gamma-1) + rho u^2/2. Inadmissible states (rho <= 0 or p <= 0)
/// are rejected.
Vec euler_prim_to_cons(const EulerPrim& prim, double gamma);
EulerPrim euler_cons_to_prim(const Vec& cons, double gamma);

/// Logarithmic mean (a-b)/(log a - log b), with a series branch when the
/// arguments are close enough that the quotient would cancel.
double log_mean(double a, double b);

/// Diffusion matched to the compressible Navier-Stokes right-hand side:
/// c_max * (0, jmp u, jmp(u^2)/2 + jmp theta) from interface values of
/// velocity and temperature. Serves the first-order scheme (cell values)
/// and the second-order one (reconstructed edge values) alike.
Vec euler_ns_interface_diffusion(double u_left, double theta_left,
                                 double u_right, double theta_right,
                                 double c_max);

/// Compressible Euler equations with ideal-gas closure, the thermodynamic
/// entropy pair (-rho s/(gamma-1), -rho u s/(gamma-1)), the Ismail-Roe
/// entropy conservative flux, and Navier-Stokes-shaped diffusion data.
/// nu and kappa scale the viscous and heat-conduction rows of the
/// viscosity matrix (both default 1, the shape used by the schemes).
class EulerModel final : public HyperbolicModel {
public:
  explicit EulerModel(double gamma = 1.4, double nu = 1.0, double kappa = 1.0);

  int dim() const override { return 3; }
  Vec flux(const Vec& u) const override;
  Eigensystem jacobian_eigen(const Vec& u) const override;
  double entropy(const Vec& u) const override;
  double entropy_flux(const Vec& u) const override;
  Vec entropy_vars(const Vec& u) const override;
  double entropy_potential(const Vec& u) const override;  // = rho u
  Mat viscosity_matrix(const Vec& u) const override;
  Vec ec_flux(const Vec& ul, const Vec& ur) const override;
  Vec cnd_interface_diffusion(const Vec& ul, const Vec& ur,
                              double c_max) const override;
  double max_abs_eigenvalue(const Vec& u) const override;  // |u| + c
  bool admissible(const Vec& u) const override;

  double gamma() const { return gamma_; }
  double nu() const { return nu_; }
  double kappa() const { return kappa_; }

  double temperature(const Vec& u) const;  // p / ((gamma-1) rho)
  double sound_speed(const Vec& u) const;

private:
  double gamma_, nu_, kappa_;
};

}  // namespace vmfv
