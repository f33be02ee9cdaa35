#pragma once

#include <memory>

#include "vmfv/timeint.hpp"

namespace vmfv {

enum class DiffusionKind { identity_laplacian, matrix_b, euler_navier_stokes };

/// Direct discretization of U_t + F(U)_x = eps (diffusion) at a fixed
/// small eps: entropy conservative convective flux plus pointwise second
/// differences of the regularized quantities. For euler_navier_stokes the
/// momentum and energy rows carry nu * d2(u) and nu * d2(u^2/2) +
/// kappa * d2(theta); nu and kappa are dimensionless multiples of eps.
struct ViscousSpec {
  std::shared_ptr<const HyperbolicModel> base_model;
  double epsilon = 0.0;
  DiffusionKind kind = DiffusionKind::identity_laplacian;
  Mat b;                 // matrix_b only
  double nu = 1.0;       // euler_navier_stokes only
  double kappa = 1.0;    // euler_navier_stokes only
};

RhsResult viscous_rhs(const ViscousSpec& spec, const StateField& field,
                      const BoundaryCondition& left,
                      const BoundaryCondition& right, double t,
                      Exec exec = Exec::openmp);

/// Explicit SSP-RK2 with dt = min(cfl_adv dx / c_max,
/// cfl_diff dx^2 / (eps b_max)), where b_max bounds the diffusion
/// coefficients of the chosen kind.
RunResult run_viscous(const ViscousSpec& spec, const StateField& initial,
                      const BoundaryCondition& left,
                      const BoundaryCondition& right, double t_final,
                      double cfl_adv = 0.45, double cfl_diff = 0.4,
                      const ProgressCallback& progress = {},
                      Exec exec = Exec::openmp);

}  // namespace vmfv
