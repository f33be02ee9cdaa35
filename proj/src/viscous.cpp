#include "vmfv/viscous.hpp"

#include <atomic>
#include <sstream>

#include "vmfv/euler.hpp"

namespace vmfv {

namespace {

void validate(const ViscousSpec& spec, int m) {
  if (!spec.base_model)
    throw std::invalid_argument("viscous: missing base model");
  if (!(spec.epsilon > 0.0))
    throw std::invalid_argument("viscous: epsilon must be positive");
  if (spec.kind == DiffusionKind::matrix_b && spec.b.size() != m)
    throw std::invalid_argument("viscous: diffusion matrix has wrong size");
  if (spec.kind == DiffusionKind::euler_navier_stokes) {
    if (spec.nu < 0.0 || spec.kappa < 0.0)
      throw std::invalid_argument("viscous: nu, kappa must be nonnegative");
    if (!dynamic_cast<const EulerModel*>(spec.base_model.get()))
      throw std::invalid_argument(
          "viscous: euler_navier_stokes diffusion needs an Euler base model");
  }
}

double diffusion_bound(const ViscousSpec& spec) {
  switch (spec.kind) {
    case DiffusionKind::identity_laplacian:
      return 1.0;
    case DiffusionKind::matrix_b:
      return spec.b.inf_norm();
    case DiffusionKind::euler_navier_stokes:
      return std::max({spec.nu, spec.kappa, 1.0});
  }
  return 1.0;
}

template <typename Body>
void parallel_for(int begin, int end, Exec exec, const Body& body) {
  const bool par = exec == Exec::openmp;
  std::atomic<bool> failed{false};
  std::string message;
#pragma omp parallel for if (par) schedule(static)
  for (int i = begin; i < end; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      body(i);
    } catch (const std::exception& e) {
#pragma omp critical(vmfv_viscous_error)
      {
        if (!failed.exchange(true)) message = e.what();
      }
    }
  }
  if (failed) throw std::runtime_error(message);
}

}  // namespace

RhsResult viscous_rhs(const ViscousSpec& spec, const StateField& field,
                      const BoundaryCondition& left,
                      const BoundaryCondition& right, double t, Exec exec) {
  const int n = field.grid.n_cells;
  const int m = field.m;
  const double dx = field.grid.dx;
  validate(spec, m);
  const HyperbolicModel& model = *spec.base_model;
  const auto* euler = dynamic_cast<const EulerModel*>(spec.base_model.get());

  const ExtendedState ext = apply_boundary(field, left, right, t, 1);

  // First-difference diffusive flux at the interface between ul and ur;
  // the second difference D_j is the difference of these, so writing the
  // scheme in flux-difference form makes the discrete totals telescope.
  const auto diffusive_difference = [&](const Vec& ul, const Vec& ur) -> Vec {
    switch (spec.kind) {
      case DiffusionKind::identity_laplacian:
        return ur - ul;
      case DiffusionKind::matrix_b:
        return spec.b * (ur - ul);
      case DiffusionKind::euler_navier_stokes: {
        const double gm1 = euler->gamma() - 1.0;
        const EulerPrim wl = euler_cons_to_prim(ul, euler->gamma());
        const EulerPrim wr = euler_cons_to_prim(ur, euler->gamma());
        const double theta_l = wl.p / (gm1 * wl.rho);
        const double theta_r = wr.p / (gm1 * wr.rho);
        return Vec{0.0, spec.nu * (wr.u - wl.u),
                   spec.nu * 0.5 * (wr.u * wr.u - wl.u * wl.u) +
                       spec.kappa * (theta_r - theta_l)};
      }
    }
    return Vec(m);
  };

  double c_max = 0.0;
  {
    const bool par = exec == Exec::openmp;
    std::atomic<bool> failed{false};
    std::string message;
#pragma omp parallel for if (par) schedule(static) reduction(max : c_max)
    for (int j = 0; j < n; ++j) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        c_max = std::max(c_max, model.max_abs_eigenvalue(field.at(j)));
      } catch (const std::exception& e) {
#pragma omp critical(vmfv_viscous_error)
        {
          if (!failed.exchange(true)) message = e.what();
        }
      }
    }
    if (failed) throw std::runtime_error(message);
  }

  std::vector<double> fluxes(static_cast<size_t>(n + 1) * m);
  const double eps_over_dx = spec.epsilon / dx;
  parallel_for(0, n + 1, exec, [&](int i) {
    const Vec ul = ext.at(i - 1);
    const Vec ur = ext.at(i);
    const Vec f =
        model.ec_flux(ul, ur) - eps_over_dx * diffusive_difference(ul, ur);
    double* out = fluxes.data() + static_cast<size_t>(i) * m;
    for (int c = 0; c < m; ++c) out[c] = f[c];
  });

  RhsResult result;
  result.rate.grid = field.grid;
  result.rate.m = m;
  result.rate.time = field.time;
  result.rate.data.resize(static_cast<size_t>(n) * m);
  parallel_for(0, n, exec, [&](int j) {
    const double* fl = fluxes.data() + static_cast<size_t>(j) * m;
    const double* fr = fluxes.data() + static_cast<size_t>(j + 1) * m;
    double* out = result.rate.row(j);
    for (int c = 0; c < m; ++c) out[c] = (fl[c] - fr[c]) / dx;
  });

  result.flux_left = Vec(m);
  result.flux_right = Vec(m);
  for (int c = 0; c < m; ++c) {
    result.flux_left[c] = fluxes[c];
    result.flux_right[c] = fluxes[static_cast<size_t>(n) * m + c];
  }
  result.c_max = c_max;
  return result;
}

RunResult run_viscous(const ViscousSpec& spec, const StateField& initial,
                      const BoundaryCondition& left,
                      const BoundaryCondition& right, double t_final,
                      double cfl_adv, double cfl_diff,
                      const ProgressCallback& progress, Exec exec) {
  validate(spec, initial.m);
  if (!(cfl_adv > 0.0 && cfl_adv < 1.0) || !(cfl_diff > 0.0 && cfl_diff < 1.0))
    throw std::invalid_argument("run_viscous: CFL numbers must lie in (0, 1)");

  const double dx = initial.grid.dx;
  const double dt_diffusive =
      cfl_diff * dx * dx / (spec.epsilon * diffusion_bound(spec));
  const RhsOperator rhs = [&](const StateField& f, double t) {
    return viscous_rhs(spec, f, left, right, t, exec);
  };
  const auto dt_select = [&](const RhsResult& r) {
    const double dt_advective =
        r.c_max > 0.0 ? cfl_adv * dx / r.c_max
                      : std::numeric_limits<double>::infinity();
    return std::min(dt_advective, dt_diffusive);
  };
  TimeLoopConfig loop;
  loop.t_final = t_final;
  return integrate_ssprk2(rhs, dt_select, initial, loop, progress, exec);
}

}  // namespace vmfv
