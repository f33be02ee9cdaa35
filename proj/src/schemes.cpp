#include "vmfv/schemes.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace vmfv {

namespace {

/// Runs `body(i)` for i in [begin, end), optionally OpenMP-parallel.
/// Exceptions are captured and rethrown after the loop completes.
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
#pragma omp critical(vmfv_parallel_for_error)
      {
        if (!failed.exchange(true)) message = e.what();
      }
    }
  }
  if (failed) throw std::runtime_error(message);
}

double parallel_max_wave_speed(const HyperbolicModel& model,
                               const StateField& field, Exec exec) {
  const bool par = exec == Exec::openmp;
  const int n = field.grid.n_cells;
  std::atomic<bool> failed{false};
  std::string message;
  double c_max = 0.0;
#pragma omp parallel for if (par) schedule(static) reduction(max : c_max)
  for (int j = 0; j < n; ++j) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      c_max = std::max(c_max, model.max_abs_eigenvalue(field.at(j)));
    } catch (const std::exception& e) {
#pragma omp critical(vmfv_parallel_for_error)
      {
        if (!failed.exchange(true)) message = e.what();
      }
    }
  }
  if (failed) throw std::runtime_error(message);
  return c_max;
}

}  // namespace

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

Vec minmod(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (int i = 0; i < a.size(); ++i) r[i] = minmod(a[i], b[i]);
  return r;
}

ReconstructedEdges reconstruct(const ExtendedState& ext, Exec exec) {
  if (ext.n_ghost < 1)
    throw std::invalid_argument("reconstruct: needs at least one ghost cell");
  ReconstructedEdges edges;
  edges.first_cell = -ext.n_ghost + 1;
  edges.count = ext.n_cells + 2 * ext.n_ghost - 2;
  edges.m = ext.m;
  edges.minus.resize(static_cast<size_t>(edges.count) * ext.m);
  edges.plus.resize(static_cast<size_t>(edges.count) * ext.m);

  parallel_for(0, edges.count, exec, [&](int idx) {
    const int j = edges.first_cell + idx;
    const Vec u = ext.at(j);
    const Vec slope = minmod(ext.at(j + 1) - u, u - ext.at(j - 1));
    double* lo = edges.minus.data() + static_cast<size_t>(idx) * ext.m;
    double* hi = edges.plus.data() + static_cast<size_t>(idx) * ext.m;
    for (int c = 0; c < ext.m; ++c) {
      lo[c] = u[c] - 0.5 * slope[c];
      hi[c] = u[c] + 0.5 * slope[c];
    }
  });
  return edges;
}

Vec roe_interface_flux(const HyperbolicModel& model, const Vec& u_j,
                       const Vec& u_j1) {
  const Eigensystem es = model.jacobian_eigen(mean(u_j, u_j1));
  const Vec strengths = es.right_vectors.solve(jump(u_j, u_j1));
  Vec diffusion(u_j.size());
  for (int i = 0; i < u_j.size(); ++i)
    diffusion += std::abs(es.lambdas[i]) * strengths[i] *
                 es.right_vectors.col(i);
  return 0.5 * (model.flux(u_j) + model.flux(u_j1)) - 0.5 * diffusion;
}

Vec cnd_interface_flux(const HyperbolicModel& model, const Vec& u_j,
                       const Vec& u_j1, double c_max) {
  return model.ec_flux(u_j, u_j1) -
         0.5 * model.cnd_interface_diffusion(u_j, u_j1, c_max);
}

RhsResult semidiscrete_rhs(const HyperbolicModel& model,
                           const SchemeConfig& scheme, const StateField& field,
                           const BoundaryCondition& left,
                           const BoundaryCondition& right, double t,
                           Exec exec) {
  if (scheme.limiter != Limiter::minmod)
    throw std::invalid_argument(
        "semidiscrete_rhs: only the minmod limiter is implemented");

  const int n = field.grid.n_cells;
  const int m = field.m;
  const double dx = field.grid.dx;
  const int n_ghost = scheme.kind == SchemeKind::cnd2 ? 2 : 1;
  const ExtendedState ext = apply_boundary(field, left, right, t, n_ghost);

  const double c_max = parallel_max_wave_speed(model, field, exec);

  ReconstructedEdges edges;
  if (scheme.kind == SchemeKind::cnd2) edges = reconstruct(ext, exec);

  // Interface i sits between extended cells i-1 and i.
  std::vector<double> fluxes(static_cast<size_t>(n + 1) * m);
  parallel_for(0, n + 1, exec, [&](int i) {
    const Vec ul = ext.at(i - 1);
    const Vec ur = ext.at(i);
    Vec f;
    switch (scheme.kind) {
      case SchemeKind::roe:
        f = roe_interface_flux(model, ul, ur);
        break;
      case SchemeKind::cnd:
        f = cnd_interface_flux(model, ul, ur, c_max);
        break;
      case SchemeKind::ec_only:
        f = model.ec_flux(ul, ur);
        break;
      case SchemeKind::cnd2:
        // Entropy conservative flux on cell averages; diffusion on the
        // reconstructed edge values facing the interface.
        f = model.ec_flux(ul, ur) -
            0.5 * model.cnd_interface_diffusion(edges.plus_at(i - 1),
                                                edges.minus_at(i), c_max);
        break;
    }
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

}  // namespace vmfv
