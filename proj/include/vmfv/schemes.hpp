#pragma once

#include "vmfv/core.hpp"

namespace vmfv {

/// Kernel execution policy. Parallel and serial paths produce bit-identical
/// results: every loop writes disjoint cells and the only reduction is a
/// max, which is order-independent.
enum class Exec { serial, openmp };

enum class SchemeKind { roe, cnd, cnd2, ec_only };

/// Slope limiters. Only minmod is implemented; the other names reserve
/// config slots and are rejected on use.
enum class Limiter { minmod, mc, superbee };

struct SchemeConfig {
  SchemeKind kind = SchemeKind::cnd;
  double cfl = 0.45;
  Limiter limiter = Limiter::minmod;
};

double minmod(double a, double b);
Vec minmod(const Vec& a, const Vec& b);

/// Edge values of the limited piecewise-linear reconstruction, for every
/// cell of the extended state that has both neighbors. Cell indices follow
/// the ExtendedState numbering.
struct ReconstructedEdges {
  int first_cell = 0;
  int count = 0;
  int m = 0;
  std::vector<double> minus;  // U^-_j, left edge of cell j
  std::vector<double> plus;   // U^+_j, right edge of cell j

  Vec minus_at(int cell) const { return get(minus, cell); }
  Vec plus_at(int cell) const { return get(plus, cell); }

private:
  Vec get(const std::vector<double>& buf, int cell) const {
    Vec v(m);
    const double* r = buf.data() + static_cast<size_t>(cell - first_cell) * m;
    for (int c = 0; c < m; ++c) v[c] = r[c];
    return v;
  }
};

ReconstructedEdges reconstruct(const ExtendedState& ext,
                               Exec exec = Exec::openmp);

/// Central flux minus half the Roe diffusion R |Lambda| R^-1 jmp(U), with
/// the eigendecomposition at the arithmetic-average state.
Vec roe_interface_flux(const HyperbolicModel& model, const Vec& u_j,
                       const Vec& u_j1);

/// Entropy conservative flux minus half the viscosity-matched diffusion.
Vec cnd_interface_flux(const HyperbolicModel& model, const Vec& u_j,
                       const Vec& u_j1, double c_max);

/// Semi-discrete rate dU/dt plus the boundary-interface numerical fluxes
/// (so that sum_j rate_j dx = flux_left - flux_right exactly) and the
/// global wave speed used by the diffusion operators.
struct RhsResult {
  StateField rate;
  Vec flux_left;
  Vec flux_right;
  double c_max = 0.0;
};

RhsResult semidiscrete_rhs(const HyperbolicModel& model,
                           const SchemeConfig& scheme, const StateField& field,
                           const BoundaryCondition& left,
                           const BoundaryCondition& right, double t,
                           Exec exec = Exec::openmp);

}  // namespace vmfv
