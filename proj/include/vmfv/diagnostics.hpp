#pragma once

#include <optional>

#include "vmfv/timeint.hpp"

namespace vmfv {

/// Cellwise discrete entropy balance of the entropy conservative or
/// viscosity-matched schemes: residual_j = d/dt S(U_j) +
/// (Qhat_{j+1/2} - Qhat_{j-1/2}) / dx with the numerical entropy flux
/// Qhat = mean(V).F* - mean(Psi) - mean(V).D*/2. Nonpositive residuals are
/// the discrete entropy inequality.
struct EntropyReport {
  std::vector<double> entropy_rate;           // per cell
  std::vector<double> numerical_entropy_flux; // per interface (n+1)
  std::vector<double> residual;               // per cell
  double max_positive_residual = 0.0;
};

/// Only SchemeKind::cnd and SchemeKind::ec_only are admitted; the Roe
/// scheme has no such entropy flux.
EntropyReport entropy_residual(const HyperbolicModel& model,
                               const SchemeConfig& scheme,
                               const StateField& field,
                               const BoundaryCondition& left,
                               const BoundaryCondition& right, double t);

/// Smallest jmp(V).D* over all interfaces: the sign that drives the
/// entropy inequality (nonnegative for dissipative viscosity matrices).
double min_interface_dissipation(const HyperbolicModel& model,
                                 const StateField& field,
                                 const BoundaryCondition& left,
                                 const BoundaryCondition& right, double t,
                                 double c_max);

/// Componentwise maximum of |change of discrete totals minus the time
/// integral of the boundary fluxes| over a completed run.
double conservation_defect(const RunTrace& trace);

/// Left-hand side of the boundary admissibility inequality
/// Q(trace) - Q(u_l) - <S_U(u_l), F(trace) - F(u_l)>; admissible traces
/// make it nonpositive.
double dlf_boundary_check(const HyperbolicModel& model, const Vec& trace,
                          const Vec& u_l);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// Discrete error norms of a field against a reference (exact function or
/// another field; fields on finer meshes are compared by nearest-cell
/// sampling). `component` restricts to one solution component, -1 sums
/// over all.
struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::optional<Window> window;
};

ErrorReport error_norms(const StateField& field,
                        const std::function<Vec(double)>& reference,
                        std::optional<Window> window = std::nullopt,
                        int component = -1);

ErrorReport error_norms(const StateField& field, const StateField& reference,
                        std::optional<Window> window = std::nullopt,
                        int component = -1);

}  // namespace vmfv
