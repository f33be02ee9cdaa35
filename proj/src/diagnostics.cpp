#include "vmfv/diagnostics.hpp"

#include <cmath>
#include <sstream>

namespace vmfv {

EntropyReport entropy_residual(const HyperbolicModel& model,
                               const SchemeConfig& scheme,
                               const StateField& field,
                               const BoundaryCondition& left,
                               const BoundaryCondition& right, double t) {
  if (scheme.kind != SchemeKind::cnd && scheme.kind != SchemeKind::ec_only)
    throw std::invalid_argument(
        "entropy_residual: defined for the CND and entropy-conservative "
        "schemes only");

  const int n = field.grid.n_cells;
  const double dx = field.grid.dx;
  const RhsResult rhs =
      semidiscrete_rhs(model, scheme, field, left, right, t);
  const ExtendedState ext = apply_boundary(field, left, right, t, 1);

  EntropyReport report;
  report.entropy_rate.resize(n);
  report.numerical_entropy_flux.resize(n + 1);
  report.residual.resize(n);

  for (int i = 0; i <= n; ++i) {
    const Vec ul = ext.at(i - 1);
    const Vec ur = ext.at(i);
    const Vec v_mean = mean(model.entropy_vars(ul), model.entropy_vars(ur));
    const double psi_mean =
        0.5 * (model.entropy_potential(ul) + model.entropy_potential(ur));
    double qhat = v_mean.dot(model.ec_flux(ul, ur)) - psi_mean;
    if (scheme.kind == SchemeKind::cnd)
      qhat -= 0.5 * v_mean.dot(
                        model.cnd_interface_diffusion(ul, ur, rhs.c_max));
    report.numerical_entropy_flux[i] = qhat;
  }

  for (int j = 0; j < n; ++j) {
    const Vec v = model.entropy_vars(field.at(j));
    report.entropy_rate[j] = v.dot(rhs.rate.at(j));
    report.residual[j] = report.entropy_rate[j] +
                         (report.numerical_entropy_flux[j + 1] -
                          report.numerical_entropy_flux[j]) /
                             dx;
    report.max_positive_residual =
        std::max(report.max_positive_residual, report.residual[j]);
  }
  return report;
}

double min_interface_dissipation(const HyperbolicModel& model,
                                 const StateField& field,
                                 const BoundaryCondition& left,
                                 const BoundaryCondition& right, double t,
                                 double c_max) {
  const int n = field.grid.n_cells;
  const ExtendedState ext = apply_boundary(field, left, right, t, 1);
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const Vec ul = ext.at(i - 1);
    const Vec ur = ext.at(i);
    const Vec jmp_v = model.entropy_vars(ur) - model.entropy_vars(ul);
    lo = std::min(lo,
                  jmp_v.dot(model.cnd_interface_diffusion(ul, ur, c_max)));
  }
  return lo;
}

double conservation_defect(const RunTrace& trace) {
  double defect = 0.0;
  for (int c = 0; c < trace.mass_initial.size(); ++c) {
    const double change = trace.mass_final[c] - trace.mass_initial[c];
    const double flux = trace.flux_integral_left[c] -
                        trace.flux_integral_right[c];
    defect = std::max(defect, std::abs(change - flux));
  }
  return defect;
}

double dlf_boundary_check(const HyperbolicModel& model, const Vec& trace,
                          const Vec& u_l) {
  const Vec flux_jump = model.flux(trace) - model.flux(u_l);
  return model.entropy_flux(trace) - model.entropy_flux(u_l) -
         model.entropy_vars(u_l).dot(flux_jump);
}

namespace {

ErrorReport accumulate_norms(const StateField& field,
                             const std::function<Vec(int)>& reference_at,
                             std::optional<Window> window, int component) {
  const int n = field.grid.n_cells;
  const double dx = field.grid.dx;
  ErrorReport report;
  report.window = window;
  bool any = false;
  double sum1 = 0.0, sum2 = 0.0, sup = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = field.grid.centers[j];
    if (window && (x < window->lo || x > window->hi)) continue;
    any = true;
    const Vec delta = field.at(j) - reference_at(j);
    for (int c = 0; c < field.m; ++c) {
      if (component >= 0 && c != component) continue;
      const double d = std::abs(delta[c]);
      sum1 += d;
      sum2 += d * d;
      sup = std::max(sup, d);
    }
  }
  if (!any) throw std::invalid_argument("error_norms: empty window");
  report.l1 = sum1 * dx;
  report.l2 = std::sqrt(sum2 * dx);
  report.linf = sup;
  return report;
}

}  // namespace

ErrorReport error_norms(const StateField& field,
                        const std::function<Vec(double)>& reference,
                        std::optional<Window> window, int component) {
  return accumulate_norms(
      field, [&](int j) { return reference(field.grid.centers[j]); }, window,
      component);
}

ErrorReport error_norms(const StateField& field, const StateField& reference,
                        std::optional<Window> window, int component) {
  if (field.m != reference.m)
    throw std::invalid_argument("error_norms: component count mismatch");
  const Grid& rg = reference.grid;
  return accumulate_norms(
      field,
      [&](int j) {
        // Nearest reference cell to this cell center.
        const double x = field.grid.centers[j];
        int i = static_cast<int>(std::floor((x - rg.x_left) / rg.dx));
        i = std::max(0, std::min(rg.n_cells - 1, i));
        return reference.at(i);
      },
      window, component);
}

}  // namespace vmfv
