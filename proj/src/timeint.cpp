#include "vmfv/timeint.hpp"

#include <chrono>
#include <limits>
#include <sstream>

namespace vmfv {

namespace {

void check_finite(const StateField& f, const char* stage, long step) {
  if (!f.all_finite()) {
    std::ostringstream os;
    os << "time integration: non-finite state in " << stage << " at step "
       << step << ", t = " << f.time;
    throw std::runtime_error(os.str());
  }
}

StateField axpy(const StateField& u, const StateField& rate, double dt,
                Exec exec = Exec::openmp) {
  StateField r = u;
  const long n = static_cast<long>(r.data.size());
  const bool par = exec == Exec::openmp;
#pragma omp parallel for if (par) schedule(static)
  for (long i = 0; i < n; ++i) r.data[i] = u.data[i] + dt * rate.data[i];
  return r;
}

StateField average(const StateField& a, const StateField& b,
                   Exec exec = Exec::openmp) {
  StateField r = a;
  const long n = static_cast<long>(r.data.size());
  const bool par = exec == Exec::openmp;
#pragma omp parallel for if (par) schedule(static)
  for (long i = 0; i < n; ++i) r.data[i] = 0.5 * (a.data[i] + b.data[i]);
  return r;
}

}  // namespace

StateField ssprk2_step(const RhsOperator& rhs, const StateField& field,
                       double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ssprk2_step: dt must be > 0");
  const RhsResult r1 = rhs(field, field.time);
  StateField stage1 = axpy(field, r1.rate, dt);
  stage1.time = field.time + dt;
  check_finite(stage1, "first RK stage", -1);
  const RhsResult r2 = rhs(stage1, stage1.time);
  const StateField stage2 = axpy(stage1, r2.rate, dt);
  check_finite(stage2, "second RK stage", -1);
  StateField result = average(field, stage2);
  result.time = field.time + dt;
  return result;
}

RunResult integrate_ssprk2(
    const RhsOperator& rhs,
    const std::function<double(const RhsResult&)>& dt_of_rhs,
    StateField state, const TimeLoopConfig& loop,
    const ProgressCallback& progress, Exec exec) {
  if (!(loop.t_final >= state.time))
    throw std::invalid_argument("integrate_ssprk2: t_final before state time");

  const auto start = std::chrono::steady_clock::now();
  RunTrace trace;
  trace.mass_initial = state.total_mass();
  trace.flux_integral_left = Vec(state.m);
  trace.flux_integral_right = Vec(state.m);
  // 1e6 times the initial scale (unit floor, so zero data still has a
  // meaningful guard).
  const double blowup_norm = 1e6 * std::max(state.inf_norm(), 1.0);

  while (state.time < loop.t_final) {
    if (trace.steps >= loop.max_steps) {
      std::ostringstream os;
      os << "time integration: exceeded max_steps = " << loop.max_steps
         << " at t = " << state.time;
      throw std::runtime_error(os.str());
    }

    const RhsResult r1 = rhs(state, state.time);
    double dt = dt_of_rhs(r1);
    const double remaining = loop.t_final - state.time;
    const bool last = !(dt > 0.0) || dt >= remaining;
    if (last) dt = remaining;

    StateField stage1 = axpy(state, r1.rate, dt, exec);
    stage1.time = state.time + dt;
    check_finite(stage1, "first RK stage", trace.steps);
    const RhsResult r2 = rhs(stage1, stage1.time);
    const StateField stage2 = axpy(stage1, r2.rate, dt, exec);
    check_finite(stage2, "second RK stage", trace.steps);

    StateField next = average(state, stage2, exec);
    next.time = last ? loop.t_final : state.time + dt;
    state = std::move(next);

    // Same stage weights as the state update.
    trace.flux_integral_left +=
        0.5 * dt * (r1.flux_left + r2.flux_left);
    trace.flux_integral_right +=
        0.5 * dt * (r1.flux_right + r2.flux_right);
    ++trace.steps;

    if (state.inf_norm() > blowup_norm) {
      std::ostringstream os;
      os << "time integration: instability detected at step " << trace.steps
         << ", t = " << state.time << " (norm grew past 1e6x initial)";
      throw std::runtime_error(os.str());
    }
    if (progress) progress(trace.steps, state.time, dt);
  }

  trace.mass_final = state.total_mass();
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return RunResult{std::move(state), std::move(trace)};
}

RunResult run_to_time(const HyperbolicModel& model, const SchemeConfig& scheme,
                      const StateField& initial, const BoundaryCondition& left,
                      const BoundaryCondition& right,
                      const TimeLoopConfig& loop,
                      const ProgressCallback& progress, Exec exec) {
  if (!(scheme.cfl > 0.0 && scheme.cfl < 1.0))
    throw std::invalid_argument("run_to_time: cfl must lie in (0, 1)");
  const double dx = initial.grid.dx;
  const RhsOperator rhs = [&](const StateField& f, double t) {
    return semidiscrete_rhs(model, scheme, f, left, right, t, exec);
  };
  const auto dt_select = [&](const RhsResult& r) {
    return r.c_max > 0.0 ? scheme.cfl * dx / r.c_max
                         : std::numeric_limits<double>::infinity();
  };
  return integrate_ssprk2(rhs, dt_select, initial, loop, progress, exec);
}

}  // namespace vmfv
