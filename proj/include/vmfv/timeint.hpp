#pragma once

#include <functional>

#include "vmfv/schemes.hpp"

namespace vmfv {

struct TimeLoopConfig {
  double t_final = 0.0;
  double cfl = 0.45;
  long max_steps = 50'000'000;
};

/// Semi-discrete right-hand side as a function of (state, time).
using RhsOperator = std::function<RhsResult(const StateField&, double)>;

/// Invoked once per accepted time step.
using ProgressCallback = std::function<void(long step, double t, double dt)>;

/// One SSP-RK2 step: U* = U + dt L(U), U** = U* + dt L(U*),
/// U^{n+1} = (U + U**)/2. Time advances by dt. Non-finite stage states
/// abort with a diagnostic.
StateField ssprk2_step(const RhsOperator& rhs, const StateField& field,
                       double dt);

/// Conservation bookkeeping accumulated over a run: the time integral of
/// the boundary-interface fluxes uses the same RK2 stage weights as the
/// state update, so the discrete totals satisfy
/// mass_final - mass_initial = flux_integral_left - flux_integral_right
/// up to roundoff.
struct RunTrace {
  long steps = 0;
  double wall_seconds = 0.0;
  Vec mass_initial;
  Vec mass_final;
  Vec flux_integral_left;
  Vec flux_integral_right;
};

struct RunResult {
  StateField state;
  RunTrace trace;
};

/// Generic SSP-RK2 time loop: dt = dt_of_rhs(result at t^n), clipped to
/// land exactly on t_final. Guards against exceeding max_steps and against
/// blowup (state norm above 1e6 times the initial norm).
RunResult integrate_ssprk2(const RhsOperator& rhs,
                           const std::function<double(const RhsResult&)>& dt_of_rhs,
                           StateField state, const TimeLoopConfig& loop,
                           const ProgressCallback& progress = {},
                           Exec exec = Exec::openmp);

/// Runs a hyperbolic scheme to loop.t_final with dt = cfl dx / c_max.
RunResult run_to_time(const HyperbolicModel& model, const SchemeConfig& scheme,
                      const StateField& initial, const BoundaryCondition& left,
                      const BoundaryCondition& right,
                      const TimeLoopConfig& loop,
                      const ProgressCallback& progress = {},
                      Exec exec = Exec::openmp);

}  // namespace vmfv
