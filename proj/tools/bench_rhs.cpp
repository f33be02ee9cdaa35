// Timing harness for the right-hand-side kernels: serial reference path
// against the OpenMP path, for each scheme and for the viscous solver.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <random>

#include "vmfv/euler.hpp"
#include "vmfv/linear_exact.hpp"
#include "vmfv/swlin.hpp"
#include "vmfv/viscous.hpp"

using namespace vmfv;

namespace {

double time_call(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

StateField random_field(const HyperbolicModel& model, int n, unsigned seed) {
  const Grid grid = make_grid(-1.0, 1.0, n);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> bump(-0.2, 0.2);
  StateField f;
  f.grid = grid;
  f.m = model.dim();
  f.data.resize(static_cast<size_t>(n) * f.m);
  for (int j = 0; j < n; ++j) {
    Vec u(f.m);
    if (f.m == 2) {
      u = Vec{2.0 + bump(rng), 1.0 + bump(rng)};
    } else {
      u = euler_prim_to_cons({2.0 + bump(rng), 1.0 + bump(rng),
                              2.0 + bump(rng)}, 1.4);
    }
    f.set(j, u);
  }
  return f;
}

void bench_scheme(const char* label, const HyperbolicModel& model,
                  SchemeKind kind, const StateField& field,
                  const BoundaryCondition& left, const BoundaryCondition& right,
                  int reps) {
  SchemeConfig scheme;
  scheme.kind = kind;
  const auto run = [&](Exec exec) {
    return time_call(
        [&] { semidiscrete_rhs(model, scheme, field, left, right, 0.0, exec); },
        reps);
  };
  const double serial_ms = run(Exec::serial);
  const double openmp_ms = run(Exec::openmp);
  std::printf("%-22s n=%-7d serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
              label, field.grid.n_cells, serial_ms, openmp_ms,
              serial_ms / openmp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 200000;
  int reps = argc > 2 ? std::atoi(argv[2]) : 20;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths are serial\n");
#endif

  const auto sw = make_swlin_model(SwLinParams{}, SwViscosity::eddy);
  const auto euler = std::make_shared<EulerModel>(1.4);
  const StateField sw_field = random_field(*sw, n, 1);
  const StateField eu_field = random_field(*euler, n, 2);
  const auto sw_left = BoundaryCondition::dirichlet(Vec{2.0, 1.0});
  const auto eu_left =
      BoundaryCondition::dirichlet(euler_prim_to_cons({2.0, 1.0, 2.0}, 1.4));
  const auto open = BoundaryCondition::open();

  bench_scheme("swlin roe", *sw, SchemeKind::roe, sw_field, sw_left, open, reps);
  bench_scheme("swlin cnd", *sw, SchemeKind::cnd, sw_field, sw_left, open, reps);
  bench_scheme("swlin cnd2", *sw, SchemeKind::cnd2, sw_field, sw_left, open, reps);
  bench_scheme("euler roe", *euler, SchemeKind::roe, eu_field, eu_left, open, reps);
  bench_scheme("euler cnd", *euler, SchemeKind::cnd, eu_field, eu_left, open, reps);
  bench_scheme("euler cnd2", *euler, SchemeKind::cnd2, eu_field, eu_left, open, reps);

  ViscousSpec ns;
  ns.base_model = euler;
  ns.epsilon = 1e-4;
  ns.kind = DiffusionKind::euler_navier_stokes;
  const auto run_visc = [&](Exec exec) {
    return time_call(
        [&] { viscous_rhs(ns, eu_field, eu_left, open, 0.0, exec); }, reps);
  };
  const double serial_ms = run_visc(Exec::serial);
  const double openmp_ms = run_visc(Exec::openmp);
  std::printf("%-22s n=%-7d serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
              "euler navier-stokes", n, serial_ms, openmp_ms,
              serial_ms / openmp_ms);
  return 0;
}
