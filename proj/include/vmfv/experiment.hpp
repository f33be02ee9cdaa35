#pragma once

#include <optional>
#include <string>

#include "vmfv/csv.hpp"
#include "vmfv/diagnostics.hpp"
#include "vmfv/euler.hpp"
#include "vmfv/linear_exact.hpp"
#include "vmfv/swlin.hpp"
#include "vmfv/viscous.hpp"

namespace vmfv {

enum class ModelKind { swlin, euler };
enum class InitKind { lswinit, eulinit, swsine, constant };
enum class BcKind { ldir, eulbd, open, constant };
enum class SolverKind { roe, cnd, cnd2, ec, viscous };
enum class EulerDiffusion { navier_stokes, laplacian };

/// Declarative run description parsed from the sectioned key = value
/// config format (sections model, problem, solver, output). Euler initial
/// and boundary values are primitive (rho, u, p); shallow water values
/// are (h, u).
struct ExperimentConfig {
  // [model]
  ModelKind model = ModelKind::swlin;
  SwViscosity viscosity = SwViscosity::eddy;  // swlin
  SwLinParams sw_params;                      // swlin
  double gamma = 1.4;                         // euler
  double nu = 1.0;                            // euler, viscous runs
  double kappa = 1.0;                         // euler, viscous runs

  // [problem]
  InitKind init = InitKind::lswinit;
  std::vector<double> init_value;  // init = constant
  BcKind left_bc = BcKind::ldir;
  std::vector<double> left_bc_value;  // left_bc = constant
  BcKind right_bc = BcKind::open;
  std::vector<double> right_bc_value;  // right_bc = constant
  double x_left = -1.0;
  double x_right = 1.0;
  double t_final = 0.0;

  // [solver]
  SolverKind solver = SolverKind::cnd;
  int n_cells = 0;
  double cfl = 0.45;
  double cfl_diff = 0.4;                       // viscous
  double epsilon = 0.0;                        // viscous
  EulerDiffusion diffusion = EulerDiffusion::navier_stokes;  // euler viscous

  // [output]
  std::string output_path;
  bool attach_exact = true;
  std::string reference_path;

  /// Canonical text form; parses back to an identical config.
  std::string to_text() const;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
};

/// Strict parser: unknown sections or keys are violations, all violations
/// are collected.
ParseResult parse_config(const std::string& text);
ParseResult parse_config_file(const std::string& path);

/// Pieces of a configured experiment, exposed so tests and the CLI can
/// drive the solver directly.
struct ExperimentSetup {
  std::shared_ptr<const HyperbolicModel> model;
  Grid grid;
  StateField initial;
  BoundaryCondition left;
  BoundaryCondition right;
  std::vector<std::string> component_names;
  /// Exact solution (model components) when the problem has one; empty
  /// otherwise. Throws when evaluated outside its validity window.
  std::function<Vec(double x, double t)> exact;
};

ExperimentSetup make_setup(const ExperimentConfig& config);

struct RunOutput {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // n_cells rows
  long steps = 0;
  double wall_seconds = 0.0;
  double conservation_defect_value = 0.0;
  std::optional<double> max_entropy_residual;  // cnd / ec solvers
  StateField final_state;

  CsvTable to_csv() const;  // wall time stays off the file for diffability
};

/// Runs the configured pipeline and, when configured, writes the CSV.
RunOutput run_experiment(const ExperimentConfig& config,
                         Exec exec = Exec::openmp,
                         const ProgressCallback& progress = {});

struct ConvergenceRow {
  int n_cells = 0;
  double l1 = 0.0;
  std::optional<double> rate;  // versus the previous mesh
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// L1 errors against the problem's exact solution (or the configured
/// reference CSV) over a list of nested meshes, with log2 rates between
/// consecutive meshes. Zero errors leave the rate undefined.
ConvergenceTable convergence_study(const ExperimentConfig& base,
                                   const std::vector<int>& meshes,
                                   Exec exec = Exec::openmp);

}  // namespace vmfv
