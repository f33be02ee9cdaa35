#pragma once

#include <functional>
#include <vector>

#include "vmfv/model.hpp"
#include "vmfv/vec.hpp"

namespace vmfv {

/// Uniform 1D grid: interfaces x_{j+1/2} = x_left + j dx, cell centers at
/// the interface midpoints.
struct Grid {
  double x_left = 0.0;
  double x_right = 0.0;
  int n_cells = 0;
  double dx = 0.0;
  std::vector<double> interfaces;  // n_cells + 1
  std::vector<double> centers;     // n_cells
};

Grid make_grid(double x_left, double x_right, int n_cells);

/// Cell-averaged solution on a grid at one time instant. Row j holds the
/// m components of cell j.
struct StateField {
  Grid grid;
  int m = 0;
  std::vector<double> data;  // n_cells * m, row-major
  double time = 0.0;

  double* row(int j) { return data.data() + static_cast<size_t>(j) * m; }
  const double* row(int j) const {
    return data.data() + static_cast<size_t>(j) * m;
  }
  Vec at(int j) const {
    Vec v(m);
    const double* r = row(j);
    for (int c = 0; c < m; ++c) v[c] = r[c];
    return v;
  }
  void set(int j, const Vec& v) {
    double* r = row(j);
    for (int c = 0; c < m; ++c) r[c] = v[c];
  }
  bool all_finite() const;
  double inf_norm() const;
  /// Componentwise sum of U_j * dx (the discrete conserved totals).
  Vec total_mass() const;
};

/// Samples the initial-data function at cell centers; time set to 0.
StateField init_field(const HyperbolicModel& model, const Grid& grid,
                      const std::function<Vec(double)>& init);

/// Dirichlet data (possibly time dependent) or an open boundary realized
/// by zero-order extrapolation of the adjacent interior cell.
class BoundaryCondition {
public:
  static BoundaryCondition dirichlet(Vec value);
  static BoundaryCondition dirichlet(std::function<Vec(double)> value);
  static BoundaryCondition open();

  bool is_dirichlet() const { return static_cast<bool>(value_); }
  Vec value(double t) const { return value_(t); }

private:
  std::function<Vec(double)> value_;  // empty for open boundaries
};

/// Interior cells plus `n_ghost` ghost rows on each side. Row index runs
/// over -n_ghost .. n_cells+n_ghost-1; interior data is copied bit-exactly.
struct ExtendedState {
  int n_ghost = 0;
  int n_cells = 0;
  int m = 0;
  std::vector<double> data;

  const double* row(int j) const {
    return data.data() + static_cast<size_t>(j + n_ghost) * m;
  }
  double* row(int j) {
    return data.data() + static_cast<size_t>(j + n_ghost) * m;
  }
  Vec at(int j) const {
    Vec v(m);
    const double* r = row(j);
    for (int c = 0; c < m; ++c) v[c] = r[c];
    return v;
  }
  void set(int j, const Vec& v) {
    double* r = row(j);
    for (int c = 0; c < m; ++c) r[c] = v[c];
  }
};

/// Fills ghost cells: Dirichlet ghosts take the boundary datum U_l(t),
/// open ghosts copy the adjacent interior cell.
ExtendedState apply_boundary(const StateField& field,
                             const BoundaryCondition& left,
                             const BoundaryCondition& right, double t,
                             int n_ghost = 1);

/// Largest Jacobian spectral radius over all cells.
double max_wave_speed(const HyperbolicModel& model, const StateField& field);

}  // namespace vmfv
