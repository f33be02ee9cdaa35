#include "vmfv/core.hpp"

#include <sstream>
#include <utility>

namespace vmfv {

Grid make_grid(double x_left, double x_right, int n_cells) {
  if (!(x_left < x_right)) {
    std::ostringstream os;
    os << "make_grid: degenerate domain [" << x_left << ", " << x_right << "]";
    throw std::invalid_argument(os.str());
  }
  if (n_cells < 1)
    throw std::invalid_argument("make_grid: n_cells must be >= 1");

  Grid g;
  g.x_left = x_left;
  g.x_right = x_right;
  g.n_cells = n_cells;
  g.dx = (x_right - x_left) / n_cells;
  g.interfaces.resize(n_cells + 1);
  g.centers.resize(n_cells);
  for (int j = 0; j <= n_cells; ++j) g.interfaces[j] = x_left + j * g.dx;
  for (int j = 0; j < n_cells; ++j)
    g.centers[j] = 0.5 * (g.interfaces[j] + g.interfaces[j + 1]);
  return g;
}

bool StateField::all_finite() const {
  for (double x : data)
    if (!std::isfinite(x)) return false;
  return true;
}

double StateField::inf_norm() const {
  double r = 0.0;
  for (double x : data) r = std::max(r, std::abs(x));
  return r;
}

Vec StateField::total_mass() const {
  Vec total(m);
  for (int j = 0; j < grid.n_cells; ++j) {
    const double* r = row(j);
    for (int c = 0; c < m; ++c) total[c] += r[c];
  }
  return total * grid.dx;
}

StateField init_field(const HyperbolicModel& model, const Grid& grid,
                      const std::function<Vec(double)>& init) {
  StateField f;
  f.grid = grid;
  f.m = model.dim();
  f.time = 0.0;
  f.data.resize(static_cast<size_t>(grid.n_cells) * f.m);
  for (int j = 0; j < grid.n_cells; ++j) {
    const Vec u = init(grid.centers[j]);
    if (u.size() != f.m)
      throw std::invalid_argument("init_field: wrong state dimension");
    if (!u.all_finite()) {
      std::ostringstream os;
      os << "init_field: non-finite value at x = " << grid.centers[j];
      throw std::invalid_argument(os.str());
    }
    f.set(j, u);
  }
  return f;
}

BoundaryCondition BoundaryCondition::dirichlet(Vec value) {
  BoundaryCondition bc;
  bc.value_ = [value](double) { return value; };
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet(
    std::function<Vec(double)> value) {
  BoundaryCondition bc;
  bc.value_ = std::move(value);
  return bc;
}

BoundaryCondition BoundaryCondition::open() { return BoundaryCondition{}; }

ExtendedState apply_boundary(const StateField& field,
                             const BoundaryCondition& left,
                             const BoundaryCondition& right, double t,
                             int n_ghost) {
  const int n = field.grid.n_cells;
  const int m = field.m;
  ExtendedState ext;
  ext.n_ghost = n_ghost;
  ext.n_cells = n;
  ext.m = m;
  ext.data.resize(static_cast<size_t>(n + 2 * n_ghost) * m);

  std::copy(field.data.begin(), field.data.end(), ext.data.begin() + static_cast<size_t>(n_ghost) * m);

  const Vec left_value = left.is_dirichlet() ? left.value(t) : field.at(0);
  const Vec right_value =
      right.is_dirichlet() ? right.value(t) : field.at(n - 1);
  if (left_value.size() != m || right_value.size() != m)
    throw std::invalid_argument("apply_boundary: wrong boundary dimension");
  for (int gcell = 1; gcell <= n_ghost; ++gcell) {
    ext.set(-gcell, left_value);
    ext.set(n - 1 + gcell, right_value);
  }
  return ext;
}

double max_wave_speed(const HyperbolicModel& model, const StateField& field) {
  double c = 0.0;
  for (int j = 0; j < field.grid.n_cells; ++j)
    c = std::max(c, model.max_abs_eigenvalue(field.at(j)));
  return c;
}

}  // namespace vmfv
