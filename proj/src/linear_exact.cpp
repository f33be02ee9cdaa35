#include "vmfv/linear_exact.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <cmath>
#include <sstream>

#include "vmfv/swlin.hpp"

namespace vmfv {

namespace {

constexpr double kStableRealPartTol = -1e-10;

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
  return e;
}

Vec from_eigen(const Eigen::VectorXd& v) {
  Vec r(static_cast<int>(v.size()));
  for (int i = 0; i < v.size(); ++i) r[i] = v(i);
  return r;
}

Vec normalize_direction(Vec v) {
  int imax = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] == 0.0)
    throw std::runtime_error("boundary_layer_basis: zero basis vector");
  return v * (1.0 / v[imax]);
}

/// Solves M alpha = rhs, rejecting near-singular M with a condition
/// estimate in the message.
Vec solve_with_condition_check(const Eigen::MatrixXd& m,
                               const Eigen::VectorXd& rhs, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m.cols() - 1);
  if (!(smin > smax * 1e-13)) {
    std::ostringstream os;
    os << what << ": near-singular basis matrix, condition estimate "
       << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());
    throw std::runtime_error(os.str());
  }
  return from_eigen(svd.solve(rhs));
}

int select_stable(const double* re, const double*) {
  return *re < kStableRealPartTol ? 1 : 0;
}

/// Orthonormal basis of the invariant subspace of `m` for eigenvalues with
/// real part < -1e-10: real Schur form with the stable eigenvalues
/// clustered into the leading block.
std::vector<Vec> stable_subspace(const Eigen::MatrixXd& m) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  // LAPACK expects column-major storage.
  std::vector<double> a(n * n);
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = 0; i < n; ++i) a[j * n + i] = m(i, j);
  std::vector<double> wr(n), wi(n), vs(n * n);
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'S', select_stable, n, a.data(), n,
                    &sdim, wr.data(), wi.data(), vs.data(), n);
  if (info != 0) {
    std::ostringstream os;
    os << "stable_subspace: Schur factorization failed (info " << info << ")";
    throw std::runtime_error(os.str());
  }
  std::vector<Vec> basis;
  basis.reserve(sdim);
  for (lapack_int c = 0; c < sdim; ++c) {
    Vec v(static_cast<int>(n));
    for (lapack_int i = 0; i < n; ++i) v[i] = vs[c * n + i];
    basis.push_back(normalize_direction(v));
  }
  return basis;
}

/// Size of the leading zero block of B: largest p with rows 0..p-1 and
/// columns 0..p-1 identically zero.
int leading_zero_block(const Mat& b) {
  const int m = b.size();
  int p = 0;
  while (p < m) {
    bool zero = true;
    for (int j = 0; j < m && zero; ++j)
      if (b(p, j) != 0.0 || b(j, p) != 0.0) zero = false;
    if (!zero) break;
    ++p;
  }
  return p;
}

bool is_invertible(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return true;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  return lu.isInvertible();
}

}  // namespace

SimilaritySolution solve_linear_riemann(const LinearSystem& sys,
                                        const Vec& u_minus, const Vec& u_plus,
                                        double origin_x) {
  const int m = sys.a.size();
  if (u_minus.size() != m || u_plus.size() != m)
    throw std::invalid_argument("solve_linear_riemann: dimension mismatch");
  const Eigensystem es = eigen_decompose(sys.a);

  const Eigen::MatrixXd r = to_eigen(es.right_vectors);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs(i) = u_plus[i] - u_minus[i];
  const Vec alphas =
      solve_with_condition_check(r, rhs, "solve_linear_riemann");

  SimilaritySolution sol;
  sol.origin_x = origin_x;
  sol.alphas = alphas;
  sol.trace = u_minus;
  sol.states.push_back(u_minus);
  for (int i = 0; i < m; ++i) {
    sol.speeds.push_back(es.lambdas[i]);
    sol.states.push_back(sol.states.back() +
                         alphas[i] * es.right_vectors.col(i));
  }
  return sol;
}

BoundaryLayerBasis boundary_layer_basis(const LinearSystem& sys) {
  const int m = sys.a.size();
  const Eigensystem es = eigen_decompose(sys.a);
  check_noncharacteristic(es);

  BoundaryLayerBasis basis;
  basis.k = es.k_negative;

  if (sys.b.is_identity()) {
    for (int i = 0; i < basis.k; ++i)
      basis.vectors.push_back(es.right_vectors.col(i));
    return basis;
  }

  const Eigen::MatrixXd b = to_eigen(sys.b);
  if (is_invertible(b)) {
    basis.vectors = stable_subspace(b.fullPivLu().solve(to_eigen(sys.a)));
  } else {
    // Singular B: the layer ODE B W' = A (W - trace) is algebraic in the
    // components hit by the zero rows. With Z = W - trace partitioned into
    // (Z1, Z2) along the leading zero block of size p,
    //     0      = A11 Z1 + A12 Z2,
    //     B22 Z2' = A21 Z1 + A22 Z2,
    // so Z1 = -A11^-1 A12 Z2 and Z2 obeys the reduced ODE with matrix
    // B22^-1 (A22 - A21 A11^-1 A12).
    const int p = leading_zero_block(sys.b);
    if (p == 0)
      throw std::runtime_error(
          "boundary_layer_basis: unsupported singular viscosity matrix "
          "(no leading zero block)");
    const Eigen::MatrixXd a = to_eigen(sys.a);
    const Eigen::MatrixXd a11 = a.topLeftCorner(p, p);
    const Eigen::MatrixXd a12 = a.topRightCorner(p, m - p);
    const Eigen::MatrixXd a21 = a.bottomLeftCorner(m - p, p);
    const Eigen::MatrixXd a22 = a.bottomRightCorner(m - p, m - p);
    const Eigen::MatrixXd b22 = b.bottomRightCorner(m - p, m - p);
    if (!is_invertible(a11))
      throw std::runtime_error(
          "boundary_layer_basis: unsupported singular viscosity matrix "
          "(algebraic constraints are not solvable: A11 singular)");
    if (!is_invertible(b22))
      throw std::runtime_error(
          "boundary_layer_basis: unsupported singular viscosity matrix "
          "(trailing block singular)");
    const Eigen::MatrixXd lift = -a11.fullPivLu().solve(a12);
    const Eigen::MatrixXd reduced =
        b22.fullPivLu().solve(a22 + a21 * lift);
    for (const Vec& z2 : stable_subspace(reduced)) {
      Eigen::VectorXd z2e(m - p);
      for (int i = 0; i < m - p; ++i) z2e(i) = z2[i];
      const Eigen::VectorXd z1e = lift * z2e;
      Vec full(m);
      for (int i = 0; i < p; ++i) full[i] = z1e(i);
      for (int i = 0; i < m - p; ++i) full[p + i] = z2e(i);
      basis.vectors.push_back(normalize_direction(full));
    }
  }

  if (static_cast<int>(basis.vectors.size()) != basis.k) {
    std::ostringstream os;
    os << "boundary_layer_basis: admissible-jump space has dimension "
       << basis.vectors.size() << " but A has " << basis.k
       << " negative eigenvalues (boundary value problem is not well posed "
       << "for this viscosity matrix)";
    throw std::runtime_error(os.str());
  }
  return basis;
}

SimilaritySolution solve_boundary_riemann(const LinearSystem& sys,
                                          const Vec& u_l, const Vec& u_0,
                                          double x_boundary) {
  const int m = sys.a.size();
  if (u_l.size() != m || u_0.size() != m)
    throw std::invalid_argument("solve_boundary_riemann: dimension mismatch");
  const Eigensystem es = eigen_decompose(sys.a);
  const BoundaryLayerBasis layer = boundary_layer_basis(sys);
  const int k = layer.k;

  // Combined basis {R~_1..R~_k, R_{k+1}..R_m}; singularity here would
  // contradict the full-rank property of the admissible directions.
  Eigen::MatrixXd basis(m, m);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < m; ++i) basis(i, c) = layer.vectors[c][i];
  for (int c = k; c < m; ++c)
    for (int i = 0; i < m; ++i) basis(i, c) = es.right_vectors(i, c);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs(i) = u_0[i] - u_l[i];
  const Vec alphas =
      solve_with_condition_check(basis, rhs, "solve_boundary_riemann");

  SimilaritySolution sol;
  sol.origin_x = x_boundary;
  sol.alphas = alphas;
  Vec trace = u_l;
  for (int i = 0; i < k; ++i) trace += alphas[i] * layer.vectors[i];
  sol.trace = trace;
  sol.states.push_back(trace);
  for (int i = k; i < m; ++i) {
    sol.speeds.push_back(es.lambdas[i]);
    sol.states.push_back(sol.states.back() +
                         alphas[i] * es.right_vectors.col(i));
  }
  return sol;
}

Vec eval_similarity(const SimilaritySolution& sol, double x, double t) {
  if (t < 0.0)
    throw std::invalid_argument("eval_similarity: negative time");
  if (t == 0.0)
    return x < sol.origin_x ? sol.states.front() : sol.states.back();
  const double xi = (x - sol.origin_x) / t;
  size_t i = 0;
  while (i < sol.speeds.size() && sol.speeds[i] <= xi) ++i;
  return sol.states[i];
}

Vec exact_sw_solution(SwViscosity viscosity, double x, double t) {
  if (t < 0.0 || x < -1.0)
    throw std::invalid_argument("exact_sw_solution: outside domain");
  const double sqrt2 = std::sqrt(2.0);
  const double interaction_time = 1.0 / (2.0 * sqrt2);
  if (t >= interaction_time) {
    std::ostringstream os;
    os << "exact_sw_solution: t = " << t
       << " is past the fan interaction time " << interaction_time;
    throw std::invalid_argument(os.str());
  }

  struct FanPair {
    SimilaritySolution interior;
    SimilaritySolution boundary;
  };
  static const auto make_fans = [](SwViscosity kind) {
    const SwLinParams params{};  // paper values: h~ = 2, u~ = 1, g = 1
    const LinearSystem sys{sw_matrix(params), sw_viscosity(kind)};
    const Vec u_left{3.0, 1.0};
    const Vec u_right{1.0, 1.0};
    const Vec u_dirichlet{2.0, 1.0};
    return FanPair{solve_linear_riemann(sys, u_left, u_right, 0.0),
                   solve_boundary_riemann(sys, u_dirichlet, u_left, -1.0)};
  };
  static const FanPair laplacian_fans = make_fans(SwViscosity::laplacian);
  static const FanPair eddy_fans = make_fans(SwViscosity::eddy);
  const FanPair& fans =
      viscosity == SwViscosity::laplacian ? laplacian_fans : eddy_fans;

  // Interior fan from x = 0 takes over right of its slowest wave; the
  // boundary fan from x = -1 covers everything left of it.
  const double lambda1 = 1.0 - sqrt2;
  if (x >= lambda1 * t) return eval_similarity(fans.interior, x, t);
  return eval_similarity(fans.boundary, x, t);
}

}  // namespace vmfv
