#include "vmfv/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace vmfv {

void check_noncharacteristic(const Eigensystem& es, double gap_tol) {
  for (int i = 0; i < es.lambdas.size(); ++i) {
    if (std::abs(es.lambdas[i]) <= gap_tol) {
      std::ostringstream os;
      os << "characteristic boundary: eigenvalue " << es.lambdas[i]
         << " is not bounded away from zero (tol " << gap_tol << ")";
      throw std::runtime_error(os.str());
    }
  }
}

double HyperbolicModel::entropy_potential(const Vec& u) const {
  return entropy_vars(u).dot(flux(u)) - entropy_flux(u);
}

Vec HyperbolicModel::cnd_interface_diffusion(const Vec& ul, const Vec& ur,
                                             double c_max) const {
  return c_max * (viscosity_matrix(mean(ul, ur)) * jump(ul, ur));
}

double HyperbolicModel::max_abs_eigenvalue(const Vec& u) const {
  const Eigensystem es = jacobian_eigen(u);
  const int m = es.lambdas.size();
  return std::max(std::abs(es.lambdas[0]), std::abs(es.lambdas[m - 1]));
}

namespace {

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
  return e;
}

// Scale so the entry of largest magnitude becomes +1.
Vec normalize_direction(Vec v) {
  int imax = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] == 0.0)
    throw std::runtime_error("eigen_decompose: zero eigenvector");
  return v * (1.0 / v[imax]);
}

}  // namespace

Eigensystem eigen_decompose(const Mat& a) {
  const int m = a.size();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_decompose: eigensolver failed");

  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const double scale = std::max(1.0, to_eigen(a).cwiseAbs().maxCoeff());
  for (int i = 0; i < m; ++i) {
    if (std::abs(vals(i).imag()) > 1e-12 * scale) {
      std::ostringstream os;
      os << "eigen_decompose: complex eigenvalue " << vals(i).real() << "+"
         << vals(i).imag() << "i (system is not hyperbolic)";
      throw std::runtime_error(os.str());
    }
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return vals(i).real() < vals(j).real();
  });

  Eigensystem es;
  es.lambdas = Vec(m);
  es.right_vectors = Mat(m);
  for (int i = 0; i < m; ++i) {
    es.lambdas[i] = vals(order[i]).real();
    Vec r(m);
    for (int j = 0; j < m; ++j) r[j] = vecs(j, order[i]).real();
    es.right_vectors.set_col(i, normalize_direction(r));
    if (es.lambdas[i] < 0.0) ++es.k_negative;
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (!(es.lambdas[i] < es.lambdas[i + 1])) {
      std::ostringstream os;
      os << "eigen_decompose: eigenvalues " << es.lambdas[i] << ", "
         << es.lambdas[i + 1] << " are not distinct (strict hyperbolicity "
         << "fails)";
      throw std::runtime_error(os.str());
    }
  }
  return es;
}

LinearModel::LinearModel(Mat a, Mat b, Mat symmetrizer)
    : a_(a), b_(b), symmetrizer_(symmetrizer), sa_(symmetrizer * a) {
  const int m = a.size();
  if (b.size() != m || symmetrizer.size() != m)
    throw std::invalid_argument("LinearModel: dimension mismatch");

  const double scale = std::max(1.0, sa_.inf_norm());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(sa_(i, j) - sa_(j, i)) > 1e-12 * scale)
        throw std::invalid_argument(
            "LinearModel: symmetrizer does not symmetrize A");
      if (std::abs(symmetrizer_(i, j) - symmetrizer_(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("LinearModel: symmetrizer not symmetric");
    }

  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(symmetrizer_));
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "LinearModel: symmetrizer is not positive definite");

  eigen_ = eigen_decompose(a_);
  spectral_radius_ = std::max(std::abs(eigen_.lambdas[0]),
                              std::abs(eigen_.lambdas[m - 1]));
}

}  // namespace vmfv
