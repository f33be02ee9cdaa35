#include "vmfv/swlin.hpp"

#include <stdexcept>

#include "vmfv/linear_exact.hpp"

namespace vmfv {

namespace {

void validate(const SwLinParams& p) {
  if (!(p.h_tilde > 0.0) || !(p.g > 0.0))
    throw std::invalid_argument("SwLinParams: need h_tilde > 0 and g > 0");
}

Mat sw_symmetrizer(const SwLinParams& p) {
  Mat s(2);
  s(0, 0) = p.g;
  s(1, 1) = p.h_tilde;
  return s;
}

}  // namespace

Mat sw_matrix(const SwLinParams& params) {
  validate(params);
  Mat a(2);
  a(0, 0) = params.u_tilde;
  a(0, 1) = params.h_tilde;
  a(1, 0) = params.g;
  a(1, 1) = params.u_tilde;
  return a;
}

Mat sw_viscosity(SwViscosity kind) {
  Mat b(2);
  if (kind == SwViscosity::laplacian) {
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
  } else {
    b(1, 1) = 1.0;  // eddy viscosity acts on the velocity equation only
  }
  return b;
}

EntropyPair sw_entropy_pair(const SwLinParams& params, const Vec& u) {
  validate(params);
  if (u.size() != 2)
    throw std::invalid_argument("sw_entropy_pair: state must be 2d");
  const Mat s = sw_symmetrizer(params);
  const Mat sa = s * sw_matrix(params);
  EntropyPair pair;
  pair.s = 0.5 * u.dot(s * u);
  pair.q = 0.5 * u.dot(sa * u);
  pair.v = s * u;
  pair.psi = pair.q;  // V.AU - Q = U.(SA)U - Q = Q for symmetric SA
  return pair;
}

Vec sw_ec_flux(const Mat& a, const Vec& u_j, const Vec& u_j1) {
  return a * mean(u_j, u_j1);
}

std::shared_ptr<LinearModel> make_swlin_model(const SwLinParams& params,
                                              SwViscosity kind) {
  return std::make_shared<LinearModel>(sw_matrix(params), sw_viscosity(kind),
                                       sw_symmetrizer(params));
}

}  // namespace vmfv
