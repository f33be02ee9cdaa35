#pragma once

#include <memory>

#include "vmfv/model.hpp"

namespace vmfv {

enum class SwViscosity;  // defined in linear_exact.hpp

/// Background state and gravity of the linearized shallow water system
/// h_t + u~ h_x + h~ u_x = 0, u_t + g h_x + u~ u_x = 0.
struct SwLinParams {
  double h_tilde = 2.0;
  double u_tilde = 1.0;
  double g = 1.0;
};

Mat sw_matrix(const SwLinParams& params);
Mat sw_viscosity(SwViscosity kind);

struct EntropyPair {
  double s;    // entropy
  double q;    // entropy flux
  Vec v;       // entropy variables S_U
  double psi;  // entropy potential V.F - Q
};

/// Quadratic energy pair with symmetrizer diag(g, h~): S = (g h^2 + h~ u^2)/2.
EntropyPair sw_entropy_pair(const SwLinParams& params, const Vec& u);

/// Entropy conservative flux of a symmetrizable linear system: A times the
/// arithmetic mean. Exact for the shallow water energy above.
Vec sw_ec_flux(const Mat& a, const Vec& u_j, const Vec& u_j1);

/// The linearized shallow water system as a HyperbolicModel.
std::shared_ptr<LinearModel> make_swlin_model(const SwLinParams& params,
                                              SwViscosity kind);

}  // namespace vmfv
