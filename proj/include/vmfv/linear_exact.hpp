#pragma once

#include <vector>

#include "vmfv/model.hpp"
#include "vmfv/vec.hpp"

namespace vmfv {

/// Constant-coefficient mixed hyperbolic-parabolic system
/// U_t + A U_x = eps B U_xx. B may be singular (see boundary_layer_basis).
struct LinearSystem {
  Mat a;
  Mat b;
};

/// Self-similar fan of constant states separated by wave speeds. For a
/// boundary Riemann problem, `trace` is the leftmost state (the boundary
/// trace, generally different from the Dirichlet datum) and the fan holds
/// only the outgoing waves.
struct SimilaritySolution {
  double origin_x = 0.0;
  std::vector<Vec> states;     // speeds.size() + 1 states, left to right
  std::vector<double> speeds;  // strictly increasing
  Vec alphas;                  // wave strengths of the defining linear system
  Vec trace;                   // leftmost state
};

/// Directions R~_1..R~_k spanning the admissible boundary jumps
/// (U_l - trace) of the viscous boundary layer.
struct BoundaryLayerBasis {
  std::vector<Vec> vectors;
  int k = 0;  // number of negative eigenvalues of A
};

/// Solves U_t + A U_x = 0 with data (u_minus | u_plus): decomposes the
/// jump along the eigenvectors and builds the fan of m waves.
SimilaritySolution solve_linear_riemann(const LinearSystem& sys,
                                        const Vec& u_minus, const Vec& u_plus,
                                        double origin_x = 0.0);

/// Admissible boundary-jump directions for the vanishing-viscosity limit.
///
/// Three cases, all requiring A non-characteristic:
///  - B = identity: the eigenvectors R_1..R_k of A.
///  - B invertible: a basis of the stable invariant subspace of B^-1 A
///    (real Schur form, eigenvalues with real part below -1e-10 clustered
///    to the leading block).
///  - B singular with a leading zero block (rows and columns 0..p-1 zero,
///    trailing block invertible): the layer ODE B W' = A (W - trace)
///    splits into algebraic constraints from the zero rows plus a reduced
///    ODE in the remaining components; the basis is the stable space of
///    the reduced ODE lifted through the constraints.
/// Any other singular structure is rejected.
BoundaryLayerBasis boundary_layer_basis(const LinearSystem& sys);

/// Solves the boundary Riemann problem for U_t + A U_x = eps B U_xx in the
/// limit eps -> 0+: Dirichlet datum u_l at the boundary, constant initial
/// state u_0. The fan carries the m-k outgoing waves; the trace is
/// u_l + sum_{i<=k} alpha_i R~_i.
SimilaritySolution solve_boundary_riemann(const LinearSystem& sys,
                                          const Vec& u_l, const Vec& u_0,
                                          double x_boundary);

/// Evaluates the fan at (x, t). Exactly on a wave speed the right-adjacent
/// state is returned; at t = 0 the left state for x < origin, else right.
Vec eval_similarity(const SimilaritySolution& sol, double x, double t);

enum class SwViscosity { laplacian, eddy };

/// Closed-form local-in-time solution of the linearized shallow water
/// boundary value problem on [-1, inf): boundary Riemann fan at x = -1
/// composed with the interior Riemann fan at x = 0. Valid until the two
/// fans interact at t = 1/(2 sqrt 2).
Vec exact_sw_solution(SwViscosity viscosity, double x, double t);

}  // namespace vmfv
