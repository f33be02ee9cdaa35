#pragma once

#include <memory>

#include "vmfv/vec.hpp"

namespace vmfv {

/// Eigendecomposition of a flux Jacobian at one state.
struct Eigensystem {
  Vec lambdas;        ///< eigenvalues, strictly ascending
  Mat right_vectors;  ///< columns are the right eigenvectors
  int k_negative = 0; ///< number of strictly negative eigenvalues
};

/// Throws if any eigenvalue is within `gap_tol` of zero (the boundary is
/// characteristic and the boundary-layer construction does not apply).
void check_noncharacteristic(const Eigensystem& es, double gap_tol = 1e-10);

/// One system of conservation laws U_t + F(U)_x = 0 together with its
/// entropy pair and the viscosity matrix of its physical regularization
/// U_t + F(U)_x = eps (B(U) U_x)_x.
class HyperbolicModel {
public:
  virtual ~HyperbolicModel() = default;

  virtual int dim() const = 0;

  virtual Vec flux(const Vec& u) const = 0;
  virtual Eigensystem jacobian_eigen(const Vec& u) const = 0;

  /// Entropy S, entropy flux Q with Q_U = S_U F_U, entropy variables
  /// V = S_U, and potential Psi = V.F - Q.
  virtual double entropy(const Vec& u) const = 0;
  virtual double entropy_flux(const Vec& u) const = 0;
  virtual Vec entropy_vars(const Vec& u) const = 0;
  virtual double entropy_potential(const Vec& u) const;

  virtual Mat viscosity_matrix(const Vec& u) const = 0;

  /// Two-point entropy conservative flux: jmp(V).F* = jmp(Psi).
  virtual Vec ec_flux(const Vec& ul, const Vec& ur) const = 0;

  /// Interface diffusion of the viscosity-matched scheme. The default is
  /// c_max * B(mean) * jump; models whose physical diffusion acts on
  /// derived quantities (Navier-Stokes) override it.
  virtual Vec cnd_interface_diffusion(const Vec& ul, const Vec& ur,
                                      double c_max) const;

  /// Spectral radius of the Jacobian at one state.
  virtual double max_abs_eigenvalue(const Vec& u) const;

  virtual bool admissible(const Vec& u) const { return u.all_finite(); }
};

/// Eigendecomposition of a constant matrix. Rejects complex or repeated
/// eigenvalues (strict hyperbolicity). Eigenvectors are scaled so the
/// entry of largest magnitude equals +1, which pins the wave-strength
/// normalization used throughout.
Eigensystem eigen_decompose(const Mat& a);

/// Constant-coefficient linear system F(U) = A U with quadratic entropy
/// S = U.SU/2 given by a symmetrizer (S symmetric positive definite with
/// S A symmetric). Then Q = Psi = U.(SA)U/2 and V = SU.
class LinearModel final : public HyperbolicModel {
public:
  LinearModel(Mat a, Mat b, Mat symmetrizer);

  int dim() const override { return a_.size(); }
  Vec flux(const Vec& u) const override { return a_ * u; }
  Eigensystem jacobian_eigen(const Vec&) const override { return eigen_; }
  double entropy(const Vec& u) const override {
    return 0.5 * u.dot(symmetrizer_ * u);
  }
  double entropy_flux(const Vec& u) const override {
    return 0.5 * u.dot(sa_ * u);
  }
  Vec entropy_vars(const Vec& u) const override { return symmetrizer_ * u; }
  double entropy_potential(const Vec& u) const override {
    return 0.5 * u.dot(sa_ * u);
  }
  Mat viscosity_matrix(const Vec&) const override { return b_; }
  Vec ec_flux(const Vec& ul, const Vec& ur) const override {
    return a_ * mean(ul, ur);
  }
  Vec cnd_interface_diffusion(const Vec& ul, const Vec& ur,
                              double c_max) const override {
    return c_max * (b_ * jump(ul, ur));
  }
  double max_abs_eigenvalue(const Vec&) const override {
    return spectral_radius_;
  }

  const Mat& a() const { return a_; }
  const Mat& b() const { return b_; }
  const Mat& symmetrizer() const { return symmetrizer_; }

private:
  Mat a_, b_, symmetrizer_, sa_;
  Eigensystem eigen_;
  double spectral_radius_ = 0.0;
};

}  // namespace vmfv
