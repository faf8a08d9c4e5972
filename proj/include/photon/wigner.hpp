#pragma once

// Wigner rotations of lightlike momenta: the little-group element produced
// when a rotation or boost is referred back to the standard frame of k0.

#include "photon/little_group.hpp"

#include <complex>

namespace photon {

struct WignerData {
  double w = 0;  ///< rotation angle about z, in (-pi, pi]
  std::complex<double> phase_half{1, 0};  ///< exp(-i w / 2)
  IbrParameterd alpha;  ///< residual IBR, zero for rotations
  double residual = 0;  ///< max entry error of the little-group reconstruction

  /// exp(-i helicity w), the single-valued phase for integer helicity.
  std::complex<double> phase(int helicity) const;
};

/// R_z(w) = R0^-1[R k_hat] R R0[k_hat]. R must be a pure rotation.
WignerData wigner_rotation(const LorentzMatrixd& R, const FourVectord& k);

/// R_z(w) L(alpha) = L^-1(Lambda k, k0) Lambda L(k, k0). Any proper
/// orthochronous Lambda is accepted; rotation-boost products use the same path.
WignerData wigner_boost(const LorentzMatrixd& lambda, const FourVectord& k,
                        double kappa_ref = 1.0);

/// Closed-form exp(-i w_R / 2) from the spin-1/2 matrix elements of R.
std::complex<double> wigner_phase_rotation_closed(const AxisAngled& r,
                                                  const FourVectord& k);

/// Closed-form exp(-i w_B / 2) for the pure boost of rapidity vector zeta.
std::complex<double> wigner_phase_boost_closed(const Eigen::Vector3d& zeta,
                                               const FourVectord& k);

}  // namespace photon
