#include "photon/wigner.hpp"

namespace photon {
namespace {

constexpr double kRotationTol = 1e-10;
constexpr double kHalfPhaseFloor = 1e-14;

WignerData from_little_group(const LittleGroupElementd& e,
                             const LorentzMatrixd& target) {
  WignerData d;
  d.w = e.gamma;
  d.phase_half = std::polar(1.0, -e.gamma / 2);
  d.alpha = e.alpha;
  d.residual = (e.matrix() - target).cwiseAbs().maxCoeff();
  return d;
}

bool is_rotation(const LorentzMatrixd& R) {
  const double time_part = std::abs(R(0, 0) - 1) +
                           R.block<1, 3>(0, 1).cwiseAbs().sum() +
                           R.block<3, 1>(1, 0).cwiseAbs().sum();
  const Eigen::Matrix3d r = R.bottomRightCorner<3, 3>();
  return time_part <= kRotationTol &&
         (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <=
             kRotationTol &&
         r.determinant() > 0;
}

// Shared numerator of the closed forms:
//   a cos(theta/2) + b sin(theta/2) e^{i phi}, normalized.
std::complex<double> normalized_half_phase(std::complex<double> a,
                                           std::complex<double> b,
                                           const FourVectord& k) {
  const Eigen::Vector3d dir = k.tail<3>();
  if (std::hypot(dir.x(), dir.y()) == 0) {
    throw DomainError("undefined half-phase: momentum on the z axis");
  }
  const auto [theta, phi] = polar_angles(dir);
  const std::complex<double> num =
      a * std::cos(theta / 2) + b * std::sin(theta / 2) * std::polar(1.0, phi);
  const double mag = std::abs(num);
  if (mag < kHalfPhaseFloor) {
    throw DomainError("undefined half-phase");
  }
  return num / mag;
}

}  // namespace

std::complex<double> WignerData::phase(int helicity) const {
  return std::polar(1.0, -helicity * w);
}

WignerData wigner_rotation(const LorentzMatrixd& R, const FourVectord& k) {
  if (!is_rotation(R)) {
    throw DomainError("wigner_rotation: matrix is not a pure rotation");
  }
  if (!is_lightlike(k)) {
    throw DomainError("wigner_rotation: momentum is not lightlike with k0 > 0");
  }
  const Eigen::Vector3d dir = k.tail<3>();
  const Eigen::Vector3d rotated = R.bottomRightCorner<3, 3>() * dir;
  const LorentzMatrixd W = standard_rotation(rotated).transpose() * R *
                           standard_rotation(dir);
  LittleGroupElementd e;
  e.gamma = std::atan2(W(2, 1), W(1, 1));
  return from_little_group(e, W);
}

WignerData wigner_boost(const LorentzMatrixd& lambda, const FourVectord& k,
                        double kappa_ref) {
  if (!is_proper_orthochronous(lambda)) {
    throw DomainError("wigner_boost: not a proper orthochronous Lorentz matrix");
  }
  const FourVectord k_out = lambda * k;
  const LorentzMatrixd M =
      lorentz_inverse<double>(standard_lorentz(k_out, kappa_ref)) * lambda *
      standard_lorentz(k, kappa_ref);
  return from_little_group(decompose_little_group(M), M);
}

std::complex<double> wigner_phase_rotation_closed(const AxisAngled& r,
                                                  const FourVectord& k) {
  const Su2Matrixd U = su2_matrix(r);
  return normalized_half_phase(U(0, 0), U(0, 1), k);
}

std::complex<double> wigner_phase_boost_closed(const Eigen::Vector3d& zeta,
                                               const FourVectord& k) {
  const double z = zeta.norm();
  if (z == 0) {
    return normalized_half_phase(1.0, 0.0, k);
  }
  const Eigen::Vector3d n = zeta / z;
  const double ch = std::cosh(z / 2);
  const double sh = std::sinh(z / 2);
  return normalized_half_phase(ch + sh * n.z(),
                               sh * std::complex<double>(n.x(), -n.y()), k);
}

}  // namespace photon
