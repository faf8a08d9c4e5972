#pragma once

// Little group of the lightlike reference momentum k0 = (kappa, 0, 0, kappa):
// rotations about z and the isoenergetic boost-rotations (IBRs), which
// together form E(2).

#include "photon/lorentz.hpp"

namespace photon {

/// Translation parameter alpha = (alpha_x, alpha_y) of an IBR.
template <typename Scalar = double>
struct IbrParameter {
  Vector2<Scalar> alpha = Vector2<Scalar>::Zero();

  IbrParameter() = default;
  IbrParameter(Scalar ax, Scalar ay) : alpha(ax, ay) {}
  explicit IbrParameter(const Vector2<Scalar>& a) : alpha(a) {}

  Scalar x() const { return alpha.x(); }
  Scalar y() const { return alpha.y(); }

  friend IbrParameter operator+(const IbrParameter& a, const IbrParameter& b) {
    return IbrParameter(a.alpha + b.alpha);
  }
};

using IbrParameterd = IbrParameter<double>;

namespace detail {
template <typename Scalar>
void require_off_axis(Scalar theta) {
  if (!(theta > 0 && theta < std::numbers::pi_v<Scalar>)) {
    throw DomainError("degenerate isoenergetic direction: theta must lie in (0, pi)");
  }
}
}  // namespace detail

/// Velocity of the boost along (theta, phi) that leaves k0's energy unchanged.
template <typename Scalar>
Vector3<Scalar> isoenergetic_velocity(Scalar theta, Scalar phi) {
  detail::require_off_axis(theta);
  const Scalar c = std::cos(theta);
  const Vector3<Scalar> dir(std::sin(theta) * std::cos(phi),
                            std::sin(theta) * std::sin(phi), c);
  return (-2 * c / (1 + c * c)) * dir;
}

/// Signed polar angle of the isoenergetically boosted k0, measured from z
/// towards u1 = (cos phi, sin phi, 0).
template <typename Scalar>
Scalar final_polar_angle(Scalar theta) {
  detail::require_off_axis(theta);
  return 2 * theta - std::numbers::pi_v<Scalar>;
}

template <typename Scalar>
IbrParameter<Scalar> alpha_from_angles(Scalar theta, Scalar phi) {
  detail::require_off_axis(theta);
  const Scalar s = -2 / std::tan(theta);
  return IbrParameter<Scalar>(s * std::cos(phi), s * std::sin(phi));
}

/// Closed-form IBR matrix, quadratic in alpha.
template <typename Scalar>
LorentzMatrix<Scalar> ibr_matrix(const IbrParameter<Scalar>& p) {
  const Scalar ax = p.x();
  const Scalar ay = p.y();
  const Scalar h = (ax * ax + ay * ay) / 2;
  LorentzMatrix<Scalar> L;
  // clang-format off
  L << 1 + h, ax, ay,   -h,
       ax,    1,  0,    -ax,
       ay,    0,  1,    -ay,
       h,     ax, ay,   1 - h;
  // clang-format on
  return L;
}

/// boost_matrix(isoenergetic_velocity(theta, phi)) with gamma = (1 + c^2) / s^2
/// taken directly from the angles; going through beta loses digits near
/// the poles, where |beta| -> 1.
template <typename Scalar>
LorentzMatrix<Scalar> isoenergetic_boost(Scalar theta, Scalar phi) {
  detail::require_off_axis(theta);
  const Scalar c = std::cos(theta);
  const Scalar s = std::sin(theta);
  const Vector3<Scalar> dir(s * std::cos(phi), s * std::sin(phi), c);
  return detail::boost_from_gamma<Scalar>(dir, (1 + c * c) / (s * s), -2 * c / (s * s));
}

/// Physical construction of the same IBR: the isoenergetic boost followed
/// by the rotation R(-psi0 u2), u2 = z x u1, that returns the momentum to z.
template <typename Scalar>
LorentzMatrix<Scalar> ibr_from_angles(Scalar theta, Scalar phi) {
  const Vector3<Scalar> u1(std::cos(phi), std::sin(phi), 0);
  const Vector3<Scalar> u2 = Vector3<Scalar>::UnitZ().cross(u1);
  const Scalar psi0 = final_polar_angle(theta);
  return rotation_matrix(AxisAngle<Scalar>(u2, -psi0)) * isoenergetic_boost(theta, phi);
}

/// Element R_z(gamma) L(alpha) of the little group of k0.
template <typename Scalar = double>
struct LittleGroupElement {
  Scalar gamma = 0;
  IbrParameter<Scalar> alpha;

  LorentzMatrix<Scalar> matrix() const {
    return rotation_z(gamma) * ibr_matrix(alpha);
  }
};

using LittleGroupElementd = LittleGroupElement<double>;

/// Factors M = R_z(gamma) L(alpha). M must fix the direction (1, 0, 0, 1);
/// the check is relative to the size of M's entries.
///
/// M maps the other null direction n = (1, 0, 0, -1) to
/// (1 + a^2, 2 R_z(gamma) alpha, a^2 - 1), which gives alpha' = R_z(gamma)
/// alpha. Then L(-alpha') M = R_z(gamma).
template <typename Scalar>
LittleGroupElement<Scalar> decompose_little_group(const LorentzMatrix<Scalar>& M,
                                                  Scalar tol = Scalar(1e-10)) {
  const FourVector<Scalar> k0(1, 0, 0, 1);
  const Scalar scale = std::max(Scalar(1), M.cwiseAbs().maxCoeff());
  if ((M * k0 - k0).cwiseAbs().maxCoeff() > tol * scale) {
    throw DomainError("not a little-group element of k0");
  }
  const FourVector<Scalar> n(1, 0, 0, -1);
  const FourVector<Scalar> image = M * n;
  const IbrParameter<Scalar> rotated(image(1) / 2, image(2) / 2);
  const LorentzMatrix<Scalar> rz =
      ibr_matrix(IbrParameter<Scalar>(-rotated.alpha)) * M;
  LittleGroupElement<Scalar> out;
  out.gamma = std::atan2(rz(2, 1), rz(1, 1));
  out.alpha = IbrParameter<Scalar>(
      Eigen::Rotation2D<Scalar>(-out.gamma) * rotated.alpha);
  return out;
}

/// Real generators of the IBRs in the vector representation.
/// L_x = K_x - J_y, L_y = K_y + J_x with K_i, J_i the derivatives of the
/// active boosts and rotations at zero parameter, so that
/// exp(alpha_x L_x + alpha_y L_y) = ibr_matrix(alpha).
template <typename Scalar = double>
struct IbrGenerators {
  LorentzMatrix<Scalar> lx;
  LorentzMatrix<Scalar> ly;
};

template <typename Scalar = double>
LorentzMatrix<Scalar> boost_generator(int axis) {
  LorentzMatrix<Scalar> K = LorentzMatrix<Scalar>::Zero();
  K(0, axis + 1) = 1;
  K(axis + 1, 0) = 1;
  return K;
}

template <typename Scalar = double>
LorentzMatrix<Scalar> rotation_generator(int axis) {
  // (J_a)_{bc} = -epsilon_{abc} on the spatial block
  LorentzMatrix<Scalar> J = LorentzMatrix<Scalar>::Zero();
  const int b = (axis + 1) % 3;
  const int c = (axis + 2) % 3;
  J(c + 1, b + 1) = 1;
  J(b + 1, c + 1) = -1;
  return J;
}

template <typename Scalar = double>
IbrGenerators<Scalar> ibr_generators() {
  return {boost_generator<Scalar>(0) - rotation_generator<Scalar>(1),
          boost_generator<Scalar>(1) + rotation_generator<Scalar>(0)};
}

}  // namespace photon
