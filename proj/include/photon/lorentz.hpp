#pragma once

// Proper orthochronous Lorentz algebra on 4x4 real matrices.
//
// Conventions: metric diag(+1,-1,-1,-1), contravariant components
// (t, x, y, z), matrices indexed L(mu, nu) = L^mu_nu, active transformations.

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photon {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using FourVector = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using ComplexFourVector = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
template <typename Scalar>
using LorentzMatrix = Eigen::Matrix<Scalar, 4, 4, Eigen::RowMajor>;
template <typename Scalar>
using Su2Matrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using FourVectord = FourVector<double>;
using ComplexFourVectord = ComplexFourVector<double>;
using LorentzMatrixd = LorentzMatrix<double>;
using Su2Matrixd = Su2Matrix<double>;

template <typename Scalar = double>
LorentzMatrix<Scalar> metric() {
  return FourVector<Scalar>(1, -1, -1, -1).asDiagonal();
}

/// Bilinear Minkowski product a^mu g_mu_nu b^nu. No complex conjugation.
template <typename DerivedA, typename DerivedB>
auto minkowski_dot(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

template <typename Scalar>
FourVector<Scalar> make_four_vector(Scalar t, const Vector3<Scalar>& v) {
  return FourVector<Scalar>(t, v.x(), v.y(), v.z());
}

/// Lightlike four-momentum (|k|, k).
template <typename Scalar>
FourVector<Scalar> null_vector(const Vector3<Scalar>& k) {
  return make_four_vector(k.norm(), k);
}

/// The reference momentum k0 = (kappa, 0, 0, kappa).
template <typename Scalar>
FourVector<Scalar> reference_momentum(Scalar kappa) {
  return FourVector<Scalar>(kappa, 0, 0, kappa);
}

template <typename Scalar>
bool is_lightlike(const FourVector<Scalar>& k, Scalar rel_tol = Scalar(1e-10)) {
  const Scalar scale = k.template tail<3>().squaredNorm() + k(0) * k(0);
  return k(0) > 0 && std::abs(minkowski_dot(k, k)) <= rel_tol * scale;
}

/// max |L^T g L - g|.
template <typename Derived>
auto metric_deviation(const Eigen::MatrixBase<Derived>& L) {
  using Scalar = typename Derived::Scalar;
  const LorentzMatrix<Scalar> g = metric<Scalar>();
  return (L.transpose() * g * L - g).cwiseAbs().maxCoeff();
}

template <typename Scalar>
LorentzMatrix<Scalar> lorentz_inverse(const LorentzMatrix<Scalar>& L) {
  const LorentzMatrix<Scalar> g = metric<Scalar>();
  return g * L.transpose() * g;
}

template <typename Scalar>
bool is_proper_orthochronous(const LorentzMatrix<Scalar>& L,
                             Scalar tol = Scalar(1e-10)) {
  const Scalar scale = std::max(Scalar(1), L.cwiseAbs().maxCoeff());
  return metric_deviation(L) <= tol * scale * scale && L(0, 0) >= 1 - tol &&
         L.determinant() > 0;
}

/// Rotation axis (unit 3-vector) and angle in radians.
template <typename Scalar = double>
class AxisAngle {
 public:
  AxisAngle() : axis_(Vector3<Scalar>::UnitZ()), angle_(0) {}

  /// The axis is normalized; a zero axis is rejected.
  AxisAngle(const Vector3<Scalar>& axis, Scalar angle) : angle_(angle) {
    const Scalar n = axis.norm();
    if (!(n > 0) || !std::isfinite(n)) {
      throw DomainError("rotation axis must be a nonzero finite vector");
    }
    axis_ = axis / n;
  }

  const Vector3<Scalar>& axis() const { return axis_; }
  Scalar angle() const { return angle_; }

  Eigen::Matrix<Scalar, 3, 3> matrix3() const {
    return Eigen::AngleAxis<Scalar>(angle_, axis_).toRotationMatrix();
  }

 private:
  Vector3<Scalar> axis_;
  Scalar angle_;
};

using AxisAngled = AxisAngle<double>;

template <typename Scalar>
LorentzMatrix<Scalar> embed_rotation(const Eigen::Matrix<Scalar, 3, 3>& r) {
  LorentzMatrix<Scalar> L = LorentzMatrix<Scalar>::Identity();
  L.template bottomRightCorner<3, 3>() = r;
  return L;
}

template <typename Scalar>
LorentzMatrix<Scalar> rotation_matrix(const AxisAngle<Scalar>& r) {
  return embed_rotation<Scalar>(r.matrix3());
}

template <typename Scalar>
LorentzMatrix<Scalar> rotation_z(Scalar angle) {
  return rotation_matrix(AxisAngle<Scalar>(Vector3<Scalar>::UnitZ(), angle));
}

template <typename Scalar>
LorentzMatrix<Scalar> rotation_y(Scalar angle) {
  return rotation_matrix(AxisAngle<Scalar>(Vector3<Scalar>::UnitY(), angle));
}

namespace detail {
template <typename Scalar>
LorentzMatrix<Scalar> boost_from_gamma(const Vector3<Scalar>& dir, Scalar gamma,
                                       Scalar gamma_beta) {
  LorentzMatrix<Scalar> L = LorentzMatrix<Scalar>::Identity();
  L(0, 0) = gamma;
  L.template block<1, 3>(0, 1) = gamma_beta * dir.transpose();
  L.template block<3, 1>(1, 0) = gamma_beta * dir;
  L.template bottomRightCorner<3, 3>() += (gamma - 1) * dir * dir.transpose();
  return L;
}
}  // namespace detail

/// Pure boost by velocity beta: (m, 0) -> m (gamma, gamma beta).
template <typename Scalar>
LorentzMatrix<Scalar> boost_matrix(const Vector3<Scalar>& beta) {
  const Scalar b2 = beta.squaredNorm();
  if (!(b2 < 1)) {
    throw DomainError("superluminal boost: |beta| >= 1");
  }
  if (b2 == 0) {
    return LorentzMatrix<Scalar>::Identity();
  }
  const Scalar b = std::sqrt(b2);
  const Scalar gamma = 1 / std::sqrt((1 - b) * (1 + b));
  return detail::boost_from_gamma<Scalar>(beta / b, gamma, gamma * b);
}

/// Pure boost by rapidity vector zeta (velocity tanh|zeta| along zeta).
template <typename Scalar>
LorentzMatrix<Scalar> boost_from_rapidity(const Vector3<Scalar>& zeta) {
  const Scalar z = zeta.norm();
  if (z == 0) {
    return LorentzMatrix<Scalar>::Identity();
  }
  return detail::boost_from_gamma<Scalar>(zeta / z, std::cosh(z), std::sinh(z));
}

/// Splits a proper orthochronous L into boost_matrix(beta) * rotation.
template <typename Scalar>
std::pair<Vector3<Scalar>, LorentzMatrix<Scalar>> split_boost_rotation(
    const LorentzMatrix<Scalar>& L) {
  const Vector3<Scalar> beta = L.template block<3, 1>(1, 0) / L(0, 0);
  LorentzMatrix<Scalar> R = lorentz_inverse<Scalar>(boost_matrix(beta)) * L;
  return {beta, R};
}

/// Polar angles of a direction; the azimuth is fixed to 0 on the z axis.
template <typename Scalar>
std::pair<Scalar, Scalar> polar_angles(const Vector3<Scalar>& v) {
  const Scalar rho = std::hypot(v.x(), v.y());
  const Scalar theta = std::atan2(rho, v.z());
  const Scalar phi = rho > 0 ? std::atan2(v.y(), v.x()) : Scalar(0);
  return {theta, phi};
}

/// R0[k_hat] = R_z(phi) R_y(theta) R_z(-phi); maps z_hat onto k_hat.
template <typename Scalar>
LorentzMatrix<Scalar> standard_rotation(const Vector3<Scalar>& k_hat) {
  if (!(k_hat.norm() > 0)) {
    throw DomainError("standard rotation of a zero direction");
  }
  const auto [theta, phi] = polar_angles(k_hat);
  return rotation_z(phi) * rotation_y(theta) * rotation_z(-phi);
}

/// z boost carrying (kappa, 0, 0, kappa) to (omega, 0, 0, omega).
template <typename Scalar>
LorentzMatrix<Scalar> standard_boost_z(Scalar omega, Scalar kappa_ref) {
  if (!(omega > 0) || !(kappa_ref > 0)) {
    throw DomainError("standard boost needs positive energies");
  }
  const Scalar w2 = omega * omega;
  const Scalar k2 = kappa_ref * kappa_ref;
  // gamma = (w^2 + k^2) / (2 w k), gamma beta = (w^2 - k^2) / (2 w k)
  const Scalar denom = 2 * omega * kappa_ref;
  return detail::boost_from_gamma<Scalar>(Vector3<Scalar>::UnitZ(),
                                          (w2 + k2) / denom, (w2 - k2) / denom);
}

/// L(k, k0) = R0[k_hat] Lambda_z(omega, kappa_ref).
template <typename Scalar>
LorentzMatrix<Scalar> standard_lorentz(const FourVector<Scalar>& k,
                                       Scalar kappa_ref) {
  if (!is_lightlike(k)) {
    throw DomainError("standard_lorentz: momentum is not lightlike with k0 > 0");
  }
  const Vector3<Scalar> dir = k.template tail<3>();
  return standard_rotation(dir) * standard_boost_z(k(0), kappa_ref);
}

/// Spin-1/2 matrix elements <1/2,m1|U(R)|1/2,m2> = exp(-i angle n.sigma/2),
/// rows and columns ordered m = +1/2, -1/2.
template <typename Scalar>
Su2Matrix<Scalar> su2_matrix(const AxisAngle<Scalar>& r) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(r.angle() / 2);
  const Scalar s = std::sin(r.angle() / 2);
  const Vector3<Scalar>& n = r.axis();
  const C i(0, 1);
  Su2Matrix<Scalar> U;
  U(0, 0) = C(c, -s * n.z());
  U(0, 1) = -i * s * C(n.x(), -n.y());
  U(1, 0) = -i * s * C(n.x(), n.y());
  U(1, 1) = C(c, s * n.z());
  return U;
}

}  // namespace photon
