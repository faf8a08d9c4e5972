#pragma once

// Helpers shared by the unit tests: seeded generators and small oracles
// built from Eigen directly rather than from the library under test.

#include "photon/lorentz.hpp"

#include <Eigen/Geometry>

#include <complex>
#include <numbers>
#include <random>

namespace testing {

using C = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Eigen::Vector3d unit() {
    std::normal_distribution<double> n;
    Eigen::Vector3d v;
    do {
      v = {n(rng_), n(rng_), n(rng_)};
    } while (v.norm() < 1e-6);
    return v.normalized();
  }

  /// |cos theta| <= limit.
  Eigen::Vector3d off_pole(double limit = 0.99) {
    Eigen::Vector3d v;
    do {
      v = unit();
    } while (std::abs(v.z()) > limit);
    return v;
  }

  photon::FourVectord lightlike() {
    const Eigen::Vector3d k = uniform(0.2, 5) * off_pole();
    return {k.norm(), k.x(), k.y(), k.z()};
  }

  Eigen::Vector3d velocity(double max_speed) { return uniform(0, max_speed) * unit(); }

 private:
  std::mt19937_64 rng_;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline Eigen::Matrix4d minkowski() {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = 1;
  g(1, 1) = g(2, 2) = g(3, 3) = -1;
  return g;
}

/// Textbook boost along n with velocity b: gamma, gamma b n, and the
/// longitudinal projection.
inline Eigen::Matrix4d textbook_boost(const Eigen::Vector3d& beta) {
  const double b = beta.norm();
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  if (b == 0) {
    return L;
  }
  const double g = 1 / std::sqrt(1 - b * b);
  const Eigen::Vector3d n = beta / b;
  L(0, 0) = g;
  for (int i = 0; i < 3; ++i) {
    L(0, i + 1) = L(i + 1, 0) = g * beta(i);
    for (int j = 0; j < 3; ++j) {
      L(i + 1, j + 1) += (g - 1) * n(i) * n(j);
    }
  }
  return L;
}

inline Eigen::Matrix4d embed(const Eigen::Matrix3d& r) {
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  L.bottomRightCorner<3, 3>() = r;
  return L;
}

/// R_z(phi) R_y(theta) R_z(-phi) for the direction of k.
inline Eigen::Matrix3d frame_rotation(const Eigen::Vector3d& k) {
  const double theta = std::acos(k.z() / k.norm());
  const double phi = (k.x() == 0 && k.y() == 0) ? 0.0 : std::atan2(k.y(), k.x());
  using A = Eigen::AngleAxisd;
  return (A(phi, Eigen::Vector3d::UnitZ()) * A(theta, Eigen::Vector3d::UnitY()) *
          A(-phi, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

/// eps(k0, +1) = -(0, 1, i, 0)/sqrt2 and eps(k0, -1) = (0, 1, -i, 0)/sqrt2.
inline Eigen::Vector4cd reference_eps(int helicity) {
  const double s = 1 / std::sqrt(2.0);
  return helicity == 1 ? Eigen::Vector4cd(0, -s, C(0, -s), 0)
                       : Eigen::Vector4cd(0, s, C(0, -s), 0);
}

inline Eigen::Vector4cd frame_eps(const Eigen::Vector3d& k, int helicity) {
  return embed(frame_rotation(k)).cast<C>() * reference_eps(helicity);
}

/// e^{-i lambda w} of Lambda at k, read off from the transported polarization:
/// Lambda eps(k) = eps(Lambda k) e^{-i lambda w} + c (Lambda k).
inline C transported_phase(const Eigen::Matrix4d& L, const photon::FourVectord& k,
                           int helicity) {
  const photon::FourVectord lk = L * k;
  const Eigen::Vector4cd moved = L.cast<C>() * frame_eps(k.tail<3>(), helicity);
  const Eigen::Vector4cd target = frame_eps(lk.tail<3>(), helicity);
  // eps* . eps = -1
  return -(target.conjugate().transpose() * minkowski().cast<C>() * moved)(0, 0);
}

}  // namespace testing
