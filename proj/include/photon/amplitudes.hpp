#pragma once

// Momentum/helicity probability amplitudes Psi_lambda(k) of a single photon.
//
// Amplitudes are function objects. Every transformation is a pullback that
// wraps the previous function, so transformed amplitudes are exact
// pointwise; quadrature only happens when an observable is evaluated.

#include "photon/lorentz.hpp"
#include "photon/quadrature.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace photon {

enum class Helicity : int { minus = -1, plus = 1 };

/// Throws DomainError unless value is +1 or -1.
Helicity helicity_from_int(int value);

inline int to_int(Helicity h) { return static_cast<int>(h); }

struct HelicityPair {
  std::complex<double> plus;
  std::complex<double> minus;

  std::complex<double> operator[](Helicity h) const {
    return h == Helicity::plus ? plus : minus;
  }
  double density() const { return std::norm(plus) + std::norm(minus); }
};

/// The photon's intrinsic parity.
inline constexpr double kIntrinsicParity = -1.0;

struct Translation {
  FourVectord a = FourVectord::Zero();
};
struct Rotation {
  AxisAngled r;
};
struct Boost {
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
};
struct Parity {};
struct TimeReversal {};

using TransformOp = std::variant<Translation, Rotation, Boost, Parity, TimeReversal>;
using TransformRecord = std::vector<TransformOp>;

std::string op_name(const TransformOp& op);

class HelicityAmplitude {
 public:
  using Function = std::function<HelicityPair(const Eigen::Vector3d&)>;

  HelicityAmplitude(Function f, QuadDomain domain);

  HelicityPair operator()(const Eigen::Vector3d& k) const { return (*fn_)(k); }
  std::complex<double> operator()(Helicity h, const Eigen::Vector3d& k) const {
    return (*fn_)(k)[h];
  }

  const QuadDomain& domain() const { return domain_; }
  /// Operations applied since this amplitude's base was constructed.
  const TransformRecord& record() const { return record_; }

  HelicityAmplitude with_domain(const QuadDomain& domain) const;

  /// Psi'(k) = Psi(k) exp(+i k.a).
  HelicityAmplitude translate(const FourVectord& a) const;
  /// Psi'(k) = Psi(R^-1 k) exp(-i lambda w_R(k <- R^-1 k)).
  HelicityAmplitude rotate(const AxisAngled& r) const;
  /// Psi'(k) = Psi(L^-1 k) sqrt(gamma (1 - beta.k_hat)) exp(-i lambda w_B).
  HelicityAmplitude boost(const Eigen::Vector3d& beta) const;
  /// Psi'_lambda(k) = eta Psi_-lambda(-k) exp(+2 i lambda phi_k).
  HelicityAmplitude parity() const;
  /// Psi'_lambda(k) = Psi*_lambda(-k) exp(-2 i lambda phi_k). Antiunitary.
  HelicityAmplitude time_reverse() const;
  /// General proper orthochronous L, applied as its rotation then its boost.
  HelicityAmplitude lorentz(const LorentzMatrixd& L) const;

  HelicityAmplitude apply(const TransformOp& op) const;

 private:
  HelicityAmplitude derived(Function f, QuadDomain domain, TransformOp op) const;

  std::shared_ptr<const Function> fn_;
  QuadDomain domain_;
  TransformRecord record_;
};

/// Replays record on base; reproduces the amplitude the record came from.
HelicityAmplitude replay(const HelicityAmplitude& base, const TransformRecord& record);

/// c1 psi1 + c2 psi2 as a new base amplitude (empty record) on the union box.
HelicityAmplitude superpose(std::complex<double> c1, const HelicityAmplitude& psi1,
                            std::complex<double> c2, const HelicityAmplitude& psi2);

HelicityAmplitude scaled(std::complex<double> c, const HelicityAmplitude& psi);

/// Normalized Gaussian exp(-|k - kappa|^2 / 4 sigma^2) / (2 pi sigma^2)^(3/4)
/// in one helicity.
HelicityAmplitude gaussian_wavepacket(const Eigen::Vector3d& kappa_vec,
                                      double sigma_k, Helicity helicity,
                                      int points = 48);

/// Same envelope with helicity weights (c_plus, c_minus), normalized so
/// that |c_plus|^2 + |c_minus|^2 = 1.
HelicityAmplitude gaussian_wavepacket(const Eigen::Vector3d& kappa_vec,
                                      double sigma_k, std::complex<double> c_plus,
                                      std::complex<double> c_minus, int points = 48);

/// Box half-width of gaussian_wavepacket, in units of sigma_k.
inline constexpr double kGaussianBoxHalfWidth = 8.0;

template <typename T>
struct QuadratureResult {
  T value;
  /// Density on the box boundary exceeds kBoundaryDensityLimit of the peak.
  bool domain_warning = false;
};

inline constexpr double kBoundaryDensityLimit = 1e-8;

QuadratureResult<double> norm_squared(const HelicityAmplitude& psi);
QuadratureResult<double> helicity_weight(const HelicityAmplitude& psi, Helicity h);
/// sum_lambda int conj(psi1) psi2 d^3k over the union of both boxes.
QuadratureResult<std::complex<double>> inner_product(const HelicityAmplitude& psi1,
                                                     const HelicityAmplitude& psi2);
/// <P^mu> = sum_lambda int |Psi_lambda|^2 (|k|, k) d^3k.
QuadratureResult<FourVectord> expectation_momentum(const HelicityAmplitude& psi);

/// Largest density on the faces of the box divided by the largest density
/// at the quadrature nodes.
double boundary_density_ratio(const HelicityAmplitude& psi);

/// Calls f(k, weight, value) for every tensor-product node of domain.
template <typename F>
void for_each_node(const HelicityAmplitude& psi, const QuadDomain& domain, F&& f) {
  const MomentumGrid grid(domain);
  Eigen::Vector3d k;
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    k.x() = grid.axis[0][i];
    for (std::size_t j = 0; j < grid.size(1); ++j) {
      k.y() = grid.axis[1][j];
      const double wij = grid.weight[0][i] * grid.weight[1][j];
      for (std::size_t l = 0; l < grid.size(2); ++l) {
        k.z() = grid.axis[2][l];
        f(k, wij * grid.weight[2][l], psi(k));
      }
    }
  }
}

}  // namespace photon
