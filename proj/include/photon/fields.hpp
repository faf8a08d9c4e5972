#pragma once

// Expectation values of the free electromagnetic field strengths in the
// coherent state of mean photon number one built on an amplitude Psi.
//
//   <F^{mu nu}(x)> = F^(+)(x) + conj(F^(+)(x)),
//   F^(+)(x) = C int d^3k/omega sum_lambda T^{mu nu}(k, lambda)
//              sqrt(omega) Psi_lambda(k) exp(-i k.x),   C = 1/sqrt(16 pi^3).
//
// The real prefactor C gives E_x = sqrt(kappa) G cos(kappa(z - t)),
// E_y = -sqrt(kappa) G sin(kappa(z - t)) for the narrowband lambda = +1
// packet. Natural Heaviside-Lorentz units throughout.

#include "photon/amplitudes.hpp"
#include "photon/polarization.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace photon {

inline constexpr double kHbarCeVnm = 197.3269804;

/// 1/sqrt(16 pi^3).
double field_prefactor();

using FieldTensor = Eigen::Matrix4d;

struct ElectroMagnetic {
  Eigen::Vector3d E = Eigen::Vector3d::Zero();
  Eigen::Vector3d B = Eigen::Vector3d::Zero();
};

struct ComplexElectroMagnetic {
  Eigen::Vector3cd E = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd B = Eigen::Vector3cd::Zero();
};

/// F^{0i} = -E_i, F^{ij} = -epsilon_{ijk} B_k.
FieldTensor field_tensor(const ElectroMagnetic& f);
ElectroMagnetic decode(const FieldTensor& F);
ComplexElectroMagnetic decode(const ComplexTensor& F);

/// Gauge function f(k, lambda) applied as eps -> eps + f k.
using GaugeFunction = std::function<std::complex<double>(const FourVectord&, Helicity)>;

/// Quadrature of the field integrals over the momentum nodes of an amplitude.
/// Construction samples Psi once; evaluations are direct sums over nodes.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const HelicityAmplitude& psi, const GaugeFunction& gauge = {});

  /// F^(+)(x) = <0|F(x)|psi>.
  ComplexTensor positive_frequency(const FourVectord& x) const;
  /// <F(x)> in the coherent state, real antisymmetric.
  FieldTensor expectation(const FourVectord& x) const;
  /// 2 A^(+)(x) with A^(+) = i C int d^3k/omega sum eps sqrt(omega) Psi e^{-ikx};
  /// the real part is the potential, with F = dA - dA.
  ComplexFourVectord potential(const FourVectord& x) const;
  /// Gauge-invariant Sipe-type wavefunction
  ///   (2 pi)^{-3/2} int d^3k/omega e^{-ikx} sum (k^0 eps^i - k^i eps^0) sqrt(omega) Psi.
  Eigen::Vector3cd sipe_invariant(const FourVectord& x) const;
  /// Sipe's original form with the spatial polarization only,
  ///   (2 pi)^{-3/2} int d^3k e^{-ikx} sum eps sqrt(omega) Psi. Gauge dependent.
  Eigen::Vector3cd sipe(const FourVectord& x) const;
  /// rho = |F_+|^2 + |F_-|^2, F_pm = (E^(+) +- i B^(+)) / sqrt2.
  double bb_density(const FourVectord& x) const;

  struct Node {
    Eigen::Vector3d k;
    double omega;
    /// sum_lambda w Psi_lambda / sqrt(omega) eps(k, lambda).
    ComplexFourVectord a;
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  /// Node layout: index (i * n1 + j) * n2 + l over the tensor-product axes.
  const std::array<std::vector<double>, 3>& axes() const { return axes_; }

 private:
  std::vector<Node> nodes_;
  std::array<std::vector<double>, 3> axes_;
};

ComplexTensor positive_frequency_field(const HelicityAmplitude& psi, const FourVectord& x);
FieldTensor field_expectation_exact(const HelicityAmplitude& psi, const FourVectord& x);
ComplexFourVectord vector_potential(const HelicityAmplitude& psi, const FourVectord& x,
                                    const GaugeFunction& gauge = {});
double bb_density(const HelicityAmplitude& psi, const FourVectord& x);

/// Packet of one helicity moving along +z with |kappa| = kappa.
struct NarrowbandSpec {
  double kappa = 1;
  double sigma_k = 0.01;
  Helicity helicity = Helicity::plus;

  double sigma_x() const { return 1 / (2 * sigma_k); }
  /// (kappa / sigma_k) sigma_x; envelope spreading is negligible for |t|
  /// well inside this.
  double time_window() const { return kappa / sigma_k * sigma_x(); }
  HelicityAmplitude amplitude(int points = 48) const;
};

/// |t| beyond this fraction of time_window() raises outside_window.
inline constexpr double kNarrowbandWindowFraction = 0.1;

struct NarrowbandField {
  ElectroMagnetic field;
  bool outside_window = false;
};

/// Normalized envelope exp(-|x - z t|^2 / 4 sigma_x^2) / (2 pi sigma_x^2)^(3/4).
double narrowband_envelope(const NarrowbandSpec& spec, const FourVectord& x);

/// Closed form: peak values of the slowly varying factors times the
/// Gaussian transform, C T(kappa z, lambda) / sqrt(kappa) (2 pi)^{3/2}
/// e^{i kappa (z - t)} G.
ComplexTensor narrowband_positive_frequency(const NarrowbandSpec& spec, const FourVectord& x);
NarrowbandField field_expectation_narrowband(const NarrowbandSpec& spec, const FourVectord& x);

struct GridSpec {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d spacing = Eigen::Vector3d::Ones();
  std::array<int, 3> dims{1, 1, 1};

  /// Grid with dims nodes spanning center +- half_extent on each axis.
  static GridSpec centered(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extent,
                           const std::array<int, 3>& dims);

  std::size_t size() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + l;
  }
  Eigen::Vector3d position(int i, int j, int l) const {
    return origin + spacing.cwiseProduct(Eigen::Vector3d(i, j, l));
  }
  /// Trapezoid weight of node (i, j, l).
  double weight(int i, int j, int l) const;
};

/// What a grid must resolve: the carrier wavevector and the envelope.
struct GridRequirements {
  Eigen::Vector3d carrier = Eigen::Vector3d::Zero();
  Eigen::Vector3d envelope_center = Eigen::Vector3d::Zero();
  double sigma_x = 1;
};

/// Minimum points per carrier wavelength along each axis.
inline constexpr double kPointsPerWavelength = 8;
/// Minimum half extent of the grid around the envelope center, in sigma_x.
inline constexpr double kEnvelopeSigmas = 6;

class ResolutionError : public DomainError {
 public:
  ResolutionError(const std::string& what, std::array<int, 3> required_dims,
                  Eigen::Vector3d required_spacing)
      : DomainError(what), required_dims(required_dims), required_spacing(required_spacing) {}

  std::array<int, 3> required_dims;
  Eigen::Vector3d required_spacing;
};

/// Throws ResolutionError when grid under-resolves the carrier or does not
/// cover +- kEnvelopeSigmas sigma_x.
void check_resolution(const GridSpec& grid, const GridRequirements& req);

/// Smallest grid centred on the envelope satisfying check_resolution.
GridSpec minimal_grid(const GridRequirements& req, int min_points = 2);

GridRequirements narrowband_requirements(const NarrowbandSpec& spec, double t);

class FieldTensorGrid {
 public:
  FieldTensorGrid(GridSpec spec, double time);

  const GridSpec& spec() const { return spec_; }
  double time() const { return time_; }

  ElectroMagnetic& at(std::size_t n) { return values_[n]; }
  const ElectroMagnetic& at(std::size_t n) const { return values_[n]; }
  FieldTensor tensor(std::size_t n) const { return field_tensor(values_[n]); }

  std::optional<GridRequirements> requirements;

 private:
  GridSpec spec_;
  double time_;
  std::vector<ElectroMagnetic> values_;
};

/// Positive-frequency E^(+), B^(+) on a grid by separable summation.
std::vector<ComplexElectroMagnetic> positive_frequency_grid(const FieldEvaluator& ev,
                                                            const GridSpec& grid, double t);
FieldTensorGrid exact_grid(const FieldEvaluator& ev, const GridSpec& grid, double t);
FieldTensorGrid narrowband_grid(const NarrowbandSpec& spec, const GridSpec& grid, double t);

/// (int (E^2 + B^2)/2, int E x B) by the trapezoidal rule. Checks the
/// grid's requirements when present.
FourVectord energy_momentum_integrals(const FieldTensorGrid& grid);

struct MaxwellResidual {
  double divergence = 0;  ///< max |d_mu F^{mu nu}| / max |dF|
  double bianchi = 0;     ///< max |cyclic dF| / max |dF|
};

/// Central differences with step h in all four coordinates.
MaxwellResidual maxwell_residual(const FieldEvaluator& ev, const FourVectord& x, double h);
MaxwellResidual maxwell_residual(const HelicityAmplitude& psi, const FourVectord& x, double h);

/// max_x |<F>_{L psi}(x) - L <F>_psi(L^-1 x) L^T| / max_x |<F>_{L psi}(x)|.
double tensor_covariance_check(const HelicityAmplitude& psi, const LorentzMatrixd& L,
                               const std::vector<FourVectord>& points);

struct DualRoute {
  double momentum_route = 0;  ///< sum_lambda int |Psi|^2 omega d^3k
  double spatial_route = 0;   ///< grid quadrature in position space
};

/// int |Psi_Sipe(x)|^2 d^3x against <H>.
DualRoute sipe_energy_integral(const HelicityAmplitude& psi, const GridSpec& grid,
                               double t = 0);
/// int rho d^3x against <H>.
DualRoute bb_energy_integral(const HelicityAmplitude& psi, const GridSpec& grid, double t = 0);

/// sigma_x = hbar c / (2 ratio kappa) in micrometres.
double localization_scale(double kappa_ev, double sigma_ratio);

}  // namespace photon
