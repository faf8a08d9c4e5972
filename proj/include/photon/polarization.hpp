#pragma once

// Polarization vectors eps^mu(k, lambda), their gauge freedom, and the
// gauge-invariant tensors T^{mu nu} = k^mu eps^nu - k^nu eps^mu.

#include "photon/amplitudes.hpp"
#include "photon/lorentz.hpp"

namespace photon {

struct PolarizationVector {
  ComplexFourVectord eps;
  FourVectord k;
  Helicity helicity;
};

using ComplexTensor = Eigen::Matrix<std::complex<double>, 4, 4>;

struct FieldTensorCoeff {
  ComplexTensor T;
  FourVectord k;
  Helicity helicity;
};

/// eps(k0, +1) = -(0, 1, i, 0)/sqrt2, eps(k0, -1) = (0, 1, -i, 0)/sqrt2,
/// i.e. spatial components sqrt(4 pi / 3) Y_{1 lambda}.
PolarizationVector reference_polarization(Helicity h, double kappa_ref = 1.0);

/// eps(k, lambda) = R0[k_hat] eps(k0, lambda). The z boost of L(k, k0) does
/// not touch the transverse components, so kappa_ref only sets p.k for k0.
PolarizationVector polarization(const FourVectord& k, Helicity h);

/// Same vector built with the full standard transformation L(k, k0).
PolarizationVector polarization(const FourVectord& k, Helicity h, double kappa_ref);

/// eps -> eps + f k. Keeps k.eps = 0; changes eps*.eps in general.
PolarizationVector gauge_shift(const PolarizationVector& p, std::complex<double> f);

FieldTensorCoeff tensor_coeff(const PolarizationVector& p);

/// Bilinear k.eps (no conjugation).
std::complex<double> lorentz_condition(const PolarizationVector& p);

/// eps1* . eps2 with the Minkowski metric.
std::complex<double> hermitian_dot(const ComplexFourVectord& a, const ComplexFourVectord& b);

struct CovarianceResult {
  /// Least-squares coefficient c in  L eps(k) = eps(Lk) e^{-i lambda w} + c (Lk).
  std::complex<double> coefficient;
  /// alpha . eps(k0, lambda) / kappa_ref with alpha from the Wigner decomposition.
  std::complex<double> predicted;
  /// max |L eps(k) - eps(Lk) e^{-i lambda w} - c (Lk)|.
  double residual = 0;
  /// |(Lk) . eps(Lk)|.
  double lorentz_condition = 0;
  double w = 0;
};

CovarianceResult covariance_residual(const LorentzMatrixd& L, const FourVectord& k,
                                     Helicity h, double kappa_ref = 1.0);

}  // namespace photon
