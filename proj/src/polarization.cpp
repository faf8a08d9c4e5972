#include "photon/polarization.hpp"

#include "photon/wigner.hpp"

#include <cmath>

namespace photon {

PolarizationVector reference_polarization(Helicity h, double kappa_ref) {
  using C = std::complex<double>;
  const double s = 1 / std::sqrt(2.0);
  ComplexFourVectord eps;
  if (h == Helicity::plus) {
    eps << 0, -s, C(0, -s), 0;
  } else {
    eps << 0, s, C(0, -s), 0;
  }
  return {eps, reference_momentum(kappa_ref), h};
}

PolarizationVector polarization(const FourVectord& k, Helicity h) {
  if (!is_lightlike(k)) {
    throw DomainError("polarization: momentum is not lightlike with k0 > 0");
  }
  const LorentzMatrixd R = standard_rotation(Eigen::Vector3d(k.tail<3>()));
  const ComplexFourVectord eps =
      R.cast<std::complex<double>>() * reference_polarization(h).eps;
  return {eps, k, h};
}

PolarizationVector polarization(const FourVectord& k, Helicity h, double kappa_ref) {
  const LorentzMatrixd L = standard_lorentz(k, kappa_ref);
  const ComplexFourVectord eps =
      L.cast<std::complex<double>>() * reference_polarization(h, kappa_ref).eps;
  return {eps, k, h};
}

PolarizationVector gauge_shift(const PolarizationVector& p, std::complex<double> f) {
  PolarizationVector out = p;
  out.eps += f * p.k.cast<std::complex<double>>();
  return out;
}

FieldTensorCoeff tensor_coeff(const PolarizationVector& p) {
  const ComplexFourVectord k = p.k.cast<std::complex<double>>();
  const ComplexTensor kE = k * p.eps.transpose();
  return {kE - kE.transpose(), p.k, p.helicity};
}

std::complex<double> lorentz_condition(const PolarizationVector& p) {
  return minkowski_dot(p.k.cast<std::complex<double>>(), p.eps);
}

std::complex<double> hermitian_dot(const ComplexFourVectord& a, const ComplexFourVectord& b) {
  return minkowski_dot(a.conjugate(), b);
}

CovarianceResult covariance_residual(const LorentzMatrixd& L, const FourVectord& k,
                                     Helicity h, double kappa_ref) {
  using C = std::complex<double>;
  const WignerData wd = wigner_boost(L, k, kappa_ref);
  const FourVectord k_out = L * k;
  const PolarizationVector out = polarization(k_out, h);
  const ComplexFourVectord lhs = L.cast<C>() * polarization(k, h).eps;
  const ComplexFourVectord gap = lhs - out.eps * wd.phase(to_int(h));
  // minimize |gap - c k_out| over complex c
  const ComplexFourVectord kc = k_out.cast<C>();
  CovarianceResult r;
  r.coefficient = kc.dot(gap) / k_out.squaredNorm();
  const ComplexFourVectord eps0 = reference_polarization(h).eps;
  r.predicted = (wd.alpha.x() * eps0(1) + wd.alpha.y() * eps0(2)) / kappa_ref;
  r.residual = (gap - r.coefficient * kc).cwiseAbs().maxCoeff();
  r.lorentz_condition = std::abs(lorentz_condition(out));
  r.w = wd.w;
  return r;
}

}  // namespace photon
