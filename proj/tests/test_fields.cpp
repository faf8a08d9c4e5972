#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "photon/fields.hpp"
#include "support.hpp"

using namespace photon;
using testing::C;
using testing::kPi;
using testing::max_abs;

namespace {

// Narrowband fields written out: G the normalized Gaussian envelope, carrier along z.
ElectroMagnetic closed_form(double kappa, double sigma_k, const FourVectord& x) {
  const double sx = 1 / (2 * sigma_k);
  const Eigen::Vector3d r = x.tail<3>() - Eigen::Vector3d(0, 0, x(0));
  const double G = std::exp(-r.squaredNorm() / (4 * sx * sx)) / std::pow(2 * kPi * sx * sx, 0.75);
  const double phase = kappa * (x(3) - x(0));
  const double a = std::sqrt(kappa) * G;
  ElectroMagnetic f;
  f.E = Eigen::Vector3d(a * std::cos(phase), -a * std::sin(phase), 0);
  f.B = Eigen::Vector3d(a * std::sin(phase), a * std::cos(phase), 0);
  return f;
}

// d^mu = g^{mu mu} d_mu applied to the real potential by central differences.
FieldTensor curl_of_potential(const FieldEvaluator& ev, const FourVectord& x, double h) {
  Eigen::Matrix4d dA;  // dA(mu, nu) = d_mu A^nu
  for (int mu = 0; mu < 4; ++mu) {
    FourVectord step = FourVectord::Zero();
    step(mu) = h;
    dA.row(mu) = ((ev.potential(x + step) - ev.potential(x - step)).real() / (2 * h)).transpose();
  }
  const Eigen::Vector4d g(1, -1, -1, -1);
  FieldTensor F;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      F(mu, nu) = g(mu) * dA(mu, nu) - g(nu) * dA(nu, mu);
    }
  }
  return F;
}

}  // namespace

TEST_CASE("field tensor layout") {
  ElectroMagnetic f;
  f.E = Eigen::Vector3d(1, 2, 3);
  f.B = Eigen::Vector3d(4, 5, 6);
  const FieldTensor F = field_tensor(f);
  CHECK(F(0, 1) == -1);
  CHECK(F(0, 3) == -3);
  CHECK(F(1, 2) == -6);
  CHECK(F(2, 3) == -4);
  CHECK(F(3, 1) == -5);
  CHECK(max_abs(F + F.transpose()) == 0);
  const ElectroMagnetic back = decode(F);
  CHECK((back.E - f.E).norm() == 0);
  CHECK((back.B - f.B).norm() == 0);
  CHECK(field_prefactor() == doctest::Approx(1 / std::sqrt(16 * kPi * kPi * kPi)));
}

TEST_CASE("narrowband closed form") {
  const NarrowbandSpec spec{1.3, 0.02, Helicity::plus};
  CHECK(spec.sigma_x() == doctest::Approx(25));
  testing::Gen gen(61);
  for (int n = 0; n < 300; ++n) {
    const double t = gen.uniform(-10, 10);
    const FourVectord x(t, gen.uniform(-40, 40), gen.uniform(-40, 40), t + gen.uniform(-40, 40));
    const ElectroMagnetic f = field_expectation_narrowband(spec, x).field;
    const ElectroMagnetic g = closed_form(spec.kappa, spec.sigma_k, x);
    const double peak = std::sqrt(spec.kappa) * narrowband_envelope(spec, FourVectord(t, 0, 0, t));
    CHECK((f.E - g.E).norm() < 1e-12 * peak);
    CHECK((f.B - g.B).norm() < 1e-12 * peak);
    CHECK(std::abs(f.E.dot(f.B)) < 1e-12 * peak * peak);
    const double G = narrowband_envelope(spec, x);
    CHECK(f.E.squaredNorm() == doctest::Approx(spec.kappa * G * G).epsilon(1e-12));
    CHECK(f.B.squaredNorm() == doctest::Approx(spec.kappa * G * G).epsilon(1e-12));
  }
  CHECK_FALSE(field_expectation_narrowband(spec, FourVectord(0.09 * spec.time_window(), 0, 0, 0)).outside_window);
  CHECK(field_expectation_narrowband(spec, FourVectord(0.11 * spec.time_window(), 0, 0, 0)).outside_window);
}

TEST_CASE("handedness") {
  for (Helicity h : {Helicity::plus, Helicity::minus}) {
    const NarrowbandSpec spec{1.0, 0.05, h};
    const HelicityAmplitude psi = spec.amplitude();
    const FieldEvaluator ev(psi);
    for (double z : {0.0, 0.4, 1.3}) {
      const FourVectord x(0, 0.5, -0.2, z);
      const double d = 0.05;
      const Eigen::Vector3d e1 = decode(ev.expectation(x)).E;
      const Eigen::Vector3d e2 = decode(ev.expectation(x + FourVectord(d, 0, 0, 0))).E;
      const Eigen::Vector3d n1 = field_expectation_narrowband(spec, x).field.E;
      const Eigen::Vector3d n2 = field_expectation_narrowband(spec, x + FourVectord(d, 0, 0, 0)).field.E;
      const int sign = to_int(h);
      CHECK(sign * e1.cross(e2).z() > 0);
      CHECK(sign * n1.cross(n2).z() > 0);
    }
  }
}

TEST_CASE("exact fields") {
  const NarrowbandSpec spec{1.0, 0.01, Helicity::plus};
  const HelicityAmplitude psi = spec.amplitude();
  const FieldEvaluator ev(psi);
  const double sx = spec.sigma_x();
  const double peak = std::sqrt(spec.kappa) * narrowband_envelope(spec, FourVectord::Zero());

  SUBCASE("agree with the closed form on the axis") {
    double worst = 0;
    for (double z = -2 * sx; z <= 2 * sx; z += sx / 7) {
      const FourVectord x(0, 0, 0, z);
      const ElectroMagnetic e = decode(ev.expectation(x));
      const ElectroMagnetic n = field_expectation_narrowband(spec, x).field;
      worst = std::max(worst, std::max((e.E - n.E).norm(), (e.B - n.B).norm()) / peak);
    }
    CHECK(worst <= 3 * spec.sigma_k / spec.kappa);
    CHECK(worst > 0);
  }
  SUBCASE("vanish far from the envelope") {
    for (const Eigen::Vector3d& dir :
         {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0.6, 0, -0.8)}) {
      const FourVectord x(0, 11 * sx * dir.x(), 11 * sx * dir.y(), 11 * sx * dir.z());
      CHECK(max_abs(ev.expectation(x)) < 1e-8 * peak);
    }
  }
  SUBCASE("positive frequency plus its conjugate") {
    testing::Gen gen(62);
    for (int n = 0; n < 20; ++n) {
      const FourVectord x(gen.uniform(-5, 5), gen.uniform(-sx, sx), gen.uniform(-sx, sx), gen.uniform(-sx, sx));
      const ComplexTensor Fp = ev.positive_frequency(x);
      CHECK(max_abs(Eigen::Matrix4d((Fp + Fp.conjugate()).real()) - ev.expectation(x)) < 1e-15);
      CHECK(max_abs(Fp + Fp.transpose()) == 0);
    }
    CHECK(max_abs(Eigen::Matrix4d(positive_frequency_field(psi, FourVectord::Zero()).real() * 2) -
                  field_expectation_exact(psi, FourVectord::Zero())) < 1e-15);
  }
  SUBCASE("zero amplitude gives zero field") {
    const HelicityAmplitude zero = scaled(0.0, psi);
    CHECK(max_abs(field_expectation_exact(zero, FourVectord(0, 1, 2, 3))) == 0);
    const MaxwellResidual r = maxwell_residual(zero, FourVectord::Zero(), 0.1);
    CHECK(r.divergence == 0);
    CHECK(r.bianchi == 0);
  }
}

TEST_CASE("grid energy and momentum") {
  const NarrowbandSpec spec{1.0, 0.05, Helicity::minus};
  const GridRequirements req = narrowband_requirements(spec, 0);
  CHECK(req.carrier.z() == spec.kappa);
  const GridSpec grid = minimal_grid(req, 48);
  CHECK_NOTHROW(check_resolution(grid, req));
  CHECK(grid.spacing.z() <= 2 * kPi / (kPointsPerWavelength * spec.kappa));
  CHECK(grid.dims[0] == 48);

  const FieldTensorGrid fields = narrowband_grid(spec, grid, 0);
  const FourVectord p = energy_momentum_integrals(fields);
  CHECK(p(0) == doctest::Approx(spec.kappa).epsilon(0.01));
  CHECK(p(3) == doctest::Approx(spec.kappa).epsilon(0.01));
  CHECK(std::abs(p(1)) < 1e-3);
  CHECK(std::abs(p(2)) < 1e-3);

  FieldTensorGrid empty(grid, 0);
  CHECK(max_abs(energy_momentum_integrals(empty)) == 0);

  GridSpec coarse = grid;
  coarse.dims[2] = 100;
  coarse.spacing.z() *= double(grid.dims[2] - 1) / 99;
  FieldTensorGrid checked(coarse, 0);
  checked.requirements = req;
  try {
    energy_momentum_integrals(checked);
    FAIL("expected ResolutionError");
  } catch (const ResolutionError& e) {
    CHECK(e.required_dims[2] > 100);
    CHECK(e.required_spacing.z() == doctest::Approx(2 * kPi / (kPointsPerWavelength * spec.kappa)));
    CHECK(std::string(e.what()).find("need") != std::string::npos);
  }

  GridSpec narrow = grid;
  narrow.spacing.x() *= 0.5;
  CHECK_THROWS_AS(check_resolution(narrow, req), ResolutionError);
}

TEST_CASE("grid trapezoid weights") {
  const GridSpec g = GridSpec::centered(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 2, 4), {3, 5, 9});
  CHECK((g.position(0, 0, 0) - Eigen::Vector3d(0, 0, -1)).norm() < 1e-15);
  CHECK((g.position(2, 4, 8) - Eigen::Vector3d(2, 4, 7)).norm() < 1e-15);
  double total = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int l = 0; l < 9; ++l) {
        total += g.weight(i, j, l);
      }
    }
  }
  CHECK(total == doctest::Approx(2 * 4 * 8));
}

TEST_CASE("Maxwell residuals") {
  SUBCASE("narrowband packets at h = sigma_x / 50") {
    for (double ratio : {0.1, 0.03}) {
      const NarrowbandSpec spec{1.0, ratio, Helicity::plus};
      const FieldEvaluator ev(spec.amplitude());
      const double sx = spec.sigma_x();
      for (const FourVectord& x : {FourVectord(0, 0.3 * sx, 0.2 * sx, 0.1 * sx), FourVectord(0.5, -0.4 * sx, 0.1, 0.6 * sx)}) {
        const MaxwellResidual r = maxwell_residual(ev, x, sx / 50);
        CHECK(r.divergence <= 1e-3);
        CHECK(r.bianchi <= 1e-3);
      }
    }
  }
  SUBCASE("second-order convergence") {
    const HelicityAmplitude psi =
        gaussian_wavepacket(Eigen::Vector3d(0.4, -0.3, 0.8), 0.1, C(0.8, 0), C(0, 0.6), 24);
    const FieldEvaluator ev(psi);
    const FourVectord x(0.2, 1.0, -0.5, 0.7);
    const MaxwellResidual a = maxwell_residual(ev, x, 0.2);
    const MaxwellResidual b = maxwell_residual(ev, x, 0.1);
    const MaxwellResidual c = maxwell_residual(ev, x, 0.05);
    CHECK(a.divergence / b.divergence == doctest::Approx(4).epsilon(0.125));
    CHECK(b.divergence / c.divergence == doctest::Approx(4).epsilon(0.125));
    CHECK(a.bianchi / b.bianchi == doctest::Approx(4).epsilon(0.125));
    CHECK(b.bianchi / c.bianchi == doctest::Approx(4).epsilon(0.125));
  }
}

TEST_CASE("local covariance") {
  const HelicityAmplitude psi = gaussian_wavepacket(Eigen::Vector3d(0, 0, 1), 0.1, Helicity::plus);
  std::vector<FourVectord> points;
  testing::Gen gen(63);
  for (int n = 0; n < 4; ++n) {
    const Eigen::Vector3d r = 2.5 * gen.unit();
    points.emplace_back(gen.uniform(-1, 1), r.x(), r.y(), r.z());
  }
  CHECK(tensor_covariance_check(psi, LorentzMatrixd::Identity(), points) == 0);
  CHECK(tensor_covariance_check(psi, rotation_z(0.7), points) <= 1e-6);
  CHECK(tensor_covariance_check(psi, boost_matrix(Eigen::Vector3d(0, 0, 0.3)), points) <= 1e-5);
  CHECK(tensor_covariance_check(psi, rotation_matrix(AxisAngled(Eigen::Vector3d(1, 1, 0), 0.5)), points) <= 1e-6);
}

TEST_CASE("photon wavefunctions") {
  const HelicityAmplitude psi =
      gaussian_wavepacket(Eigen::Vector3d(0.2, 0.1, 1), 0.1, C(0.6, 0.2), C(-0.3, 0.7));
  const GaugeFunction gauge = [](const FourVectord& k, Helicity h) {
    return C(0.3 * k(1), -0.2 * to_int(h)) + C(0, k(3));
  };
  const FieldEvaluator ev(psi);
  const FieldEvaluator shifted(psi, gauge);
  testing::Gen gen(64);
  for (int n = 0; n < 20; ++n) {
    const FourVectord x(gen.uniform(-2, 2), gen.uniform(-5, 5), gen.uniform(-5, 5), gen.uniform(-5, 5));
    const Eigen::Vector3cd psi_s = ev.sipe_invariant(x);
    const Eigen::Vector3cd e_plus = decode(ev.positive_frequency(x)).E;
    const double scale = std::max(psi_s.norm(), 1e-12);
    CHECK(max_abs(psi_s + std::sqrt(2.0) * e_plus) < 1e-12 * scale);
    CHECK(max_abs(shifted.sipe_invariant(x) - psi_s) < 1e-12 * scale);
    CHECK(max_abs(shifted.expectation(x) - ev.expectation(x)) < 1e-12 * scale);
    CHECK(ev.bb_density(x) >= 0);
    CHECK(ev.potential(x)(0) == C(0));
  }
  const FourVectord x0(0, 0.5, 0.5, 0.5);
  CHECK(max_abs(shifted.sipe(x0) - ev.sipe(x0)) > 1e-6);
  CHECK(max_abs(shifted.potential(x0) - ev.potential(x0)) > 1e-6);
  CHECK(bb_density(psi, x0) == doctest::Approx(ev.bb_density(x0)));
}

TEST_CASE("potential reproduces the field") {
  const HelicityAmplitude psi = gaussian_wavepacket(Eigen::Vector3d(0.3, 0, 0.9), 0.1, C(1, 0), C(0.5, 0.5), 32);
  const GaugeFunction gauge = [](const FourVectord& k, Helicity) { return C(0.1, 0.2) * k(2); };
  for (const GaugeFunction& g : {GaugeFunction{}, gauge}) {
    const FieldEvaluator ev(psi, g);
    const FourVectord x(0.1, 0.4, -0.3, 0.6);
    const FieldTensor F = ev.expectation(x);
    const double e1 = max_abs(curl_of_potential(ev, x, 0.2) - F);
    const double e2 = max_abs(curl_of_potential(ev, x, 0.1) - F);
    CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.1));
    CHECK(e2 < 1e-2 * max_abs(F));
  }
}

TEST_CASE("energy densities integrate to the energy") {
  const HelicityAmplitude psi = gaussian_wavepacket(Eigen::Vector3d(0, 0, 1), 0.1, C(0.8, 0), C(0, 0.6), 32);
  const double energy = expectation_momentum(psi).value(0);
  const double sx = 5;
  const GridSpec grid = GridSpec::centered(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(6 * sx), {40, 40, 40});

  const DualRoute sipe = sipe_energy_integral(psi, grid);
  CHECK(sipe.momentum_route == doctest::Approx(energy).epsilon(1e-6));
  CHECK(sipe.spatial_route == doctest::Approx(sipe.momentum_route).epsilon(1e-3));
  const DualRoute bb = bb_energy_integral(psi, grid);
  CHECK(bb.spatial_route == doctest::Approx(energy).epsilon(1e-3));
  CHECK(bb.momentum_route == doctest::Approx(energy).epsilon(1e-12));

  const DualRoute doubled = sipe_energy_integral(scaled(2.0, psi), grid);
  CHECK(doubled.spatial_route == doctest::Approx(4 * sipe.spatial_route).epsilon(1e-12));
  CHECK(doubled.momentum_route == doctest::Approx(4 * sipe.momentum_route).epsilon(1e-12));
}

TEST_CASE("rho differs from the classical energy density") {
  const double sx = 5;
  std::vector<FourVectord> points;
  for (double z = -sx; z <= sx; z += 0.37) {
    points.emplace_back(0, 0.3, -0.2, z);
  }
  auto worst = [&](const HelicityAmplitude& psi) {
    const FieldEvaluator ev(psi);
    double peak = 0;
    double diff = 0;
    for (const FourVectord& x : points) {
      const ElectroMagnetic f = decode(ev.expectation(x));
      const double classical = 0.5 * (f.E.squaredNorm() + f.B.squaredNorm());
      const double rho = ev.bb_density(x);
      peak = std::max(peak, rho);
      diff = std::max(diff, std::abs(rho - classical));
    }
    return diff / peak;
  };
  const double s = 1 / std::sqrt(2.0);
  CHECK(worst(gaussian_wavepacket(Eigen::Vector3d(0, 0, 1), 0.1, C(s, 0), C(s, 0), 32)) > 0.1);
  CHECK(worst(gaussian_wavepacket(Eigen::Vector3d(0, 0, 1), 0.1, Helicity::plus, 32)) < 0.05);
}

TEST_CASE("localization scale") {
  CHECK(localization_scale(3.3, 0.01) == doctest::Approx(2.990).epsilon(1e-3));
  CHECK(localization_scale(3.3, 0.02) == doctest::Approx(1.495).epsilon(1e-3));
  CHECK(localization_scale(1.65, 0.01) == doctest::Approx(5.98).epsilon(1e-3));
  CHECK(localization_scale(3.3, 0.01) == doctest::Approx(kHbarCeVnm / (2 * 0.01 * 3.3) / 1000));
  CHECK_THROWS_AS(localization_scale(3.3, 0.1), DomainError);
  CHECK_THROWS_AS(localization_scale(3.3, 0.0), DomainError);
  CHECK_THROWS_AS(localization_scale(0.0, 0.01), DomainError);
}
