#include "photon/verify.hpp"

#include "photon/amplitudes.hpp"
#include "photon/fields.hpp"
#include "photon/little_group.hpp"
#include "photon/polarization.hpp"
#include "photon/wigner.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace photon {
namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Eigen::Vector3d unit() {
    std::normal_distribution<double> n;
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(n(rng_), n(rng_), n(rng_));
    } while (v.norm() < 1e-6);
    return v.normalized();
  }

  /// Unit vector with |cos theta| <= 0.99.
  Eigen::Vector3d off_pole_unit() {
    Eigen::Vector3d v;
    do {
      v = unit();
    } while (std::abs(v.z()) > 0.99);
    return v;
  }

  /// Packet directions stay away from the south pole, where the standard
  /// polarization frame is singular and a real-valued Psi has a phase vortex.
  Eigen::Vector3d packet_direction() {
    Eigen::Vector3d v;
    do {
      v = unit();
    } while (v.z() < -0.3);
    return v;
  }

  FourVectord lightlike() { return null_vector(Eigen::Vector3d(uniform(0.2, 5) * off_pole_unit())); }

  AxisAngled rotation() { return {unit(), uniform(-kPi, kPi)}; }

  Eigen::Vector3d velocity(double max_speed) { return uniform(0, max_speed) * unit(); }

  IbrParameterd alpha(double range) { return {uniform(-range, range), uniform(-range, range)}; }

  C complex(double range) { return {uniform(-range, range), uniform(-range, range)}; }

 private:
  std::mt19937_64 rng_;
};

class Tracker {
 public:
  Tracker(std::string name, double threshold) : result_{std::move(name), 0, threshold} {}

  void add(double residual) {
    if (std::isnan(result_.max_residual)) {
      return;
    }
    if (std::isnan(residual) || residual > result_.max_residual) {
      result_.max_residual = residual;
    }
  }
  const PropertyResult& result() const { return result_; }

 private:
  PropertyResult result_;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

LorentzMatrixd from_su2(const Su2Matrixd& u) {
  const Eigen::Quaterniond q(u(0, 0).real(), -u(0, 1).imag(), -u(0, 1).real(), -u(0, 0).imag());
  return embed_rotation(Eigen::Matrix3d(q.normalized().toRotationMatrix()));
}

double metric_error(const LorentzMatrixd& L) {
  return metric_deviation(L) / std::max(1.0, L.squaredNorm());
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.pass(); });
}

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
}

nlohmann::json VerifyReport::to_json(bool timestamp) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "verify";
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass();
  j["suites"] = nlohmann::json::array();
  for (const SuiteReport& s : suites) {
    nlohmann::json js;
    js["name"] = s.name;
    js["trials"] = s.trials;
    js["pass"] = s.pass();
    js["properties"] = nlohmann::json::array();
    for (const PropertyResult& p : s.properties) {
      js["properties"].push_back({{"name", p.name},
                                  {"pass", p.pass()},
                                  {"max_residual", std::isfinite(p.max_residual)
                                                       ? nlohmann::json(p.max_residual)
                                                       : nlohmann::json(nullptr)},
                                  {"threshold", p.threshold}});
    }
    j["suites"].push_back(js);
  }
  if (timestamp) {
    j["wall_seconds"] = wall_seconds;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"little-group", "wigner", "amplitudes",
                                              "polarization", "fields"};
  return names;
}

int default_trials(const std::string& suite) {
  if (suite == "amplitudes" || suite == "fields") {
    return 3;
  }
  return 1000;
}

SuiteReport verify_little_group(int trials, std::uint64_t seed) {
  Sampler s(seed);
  Tracker group("group_law", 1e-12), conj("rz_conjugation", 1e-12), fixes("fixes_k0", 1e-12),
      physical("physical_decomposition", 1e-12), exp_match("generator_exponential", 1e-10),
      commute("generator_commutator", 0), nil("generator_nilpotency", 0),
      round("decomposition_round_trip", 1e-10), metric("metric_preservation", 1e-12),
      standard("standard_lorentz_maps_k0", 1e-10), hom("su2_homomorphism", 1e-10);

  const auto gens = ibr_generators();
  commute.add(max_abs(gens.lx * gens.ly - gens.ly * gens.lx));
  nil.add(std::max(max_abs(gens.lx * gens.lx * gens.lx), max_abs(gens.ly * gens.ly * gens.ly)));

  const FourVectord k0 = reference_momentum(1.0);
  for (int t = 0; t < trials; ++t) {
    const IbrParameterd a1 = s.alpha(2), a2 = s.alpha(2);
    group.add(max_abs(ibr_matrix(a1) * ibr_matrix(a2) - ibr_matrix(a1 + a2)));

    const double gamma = s.uniform(-kPi, kPi);
    const IbrParameterd rotated(Eigen::Rotation2Dd(gamma) * a1.alpha);
    conj.add(max_abs(rotation_z(gamma) * ibr_matrix(a1) * rotation_z(-gamma) - ibr_matrix(rotated)));
    fixes.add(max_abs(ibr_matrix(a1) * k0 - k0));

    const double theta = s.uniform(0.3, kPi - 0.3), phi = s.uniform(-kPi, kPi);
    physical.add(max_abs(ibr_from_angles(theta, phi) - ibr_matrix(alpha_from_angles(theta, phi))));

    const LorentzMatrixd gen = a1.x() * gens.lx + a1.y() * gens.ly;
    exp_match.add(max_abs(LorentzMatrixd(gen.exp()) - ibr_matrix(a1)));

    const LittleGroupElementd el = decompose_little_group(LittleGroupElementd{gamma, a2}.matrix());
    round.add(std::max(std::abs(std::remainder(el.gamma - gamma, 2 * kPi)),
                       (el.alpha.alpha - a2.alpha).cwiseAbs().maxCoeff()));

    LorentzMatrixd product = LorentzMatrixd::Identity();
    const int factors = 1 + t % 8;
    for (int f = 0; f < factors; ++f) {
      product = product * (f % 2 ? rotation_matrix(s.rotation()) : boost_matrix(s.velocity(0.7)));
    }
    metric.add(std::max(metric_error(product), std::abs(product.determinant() - 1) /
                                                   std::max(1.0, std::pow(product.norm(), 4))));
    metric.add(metric_deviation(boost_matrix(s.velocity(0.9))));

    const FourVectord k = s.lightlike();
    standard.add(max_abs(standard_lorentz(k, 1.0) * k0 - k) / k(0));

    const AxisAngled r1 = s.rotation(), r2 = s.rotation();
    hom.add(max_abs(rotation_matrix(r1) * rotation_matrix(r2) -
                    from_su2(su2_matrix(r1) * su2_matrix(r2))));
  }
  return {"little-group",
          trials,
          {group.result(), conj.result(), fixes.result(), physical.result(), exp_match.result(),
           commute.result(), nil.result(), round.result(), metric.result(), standard.result(),
           hom.result()}};
}

SuiteReport verify_wigner(int trials, std::uint64_t seed) {
  Sampler s(seed);
  Tracker rot("rotation_dual_path", 1e-9), boost("boost_dual_path", 1e-9),
      cocycle("rotation_cocycle", 1e-9), about_k("rotation_about_momentum", 1e-9),
      recon("decomposition_residual", 1e-10), unit("half_phase_unit_modulus", 1e-12),
      axial("z_boost_trivial", 1e-12);
  for (int t = 0; t < trials; ++t) {
    const FourVectord k = s.lightlike();
    const AxisAngled r = s.rotation();
    const WignerData wr = wigner_rotation(rotation_matrix(r), k);
    const C closed_r = wigner_phase_rotation_closed(r, k);
    rot.add(std::abs(closed_r * closed_r - std::polar(1.0, -wr.w)));
    unit.add(std::abs(std::abs(closed_r) - 1));
    recon.add(wr.residual);

    const Eigen::Vector3d zeta = s.uniform(0, 2) * s.unit();
    const WignerData wb = wigner_boost(boost_from_rapidity(zeta), k);
    const C closed_b = wigner_phase_boost_closed(zeta, k);
    boost.add(std::abs(closed_b * closed_b - std::polar(1.0, -wb.w)));
    unit.add(std::abs(std::abs(closed_b) - 1));
    recon.add(wb.residual);

    const AxisAngled r2 = s.rotation();
    const LorentzMatrixd R1 = rotation_matrix(r), R2 = rotation_matrix(r2);
    const FourVectord k1 = R1 * k;
    if (std::abs(k1(3)) < 0.99 * k1(0)) {
      const double w21 = wigner_rotation(R2 * R1, k).w;
      const double w2 = wigner_rotation(R2, k1).w;
      cocycle.add(std::abs(std::polar(1.0, -w21) - std::polar(1.0, -w2 - wr.w)));
    }

    const double angle = s.uniform(-kPi, kPi);
    const WignerData wk = wigner_rotation(rotation_matrix(AxisAngled(k.tail<3>(), angle)), k);
    about_k.add(std::abs(std::polar(1.0, -wk.w) - std::polar(1.0, -angle)));

    const WignerData wz = wigner_boost(boost_matrix(Eigen::Vector3d(0, 0, s.uniform(-0.9, 0.9))), k);
    axial.add(std::abs(wz.w));
  }
  return {"wigner",
          trials,
          {rot.result(), boost.result(), cocycle.result(), about_k.result(), recon.result(),
           unit.result(), axial.result()}};
}

SuiteReport verify_amplitudes(int trials, std::uint64_t seed) {
  Sampler s(seed);
  Tracker norm("norm_base", 1e-9), translation("norm_translation", 1e-6),
      rotation("norm_rotation", 1e-6), boost("norm_boost", 1e-6), parity("norm_parity", 1e-6),
      time_rev("norm_time_reversal", 1e-6), cov_boost("momentum_covariance_boost", 1e-6),
      cov_rot("momentum_covariance_rotation", 1e-6), ip("inner_product_invariance", 1e-6),
      flip("parity_flips_helicity", 0), flip_weight("parity_weight_transfer", 1e-12),
      replayed("record_replay", 0);
  for (int t = 0; t < trials; ++t) {
    const double sigma = s.uniform(0.05, 0.15);
    const Eigen::Vector3d kappa = s.unit();
    const Helicity h = t % 2 ? Helicity::minus : Helicity::plus;
    const HelicityAmplitude psi = gaussian_wavepacket(kappa, sigma, h);
    norm.add(std::abs(norm_squared(psi).value - 1));
    const FourVectord p = expectation_momentum(psi).value;

    Eigen::Vector4d a;
    a << s.uniform(-10, 10), (s.uniform(0, 10) * s.unit());
    translation.add(std::abs(norm_squared(psi.translate(a / sigma)).value - 1));

    const AxisAngled r = s.rotation();
    const HelicityAmplitude rotated = psi.rotate(r);
    rotation.add(std::abs(norm_squared(rotated).value - 1));
    cov_rot.add(max_abs(expectation_momentum(rotated).value - rotation_matrix(r) * p) / p(0));

    const Eigen::Vector3d beta = s.velocity(0.9);
    const HelicityAmplitude boosted = psi.boost(beta);
    boost.add(std::abs(norm_squared(boosted).value - 1));
    const FourVectord pb = boost_matrix(beta) * p;
    cov_boost.add(max_abs(expectation_momentum(boosted).value - pb) / pb(0));

    const HelicityAmplitude parity_image = psi.parity();
    parity.add(std::abs(norm_squared(parity_image).value - 1));
    const Helicity flipped = h == Helicity::plus ? Helicity::minus : Helicity::plus;
    flip.add(helicity_weight(parity_image, h).value);
    flip_weight.add(std::abs(helicity_weight(parity_image, flipped).value -
                      helicity_weight(psi, h).value));
    const HelicityAmplitude reversed = psi.time_reverse();
    time_rev.add(std::abs(norm_squared(reversed).value - 1));

    // A second packet overlapping the first; |<U psi1, U psi2>| is invariant.
    const HelicityAmplitude other = gaussian_wavepacket(kappa + sigma * s.unit(), sigma, h);
    const double before = std::abs(inner_product(psi, other).value);
    ip.add(std::abs(std::abs(inner_product(psi.boost(beta), other.boost(beta)).value) - before));
    ip.add(std::abs(std::abs(inner_product(reversed, other.time_reverse()).value) - before));

    const HelicityAmplitude chain = psi.rotate(r).boost(beta).parity().translate(a);
    const HelicityAmplitude again = replay(psi, chain.record());
    for (int n = 0; n < 20; ++n) {
      const Eigen::Vector3d k = kappa + 2 * sigma * s.unit();
      const HelicityPair x = chain(k), y = again(k);
      replayed.add(std::max(std::abs(x.plus - y.plus), std::abs(x.minus - y.minus)));
    }
  }
  return {"amplitudes",
          trials,
          {norm.result(), translation.result(), rotation.result(), boost.result(),
           parity.result(), time_rev.result(), cov_boost.result(), cov_rot.result(), ip.result(),
           flip.result(), flip_weight.result(), replayed.result()}};
}

SuiteReport verify_polarization(int trials, std::uint64_t seed) {
  Sampler s(seed);
  Tracker ortho("orthonormality", 1e-12), lorentz("lorentz_condition", 1e-12),
      little_rot("little_group_rotation", 1e-12), little_ibr("little_group_ibr", 1e-12),
      rot_cov("rotation_covariance", 1e-10), boost_cov("boost_covariance_residual", 1e-10),
      boost_coef("boost_gauge_coefficient", 1e-10), gauge("tensor_gauge_invariance", 1e-12),
      standard("standard_frame_agreement", 1e-12);
  const double kappa = 1.0;
  const Helicity both[2] = {Helicity::plus, Helicity::minus};
  for (int t = 0; t < trials; ++t) {
    const FourVectord k = s.lightlike();
    for (Helicity h1 : both) {
      const PolarizationVector e1 = polarization(k, h1);
      lorentz.add(std::abs(lorentz_condition(e1)) / k(0));
      standard.add(max_abs(e1.eps - polarization(k, h1, kappa).eps));
      for (Helicity h2 : both) {
        const C expected = h1 == h2 ? -1.0 : 0.0;
        ortho.add(std::abs(hermitian_dot(e1.eps, polarization(k, h2).eps) - expected));
      }
    }
    const Helicity h = both[t % 2];
    const int lam = to_int(h);
    const PolarizationVector e0 = reference_polarization(h, kappa);
    const double gamma = s.uniform(-kPi, kPi);
    little_rot.add(max_abs(rotation_z(gamma) * e0.eps - e0.eps * std::polar(1.0, -lam * gamma)));
    const IbrParameterd a = s.alpha(2);
    const C shift = (a.x() * e0.eps(1) + a.y() * e0.eps(2)) / kappa;
    little_ibr.add(max_abs(ibr_matrix(a).cast<C>() * e0.eps - e0.eps - shift * e0.k.cast<C>()));

    const AxisAngled r = s.rotation();
    const LorentzMatrixd R = rotation_matrix(r);
    const FourVectord rk = R * k;
    if (std::abs(rk(3)) < 0.999 * rk(0)) {
      const double w = wigner_rotation(R, k).w;
      rot_cov.add(max_abs(R.cast<C>() * polarization(k, h).eps -
                          polarization(rk, h).eps * std::polar(1.0, -lam * w)));
    }

    const LorentzMatrixd B = boost_matrix(s.velocity(0.9));
    const CovarianceResult cov = covariance_residual(B, k, h, kappa);
    boost_cov.add(cov.residual);
    boost_coef.add(std::abs(cov.coefficient - cov.predicted));

    const PolarizationVector e = polarization(k, h);
    const ComplexTensor T = tensor_coeff(e).T;
    const C f = s.complex(5);
    gauge.add(max_abs(tensor_coeff(gauge_shift(e, f)).T - T) / k(0));
  }
  return {"polarization",
          trials,
          {ortho.result(), lorentz.result(), little_rot.result(), little_ibr.result(),
           rot_cov.result(), boost_cov.result(), boost_coef.result(), gauge.result(),
           standard.result()}};
}

SuiteReport verify_fields(int trials, std::uint64_t seed) {
  Sampler s(seed);
  Tracker energy("narrowband_energy", 0.01), momentum("narrowband_momentum", 0.01),
      maxwell("maxwell_h2_convergence", 0.5), rot_cov("tensor_covariance_rotation", 1e-6),
      boost_cov("tensor_covariance_boost", 1e-5), sipe("sipe_energy", 5e-3),
      bb("bb_energy", 5e-3), sipe_id("sipe_identity", 1e-12);

  const NarrowbandSpec spec{1.0, 0.01, Helicity::plus};
  const double t0 = s.uniform(-0.05, 0.05) * spec.time_window();
  const GridSpec grid = minimal_grid(narrowband_requirements(spec, t0), 48);
  const FourVectord pm = energy_momentum_integrals(narrowband_grid(spec, grid, t0));
  energy.add(std::abs(pm(0) - spec.kappa) / spec.kappa);
  momentum.add((pm.tail<3>() - Eigen::Vector3d(0, 0, spec.kappa)).norm() / spec.kappa);

  for (int t = 0; t < trials; ++t) {
    const Helicity h = t % 2 ? Helicity::minus : Helicity::plus;
    const Eigen::Vector3d dir = s.packet_direction();
    const double sigma = 0.1;
    const HelicityAmplitude loose = gaussian_wavepacket(dir, sigma, h, 24);
    const FieldEvaluator ev(loose);
    const double sx = 1 / (2 * sigma);
    const FourVectord x = make_four_vector(0.0, Eigen::Vector3d(sx * s.uniform(-0.5, 0.5) * s.unit()));
    double prev = 0;
    for (int step = 0; step < 3; ++step) {
      const MaxwellResidual m = maxwell_residual(ev, x, 0.2 / (1 << step));
      const double r = std::max(m.divergence, m.bianchi);
      if (step > 0) {
        maxwell.add(std::abs(prev / r - 4));
      }
      prev = r;
    }

    const HelicityAmplitude psi = gaussian_wavepacket(dir, sigma, h);
    std::vector<FourVectord> points;
    for (int n = 0; n < 4; ++n) {
      const double t = s.uniform(-sx, sx);
      points.push_back(make_four_vector(t, Eigen::Vector3d(t * dir + 0.5 * sx * s.unit())));
    }
    rot_cov.add(tensor_covariance_check(psi, rotation_matrix(s.rotation()), points));
    boost_cov.add(tensor_covariance_check(psi, boost_matrix(s.velocity(0.3)), points));

    const FieldEvaluator full(psi);
    for (const FourVectord& p : points) {
      const Eigen::Vector3cd e_plus = decode(full.positive_frequency(p)).E;
      sipe_id.add((full.sipe_invariant(p) + std::sqrt(2.0) * e_plus).cwiseAbs().maxCoeff() /
                  std::max(1e-300, e_plus.cwiseAbs().maxCoeff()));
    }

    const GridSpec g = GridSpec::centered(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(6 * sx), {48, 48, 48});
    const DualRoute sr = sipe_energy_integral(psi, g);
    sipe.add(std::abs(sr.spatial_route - sr.momentum_route) / sr.momentum_route);
    const DualRoute br = bb_energy_integral(psi, g);
    bb.add(std::abs(br.spatial_route - br.momentum_route) / br.momentum_route);
  }
  return {"fields",
          trials,
          {energy.result(), momentum.result(), maxwell.result(), rot_cov.result(),
           boost_cov.result(), sipe.result(), bb.result(), sipe_id.result()}};
}

VerifyReport run_verify(const VerifyOptions& options) {
  static const std::map<std::string, std::function<SuiteReport(int, std::uint64_t)>> suites{
      {"little-group", verify_little_group}, {"wigner", verify_wigner},
      {"amplitudes", verify_amplitudes},     {"polarization", verify_polarization},
      {"fields", verify_fields}};
  std::vector<std::string> selected;
  if (options.suite == "all") {
    selected = suite_names();
  } else if (suites.count(options.suite)) {
    selected = {options.suite};
  } else {
    throw std::invalid_argument("unknown suite \"" + options.suite + "\"");
  }
  if (options.trials && *options.trials < 1) {
    throw std::invalid_argument("trials must be positive");
  }

  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = options.suite;
  report.seed = options.seed;
  for (const std::string& name : selected) {
    SuiteReport r = suites.at(name)(options.trials.value_or(default_trials(name)), options.seed);
    if (options.tol) {
      for (PropertyResult& p : r.properties) {
        p.threshold = *options.tol;
      }
    }
    report.suites.push_back(std::move(r));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace photon
