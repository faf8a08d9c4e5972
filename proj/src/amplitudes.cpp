#include "photon/amplitudes.hpp"

#include "photon/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace photon {
namespace {

constexpr double kPolePerturbation = 1e-13;

// Nodes exactly on the z axis have no azimuth; nudge them off it.
Eigen::Vector3d off_pole(Eigen::Vector3d k) {
  if (k.x() == 0 && k.y() == 0) {
    k.x() = kPolePerturbation * std::abs(k.z());
  }
  return k;
}

double azimuth(const Eigen::Vector3d& k) { return std::atan2(k.y(), k.x()); }

// Bounding box of the images of a 3x3x3 lattice spanning the box.
template <typename Map>
QuadDomain box_image(const QuadDomain& d, Map&& map) {
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::max());
  Eigen::Vector3d hi = -lo;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      for (int l = -1; l <= 1; ++l) {
        const Eigen::Vector3d p =
            d.center + d.half_width.cwiseProduct(Eigen::Vector3d(i, j, l));
        const Eigen::Vector3d q = map(p);
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
      }
    }
  }
  QuadDomain out = d;
  out.center = (lo + hi) / 2;
  out.half_width = (hi - lo) / 2;
  return out;
}

}  // namespace

Helicity helicity_from_int(int value) {
  if (value == 1) {
    return Helicity::plus;
  }
  if (value == -1) {
    return Helicity::minus;
  }
  throw DomainError("photon helicity must be +1 or -1, got " + std::to_string(value));
}

std::string op_name(const TransformOp& op) {
  struct Visitor {
    std::string operator()(const Translation&) const { return "translation"; }
    std::string operator()(const Rotation&) const { return "rotation"; }
    std::string operator()(const Boost&) const { return "boost"; }
    std::string operator()(const Parity&) const { return "parity"; }
    std::string operator()(const TimeReversal&) const { return "time_reversal"; }
  };
  return std::visit(Visitor{}, op);
}

HelicityAmplitude::HelicityAmplitude(Function f, QuadDomain domain)
    : fn_(std::make_shared<const Function>(std::move(f))), domain_(domain) {}

HelicityAmplitude HelicityAmplitude::derived(Function f, QuadDomain domain,
                                             TransformOp op) const {
  HelicityAmplitude out(std::move(f), domain);
  out.record_ = record_;
  out.record_.push_back(std::move(op));
  return out;
}

HelicityAmplitude HelicityAmplitude::with_domain(const QuadDomain& domain) const {
  HelicityAmplitude out = *this;
  out.domain_ = domain;
  return out;
}

HelicityAmplitude HelicityAmplitude::translate(const FourVectord& a) const {
  auto prev = fn_;
  return derived(
      [prev, a](const Eigen::Vector3d& k) {
        const double phase = k.norm() * a(0) - k.dot(a.tail<3>());
        const std::complex<double> f = std::polar(1.0, phase);
        const HelicityPair p = (*prev)(k);
        return HelicityPair{p.plus * f, p.minus * f};
      },
      domain_, Translation{a});
}

HelicityAmplitude HelicityAmplitude::rotate(const AxisAngled& r) const {
  auto prev = fn_;
  const LorentzMatrixd R = rotation_matrix(r);
  const Eigen::Matrix3d inverse = r.matrix3().transpose();
  const Eigen::Matrix3d forward = r.matrix3();
  return derived(
      [prev, R, inverse](const Eigen::Vector3d& k_in) {
        if (k_in.isZero()) {
          return HelicityPair{};
        }
        const Eigen::Vector3d k = off_pole(k_in);
        const Eigen::Vector3d q = inverse * k;
        const WignerData w = wigner_rotation(R, null_vector(q));
        const HelicityPair p = (*prev)(q);
        return HelicityPair{p.plus * w.phase(1), p.minus * w.phase(-1)};
      },
      box_image(domain_, [&](const Eigen::Vector3d& p) { return Eigen::Vector3d(forward * p); }),
      Rotation{r});
}

HelicityAmplitude HelicityAmplitude::boost(const Eigen::Vector3d& beta) const {
  auto prev = fn_;
  const LorentzMatrixd L = boost_matrix(beta);
  const LorentzMatrixd inverse = lorentz_inverse(L);
  const double gamma = L(0, 0);
  return derived(
      [prev, L, inverse, beta, gamma](const Eigen::Vector3d& k_in) {
        if (k_in.isZero()) {
          return HelicityPair{};
        }
        const Eigen::Vector3d k = off_pole(k_in);
        const Eigen::Vector3d q = (inverse * null_vector(k)).tail<3>();
        const double factor = std::sqrt(gamma * (1 - beta.dot(k) / k.norm()));
        const WignerData w = wigner_boost(L, null_vector(q));
        const HelicityPair p = (*prev)(q);
        return HelicityPair{p.plus * (factor * w.phase(1)),
                            p.minus * (factor * w.phase(-1))};
      },
      box_image(domain_,
                [&](const Eigen::Vector3d& p) {
                  return Eigen::Vector3d((L * null_vector(p)).tail<3>());
                }),
      Boost{beta});
}

HelicityAmplitude HelicityAmplitude::parity() const {
  auto prev = fn_;
  QuadDomain d = domain_;
  d.center = -d.center;
  return derived(
      [prev](const Eigen::Vector3d& k_in) {
        const Eigen::Vector3d k = off_pole(k_in);
        const double phi = azimuth(k);
        const HelicityPair p = (*prev)(-k);
        return HelicityPair{kIntrinsicParity * p.minus * std::polar(1.0, 2 * phi),
                            kIntrinsicParity * p.plus * std::polar(1.0, -2 * phi)};
      },
      d, Parity{});
}

HelicityAmplitude HelicityAmplitude::time_reverse() const {
  auto prev = fn_;
  QuadDomain d = domain_;
  d.center = -d.center;
  return derived(
      [prev](const Eigen::Vector3d& k_in) {
        const Eigen::Vector3d k = off_pole(k_in);
        const double phi = azimuth(k);
        const HelicityPair p = (*prev)(-k);
        return HelicityPair{std::conj(p.plus) * std::polar(1.0, -2 * phi),
                            std::conj(p.minus) * std::polar(1.0, 2 * phi)};
      },
      d, TimeReversal{});
}

HelicityAmplitude HelicityAmplitude::lorentz(const LorentzMatrixd& L) const {
  if (!is_proper_orthochronous(L)) {
    throw DomainError("lorentz: not a proper orthochronous transformation");
  }
  const auto [beta, R] = split_boost_rotation(L);
  const Eigen::AngleAxisd aa(Eigen::Matrix3d(R.bottomRightCorner<3, 3>()));
  HelicityAmplitude out = *this;
  if (aa.angle() != 0) {
    out = out.rotate(AxisAngled(aa.axis(), aa.angle()));
  }
  if (!beta.isZero()) {
    out = out.boost(beta);
  }
  return out;
}

HelicityAmplitude HelicityAmplitude::apply(const TransformOp& op) const {
  struct Visitor {
    const HelicityAmplitude& self;
    HelicityAmplitude operator()(const Translation& t) const { return self.translate(t.a); }
    HelicityAmplitude operator()(const Rotation& r) const { return self.rotate(r.r); }
    HelicityAmplitude operator()(const Boost& b) const { return self.boost(b.beta); }
    HelicityAmplitude operator()(const Parity&) const { return self.parity(); }
    HelicityAmplitude operator()(const TimeReversal&) const { return self.time_reverse(); }
  };
  return std::visit(Visitor{*this}, op);
}

HelicityAmplitude replay(const HelicityAmplitude& base, const TransformRecord& record) {
  HelicityAmplitude out = base;
  for (const TransformOp& op : record) {
    out = out.apply(op);
  }
  return out;
}

HelicityAmplitude superpose(std::complex<double> c1, const HelicityAmplitude& psi1,
                            std::complex<double> c2, const HelicityAmplitude& psi2) {
  return HelicityAmplitude(
      [c1, c2, psi1, psi2](const Eigen::Vector3d& k) {
        const HelicityPair a = psi1(k);
        const HelicityPair b = psi2(k);
        return HelicityPair{c1 * a.plus + c2 * b.plus, c1 * a.minus + c2 * b.minus};
      },
      QuadDomain::bounding(psi1.domain(), psi2.domain()));
}

HelicityAmplitude scaled(std::complex<double> c, const HelicityAmplitude& psi) {
  return HelicityAmplitude(
      [c, psi](const Eigen::Vector3d& k) {
        const HelicityPair a = psi(k);
        return HelicityPair{c * a.plus, c * a.minus};
      },
      psi.domain());
}

HelicityAmplitude gaussian_wavepacket(const Eigen::Vector3d& kappa_vec, double sigma_k,
                                      std::complex<double> c_plus,
                                      std::complex<double> c_minus, int points) {
  if (!(sigma_k > 0)) {
    throw DomainError("gaussian_wavepacket: sigma_k must be positive");
  }
  if (!(kappa_vec.norm() > 0)) {
    throw DomainError("gaussian_wavepacket: kappa must be nonzero");
  }
  const double weight = std::sqrt(std::norm(c_plus) + std::norm(c_minus));
  if (!(weight > 0)) {
    throw DomainError("gaussian_wavepacket: helicity weights are both zero");
  }
  c_plus /= weight;
  c_minus /= weight;
  const double norm = std::pow(2 * std::numbers::pi * sigma_k * sigma_k, -0.75);
  const double inv4s2 = 1 / (4 * sigma_k * sigma_k);
  QuadDomain domain;
  domain.center = kappa_vec;
  domain.half_width = Eigen::Vector3d::Constant(kGaussianBoxHalfWidth * sigma_k);
  domain.points = points;
  return HelicityAmplitude(
      [=](const Eigen::Vector3d& k) {
        const double g = norm * std::exp(-(k - kappa_vec).squaredNorm() * inv4s2);
        return HelicityPair{c_plus * g, c_minus * g};
      },
      domain);
}

HelicityAmplitude gaussian_wavepacket(const Eigen::Vector3d& kappa_vec, double sigma_k,
                                      Helicity helicity, int points) {
  return helicity == Helicity::plus
             ? gaussian_wavepacket(kappa_vec, sigma_k, 1.0, 0.0, points)
             : gaussian_wavepacket(kappa_vec, sigma_k, 0.0, 1.0, points);
}

namespace {

double face_density_max(const HelicityAmplitude& psi) {
  const QuadDomain& d = psi.domain();
  constexpr int kFaceSamples = 9;
  double edge = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (int side : {-1, 1}) {
      for (int a = 0; a < kFaceSamples; ++a) {
        for (int b = 0; b < kFaceSamples; ++b) {
          Eigen::Vector3d k = d.center;
          k(axis) += side * d.half_width(axis);
          k(u) += d.half_width(u) * (2.0 * a / (kFaceSamples - 1) - 1);
          k(v) += d.half_width(v) * (2.0 * b / (kFaceSamples - 1) - 1);
          edge = std::max(edge, psi(k).density());
        }
      }
    }
  }
  return edge;
}

}  // namespace

double boundary_density_ratio(const HelicityAmplitude& psi) {
  double peak = 0;
  for_each_node(psi, psi.domain(), [&](const Eigen::Vector3d&, double, const HelicityPair& p) {
    peak = std::max(peak, p.density());
  });
  return peak > 0 ? face_density_max(psi) / peak : 0.0;
}

namespace {

bool domain_warning(const HelicityAmplitude& psi, double peak) {
  return face_density_max(psi) > kBoundaryDensityLimit * peak;
}

template <typename Density>
QuadratureResult<double> integrate(const HelicityAmplitude& psi, Density&& density) {
  std::vector<double> terms;
  terms.reserve(MomentumGrid(psi.domain()).total());
  double peak = 0;
  for_each_node(psi, psi.domain(),
                [&](const Eigen::Vector3d& k, double w, const HelicityPair& p) {
                  peak = std::max(peak, p.density());
                  terms.push_back(w * density(k, p));
                });
  return {pairwise_sum(terms), domain_warning(psi, peak)};
}

}  // namespace

QuadratureResult<double> norm_squared(const HelicityAmplitude& psi) {
  return integrate(psi, [](const Eigen::Vector3d&, const HelicityPair& p) {
    return p.density();
  });
}

QuadratureResult<double> helicity_weight(const HelicityAmplitude& psi, Helicity h) {
  return integrate(psi, [h](const Eigen::Vector3d&, const HelicityPair& p) {
    return std::norm(p[h]);
  });
}

QuadratureResult<std::complex<double>> inner_product(const HelicityAmplitude& psi1,
                                                     const HelicityAmplitude& psi2) {
  const QuadDomain d = QuadDomain::bounding(psi1.domain(), psi2.domain());
  std::vector<double> re;
  std::vector<double> im;
  const MomentumGrid grid(d);
  re.reserve(grid.total());
  im.reserve(grid.total());
  double peak1 = 0;
  double peak2 = 0;
  for_each_node(psi1, d, [&](const Eigen::Vector3d& k, double w, const HelicityPair& a) {
    const HelicityPair b = psi2(k);
    peak1 = std::max(peak1, a.density());
    peak2 = std::max(peak2, b.density());
    const std::complex<double> v = std::conj(a.plus) * b.plus + std::conj(a.minus) * b.minus;
    re.push_back(w * v.real());
    im.push_back(w * v.imag());
  });
  return {{pairwise_sum(re), pairwise_sum(im)},
          domain_warning(psi1.with_domain(d), peak1) ||
              domain_warning(psi2.with_domain(d), peak2)};
}

QuadratureResult<FourVectord> expectation_momentum(const HelicityAmplitude& psi) {
  std::array<std::vector<double>, 4> terms;
  double peak = 0;
  for_each_node(psi, psi.domain(),
                [&](const Eigen::Vector3d& k, double w, const HelicityPair& p) {
                  peak = std::max(peak, p.density());
                  const double rho = w * p.density();
                  terms[0].push_back(rho * k.norm());
                  for (int a = 0; a < 3; ++a) {
                    terms[a + 1].push_back(rho * k(a));
                  }
                });
  FourVectord out;
  for (int mu = 0; mu < 4; ++mu) {
    out(mu) = pairwise_sum(terms[mu]);
  }
  return {out, domain_warning(psi, peak)};
}

}  // namespace photon
