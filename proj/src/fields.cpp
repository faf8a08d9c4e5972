#include "photon/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace photon {
namespace {

using C = std::complex<double>;
using RowMatrix = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPi = std::numbers::pi;

double inv_two_pi_three_halves() { return std::pow(2 * kPi, -1.5); }

// out(a, b, c) = sum_{i,j,l} exp(i (kx_i x_a + ky_j y_b + kz_l z_c)) g(i, j, l),
// done one axis at a time.
std::vector<C> separable_sum(const std::array<std::vector<double>, 3>& axes,
                             const std::vector<C>& g, const GridSpec& grid) {
  const Eigen::Index ni = axes[0].size();
  const Eigen::Index nj = axes[1].size();
  const Eigen::Index nl = axes[2].size();
  const Eigen::Index nx = grid.dims[0];
  const Eigen::Index ny = grid.dims[1];
  const Eigen::Index nz = grid.dims[2];

  auto phases = [&](int axis, Eigen::Index n_out, Eigen::Index n_in) {
    RowMatrix m(n_out, n_in);
    for (Eigen::Index a = 0; a < n_out; ++a) {
      const double x = grid.origin(axis) + grid.spacing(axis) * a;
      for (Eigen::Index i = 0; i < n_in; ++i) {
        m(a, i) = std::polar(1.0, axes[axis][i] * x);
      }
    }
    return m;
  };

  const Eigen::Map<const RowMatrix> G(g.data(), ni * nj, nl);
  const RowMatrix h1 = G * phases(2, nz, nl).transpose();
  const RowMatrix ey = phases(1, ny, nj);
  RowMatrix h2(ni, ny * nz);
  for (Eigen::Index i = 0; i < ni; ++i) {
    Eigen::Map<RowMatrix>(h2.row(i).data(), ny, nz) = ey * h1.middleRows(i * nj, nj);
  }
  const RowMatrix out = phases(0, nx, ni) * h2;
  return {out.data(), out.data() + out.size()};
}

double trapezoid(const GridSpec& grid, const std::vector<double>& density) {
  std::vector<double> terms(density.size());
  for (int i = 0; i < grid.dims[0]; ++i) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      for (int l = 0; l < grid.dims[2]; ++l) {
        const std::size_t n = grid.index(i, j, l);
        terms[n] = grid.weight(i, j, l) * density[n];
      }
    }
  }
  return pairwise_sum(terms);
}

FourVectord four(const Eigen::Vector3d& k, double omega) { return make_four_vector(omega, k); }

}  // namespace

double field_prefactor() { return 1 / std::sqrt(16 * kPi * kPi * kPi); }

FieldTensor field_tensor(const ElectroMagnetic& f) {
  FieldTensor F = FieldTensor::Zero();
  for (int i = 0; i < 3; ++i) {
    F(0, i + 1) = -f.E(i);
    F(i + 1, 0) = f.E(i);
  }
  F(1, 2) = -f.B.z();
  F(2, 1) = f.B.z();
  F(2, 3) = -f.B.x();
  F(3, 2) = f.B.x();
  F(3, 1) = -f.B.y();
  F(1, 3) = f.B.y();
  return F;
}

ElectroMagnetic decode(const FieldTensor& F) {
  return {Eigen::Vector3d(-F(0, 1), -F(0, 2), -F(0, 3)),
          Eigen::Vector3d(-F(2, 3), -F(3, 1), -F(1, 2))};
}

ComplexElectroMagnetic decode(const ComplexTensor& F) {
  return {Eigen::Vector3cd(-F(0, 1), -F(0, 2), -F(0, 3)),
          Eigen::Vector3cd(-F(2, 3), -F(3, 1), -F(1, 2))};
}

FieldEvaluator::FieldEvaluator(const HelicityAmplitude& psi, const GaugeFunction& gauge) {
  const MomentumGrid grid(psi.domain());
  for (int a = 0; a < 3; ++a) {
    axes_[a] = grid.axis[a];
  }
  nodes_.reserve(grid.total());
  for_each_node(psi, psi.domain(), [&](const Eigen::Vector3d& k, double w, const HelicityPair& p) {
    Node node{k, k.norm(), ComplexFourVectord::Zero()};
    if (node.omega > 0) {
      const FourVectord k4 = four(k, node.omega);
      for (Helicity h : {Helicity::plus, Helicity::minus}) {
        const C amp = p[h];
        if (amp == C(0)) {
          continue;
        }
        PolarizationVector eps = polarization(k4, h);
        if (gauge) {
          eps = gauge_shift(eps, gauge(k4, h));
        }
        node.a += (w * amp / std::sqrt(node.omega)) * eps.eps;
      }
    }
    nodes_.push_back(node);
  });
}

ComplexTensor FieldEvaluator::positive_frequency(const FourVectord& x) const {
  ComplexTensor S = ComplexTensor::Zero();
  for (const Node& n : nodes_) {
    if (n.a == ComplexFourVectord::Zero()) {
      continue;
    }
    const C e = std::polar(1.0, n.k.dot(x.tail<3>()) - n.omega * x(0));
    S.noalias() += four(n.k, n.omega).cast<C>() * (e * n.a).transpose();
  }
  return field_prefactor() * (S - S.transpose());
}

FieldTensor FieldEvaluator::expectation(const FourVectord& x) const {
  return 2 * positive_frequency(x).real();
}

ComplexFourVectord FieldEvaluator::potential(const FourVectord& x) const {
  ComplexFourVectord s = ComplexFourVectord::Zero();
  for (const Node& n : nodes_) {
    s += std::polar(1.0, n.k.dot(x.tail<3>()) - n.omega * x(0)) * n.a;
  }
  return C(0, 2 * field_prefactor()) * s;
}

Eigen::Vector3cd FieldEvaluator::sipe_invariant(const FourVectord& x) const {
  Eigen::Vector3cd s = Eigen::Vector3cd::Zero();
  for (const Node& n : nodes_) {
    const C e = std::polar(1.0, n.k.dot(x.tail<3>()) - n.omega * x(0));
    s += e * (n.omega * n.a.tail<3>() - n.k.cast<C>() * n.a(0));
  }
  return inv_two_pi_three_halves() * s;
}

Eigen::Vector3cd FieldEvaluator::sipe(const FourVectord& x) const {
  Eigen::Vector3cd s = Eigen::Vector3cd::Zero();
  for (const Node& n : nodes_) {
    const C e = std::polar(1.0, n.k.dot(x.tail<3>()) - n.omega * x(0));
    s += (e * n.omega) * n.a.tail<3>();
  }
  return inv_two_pi_three_halves() * s;
}

double FieldEvaluator::bb_density(const FourVectord& x) const {
  const ComplexElectroMagnetic f = decode(positive_frequency(x));
  const C i(0, 1);
  const Eigen::Vector3cd plus = (f.E + i * f.B) / std::sqrt(2.0);
  const Eigen::Vector3cd minus = (f.E - i * f.B) / std::sqrt(2.0);
  return plus.squaredNorm() + minus.squaredNorm();
}

ComplexTensor positive_frequency_field(const HelicityAmplitude& psi, const FourVectord& x) {
  return FieldEvaluator(psi).positive_frequency(x);
}

FieldTensor field_expectation_exact(const HelicityAmplitude& psi, const FourVectord& x) {
  return FieldEvaluator(psi).expectation(x);
}

ComplexFourVectord vector_potential(const HelicityAmplitude& psi, const FourVectord& x,
                                    const GaugeFunction& gauge) {
  return FieldEvaluator(psi, gauge).potential(x);
}

double bb_density(const HelicityAmplitude& psi, const FourVectord& x) {
  return FieldEvaluator(psi).bb_density(x);
}

HelicityAmplitude NarrowbandSpec::amplitude(int points) const {
  return gaussian_wavepacket(Eigen::Vector3d(0, 0, kappa), sigma_k, helicity, points);
}

double narrowband_envelope(const NarrowbandSpec& spec, const FourVectord& x) {
  const double sx = spec.sigma_x();
  const Eigen::Vector3d r = x.tail<3>() - Eigen::Vector3d(0, 0, x(0));
  return std::exp(-r.squaredNorm() / (4 * sx * sx)) * std::pow(2 * kPi * sx * sx, -0.75);
}

ComplexTensor narrowband_positive_frequency(const NarrowbandSpec& spec, const FourVectord& x) {
  const FieldTensorCoeff T = tensor_coeff(reference_polarization(spec.helicity, spec.kappa));
  const C carrier = std::polar(1.0, spec.kappa * (x(3) - x(0)));
  return (field_prefactor() / std::sqrt(spec.kappa) * std::pow(2 * kPi, 1.5) *
          narrowband_envelope(spec, x)) *
         carrier * T.T;
}

NarrowbandField field_expectation_narrowband(const NarrowbandSpec& spec, const FourVectord& x) {
  NarrowbandField out;
  out.field = decode(FieldTensor(2 * narrowband_positive_frequency(spec, x).real()));
  out.outside_window = std::abs(x(0)) > kNarrowbandWindowFraction * spec.time_window();
  return out;
}

GridSpec GridSpec::centered(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extent,
                            const std::array<int, 3>& dims) {
  GridSpec g;
  g.dims = dims;
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1) {
      throw DomainError("grid dimensions must be positive");
    }
    if (dims[a] == 1) {
      g.origin(a) = center(a);
      g.spacing(a) = 1;
    } else {
      g.origin(a) = center(a) - half_extent(a);
      g.spacing(a) = 2 * half_extent(a) / (dims[a] - 1);
    }
  }
  return g;
}

double GridSpec::weight(int i, int j, int l) const {
  double w = 1;
  const int idx[3] = {i, j, l};
  for (int a = 0; a < 3; ++a) {
    if (dims[a] == 1) {
      continue;
    }
    const bool end = idx[a] == 0 || idx[a] == dims[a] - 1;
    w *= end ? spacing(a) / 2 : spacing(a);
  }
  return w;
}

namespace {

Eigen::Vector3d required_spacing(const GridRequirements& req) {
  Eigen::Vector3d h;
  const double scale = req.carrier.norm();
  for (int a = 0; a < 3; ++a) {
    const double c = std::abs(req.carrier(a));
    h(a) = c > 1e-12 * scale && c > 0
               ? 2 * kPi / (kPointsPerWavelength * c)
               : std::numeric_limits<double>::infinity();
  }
  return h;
}

}  // namespace

GridSpec minimal_grid(const GridRequirements& req, int min_points) {
  const Eigen::Vector3d h_req = required_spacing(req);
  const double span = 2 * kEnvelopeSigmas * req.sigma_x;
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) {
    dims[a] = std::max(min_points, std::isfinite(h_req(a))
                                       ? static_cast<int>(std::ceil(span / h_req(a))) + 1
                                       : min_points);
  }
  return GridSpec::centered(req.envelope_center,
                            Eigen::Vector3d::Constant(kEnvelopeSigmas * req.sigma_x), dims);
}

void check_resolution(const GridSpec& grid, const GridRequirements& req) {
  const Eigen::Vector3d h_req = required_spacing(req);
  const double half = kEnvelopeSigmas * req.sigma_x;
  constexpr double slack = 1 + 1e-9;
  std::string problems;
  std::array<int, 3> need = grid.dims;
  Eigen::Vector3d need_h = grid.spacing;
  const char* names = "xyz";
  for (int a = 0; a < 3; ++a) {
    const double lo = grid.origin(a);
    const double hi = lo + grid.spacing(a) * (grid.dims[a] - 1);
    const bool carrier_ok = grid.spacing(a) <= h_req(a) * slack || grid.dims[a] == 1;
    const bool cover_ok = lo <= (req.envelope_center(a) - half) + 1e-9 * half &&
                          hi >= (req.envelope_center(a) + half) - 1e-9 * half;
    if (carrier_ok && cover_ok) {
      continue;
    }
    const double h = std::min(grid.dims[a] > 1 ? grid.spacing(a) : h_req(a), h_req(a));
    need_h(a) = std::isfinite(h) ? h : 2 * half;
    need[a] = std::max(grid.dims[a], static_cast<int>(std::ceil(2 * half / need_h(a))) + 1);
    problems += std::string(problems.empty() ? "" : "; ") + names[a] + ": ";
    if (!carrier_ok) {
      problems += "under-resolved carrier, need spacing <= " + std::to_string(h_req(a));
    }
    if (!cover_ok) {
      problems += std::string(carrier_ok ? "" : ", ") + "grid must cover envelope center +- " +
                  std::to_string(half);
    }
    problems += " (need n >= " + std::to_string(need[a]) + ")";
  }
  if (!problems.empty()) {
    throw ResolutionError(problems, need, need_h);
  }
}

GridRequirements narrowband_requirements(const NarrowbandSpec& spec, double t) {
  return {Eigen::Vector3d(0, 0, spec.kappa), Eigen::Vector3d(0, 0, t), spec.sigma_x()};
}

FieldTensorGrid::FieldTensorGrid(GridSpec spec, double time)
    : spec_(spec), time_(time), values_(spec.size()) {}

std::vector<ComplexElectroMagnetic> positive_frequency_grid(const FieldEvaluator& ev,
                                                            const GridSpec& grid, double t) {
  const auto& nodes = ev.nodes();
  const double c = field_prefactor();
  std::vector<ComplexElectroMagnetic> out(grid.size());
  std::vector<C> g(nodes.size());
  // F^(+)^{mu nu} coefficients; E_i = -F^{0i}, B = -(F^{23}, F^{31}, F^{12})
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};
  for (int comp = 0; comp < 6; ++comp) {
    const int mu = pairs[comp][0];
    const int nu = pairs[comp][1];
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const auto& node = nodes[n];
      const FourVectord k4 = four(node.k, node.omega);
      g[n] = -c * std::polar(1.0, -node.omega * t) * (k4(mu) * node.a(nu) - k4(nu) * node.a(mu));
    }
    const std::vector<C> f = separable_sum(ev.axes(), g, grid);
    for (std::size_t n = 0; n < f.size(); ++n) {
      if (comp < 3) {
        out[n].E(comp) = f[n];
      } else {
        out[n].B(comp - 3) = f[n];
      }
    }
  }
  return out;
}

FieldTensorGrid exact_grid(const FieldEvaluator& ev, const GridSpec& grid, double t) {
  const auto pf = positive_frequency_grid(ev, grid, t);
  FieldTensorGrid out(grid, t);
  for (std::size_t n = 0; n < pf.size(); ++n) {
    out.at(n) = {2 * pf[n].E.real(), 2 * pf[n].B.real()};
  }
  return out;
}

FieldTensorGrid narrowband_grid(const NarrowbandSpec& spec, const GridSpec& grid, double t) {
  FieldTensorGrid out(grid, t);
  out.requirements = narrowband_requirements(spec, t);
  for (int i = 0; i < grid.dims[0]; ++i) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      for (int l = 0; l < grid.dims[2]; ++l) {
        out.at(grid.index(i, j, l)) =
            field_expectation_narrowband(spec, make_four_vector(t, grid.position(i, j, l))).field;
      }
    }
  }
  return out;
}

FourVectord energy_momentum_integrals(const FieldTensorGrid& grid) {
  if (grid.requirements) {
    check_resolution(grid.spec(), *grid.requirements);
  }
  const GridSpec& spec = grid.spec();
  std::array<std::vector<double>, 4> density;
  for (auto& d : density) {
    d.resize(spec.size());
  }
  for (std::size_t n = 0; n < spec.size(); ++n) {
    const ElectroMagnetic& f = grid.at(n);
    density[0][n] = 0.5 * (f.E.squaredNorm() + f.B.squaredNorm());
    const Eigen::Vector3d s = f.E.cross(f.B);
    for (int a = 0; a < 3; ++a) {
      density[a + 1][n] = s(a);
    }
  }
  FourVectord out;
  for (int mu = 0; mu < 4; ++mu) {
    out(mu) = trapezoid(spec, density[mu]);
  }
  return out;
}

MaxwellResidual maxwell_residual(const FieldEvaluator& ev, const FourVectord& x, double h) {
  std::array<FieldTensor, 4> d;  // d[rho] = partial_rho F
  for (int rho = 0; rho < 4; ++rho) {
    FourVectord step = FourVectord::Zero();
    step(rho) = h;
    d[rho] = (ev.expectation(x + step) - ev.expectation(x - step)) / (2 * h);
  }
  double scale = 0;
  for (const auto& m : d) {
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
  }
  MaxwellResidual r;
  if (scale == 0) {
    return r;
  }
  for (int nu = 0; nu < 4; ++nu) {
    double div = 0;
    for (int mu = 0; mu < 4; ++mu) {
      div += d[mu](mu, nu);
    }
    r.divergence = std::max(r.divergence, std::abs(div));
  }
  const double g[4] = {1, -1, -1, -1};  // partial^rho = g^{rho rho} partial_rho
  for (int rho = 0; rho < 4; ++rho) {
    for (int mu = rho + 1; mu < 4; ++mu) {
      for (int nu = mu + 1; nu < 4; ++nu) {
        const double cyc = g[rho] * d[rho](mu, nu) + g[mu] * d[mu](nu, rho) +
                           g[nu] * d[nu](rho, mu);
        r.bianchi = std::max(r.bianchi, std::abs(cyc));
      }
    }
  }
  r.divergence /= scale;
  r.bianchi /= scale;
  return r;
}

MaxwellResidual maxwell_residual(const HelicityAmplitude& psi, const FourVectord& x, double h) {
  return maxwell_residual(FieldEvaluator(psi), x, h);
}

double tensor_covariance_check(const HelicityAmplitude& psi, const LorentzMatrixd& L,
                               const std::vector<FourVectord>& points) {
  const FieldEvaluator original(psi);
  const FieldEvaluator moved(psi.lorentz(L));
  const LorentzMatrixd inverse = lorentz_inverse(L);
  double diff = 0;
  double scale = 0;
  for (const FourVectord& x : points) {
    const FieldTensor direct = moved.expectation(x);
    const FieldTensor mapped = L * original.expectation(inverse * x) * L.transpose();
    diff = std::max(diff, (direct - mapped).cwiseAbs().maxCoeff());
    scale = std::max(scale, direct.cwiseAbs().maxCoeff());
  }
  return scale > 0 ? diff / scale : diff;
}

DualRoute sipe_energy_integral(const HelicityAmplitude& psi, const GridSpec& grid, double t) {
  DualRoute r;
  std::vector<double> terms;
  for_each_node(psi, psi.domain(), [&](const Eigen::Vector3d& k, double w, const HelicityPair& p) {
    terms.push_back(w * p.density() * k.norm());
  });
  r.momentum_route = pairwise_sum(terms);

  const FieldEvaluator ev(psi);
  const auto& nodes = ev.nodes();
  std::vector<double> density(grid.size(), 0.0);
  std::vector<C> g(nodes.size());
  for (int comp = 0; comp < 3; ++comp) {
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      g[n] = inv_two_pi_three_halves() * std::polar(1.0, -nodes[n].omega * t) * nodes[n].omega *
             nodes[n].a(comp + 1);
    }
    const std::vector<C> f = separable_sum(ev.axes(), g, grid);
    for (std::size_t n = 0; n < f.size(); ++n) {
      density[n] += std::norm(f[n]);
    }
  }
  r.spatial_route = trapezoid(grid, density);
  return r;
}

DualRoute bb_energy_integral(const HelicityAmplitude& psi, const GridSpec& grid, double t) {
  DualRoute r;
  r.momentum_route = expectation_momentum(psi).value(0);
  const auto pf = positive_frequency_grid(FieldEvaluator(psi), grid, t);
  std::vector<double> density(grid.size());
  const C i(0, 1);
  for (std::size_t n = 0; n < pf.size(); ++n) {
    const Eigen::Vector3cd plus = (pf[n].E + i * pf[n].B) / std::sqrt(2.0);
    const Eigen::Vector3cd minus = (pf[n].E - i * pf[n].B) / std::sqrt(2.0);
    density[n] = plus.squaredNorm() + minus.squaredNorm();
  }
  r.spatial_route = trapezoid(grid, density);
  return r;
}

double localization_scale(double kappa_ev, double sigma_ratio) {
  if (!(kappa_ev > 0)) {
    throw DomainError("localization_scale: kappa must be positive");
  }
  if (!(sigma_ratio > 0 && sigma_ratio < 0.1)) {
    throw DomainError("localization_scale: sigma ratio must lie in (0, 0.1)");
  }
  const double sigma_x_nm = kHbarCeVnm / (2 * sigma_ratio * kappa_ev);
  return sigma_x_nm / 1000;
}

}  // namespace photon
