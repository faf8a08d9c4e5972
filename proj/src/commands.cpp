#include "photon/commands.hpp"

#include "photon/descriptor.hpp"
#include "photon/fields.hpp"
#include "photon/verify.hpp"
#include "photon/wigner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unistd.h>

namespace photon {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    double v = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw UsageError("cannot parse number in " + what + ": \"" + text + "\"");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

Eigen::Vector3d vector3(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 3) {
    throw UsageError(what + " needs 3 components");
  }
  return {v[0], v[1], v[2]};
}

TransformOp parse_op_flag(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto numbers = [&](std::size_t n) {
    const std::vector<double> v = parse_numbers(args, "--op " + kind);
    if (v.size() != n) {
      throw UsageError("--op " + kind + " needs " + std::to_string(n) + " numbers");
    }
    return v;
  };
  if (kind == "boost") {
    const Eigen::Vector3d beta = vector3(numbers(3), "boost");
    if (!(beta.norm() < 1)) {
      throw UsageError("--op boost: |beta| must be below 1");
    }
    return Boost{beta};
  }
  if (kind == "rotate") {
    const auto v = numbers(4);
    const Eigen::Vector3d axis(v[0], v[1], v[2]);
    if (axis.norm() == 0) {
      throw UsageError("--op rotate: zero axis");
    }
    return Rotation{AxisAngled(axis, v[3])};
  }
  if (kind == "translate") {
    const auto v = numbers(4);
    return Translation{FourVectord(v[0], v[1], v[2], v[3])};
  }
  if ((kind == "parity" || kind == "time_reverse") && colon != std::string::npos) {
    throw UsageError("--op " + kind + " takes no parameters");
  }
  if (kind == "parity") {
    return Parity{};
  }
  if (kind == "time_reverse") {
    return TimeReversal{};
  }
  throw UsageError("unknown --op \"" + kind + "\"");
}

template <typename Derived>
json array(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

json observables(const HelicityAmplitude& psi) {
  const auto norm = norm_squared(psi);
  const auto p = expectation_momentum(psi);
  return {{"norm_squared", norm.value},
          {"momentum", array(p.value)},
          {"helicity_weights",
           {{"plus", helicity_weight(psi, Helicity::plus).value},
            {"minus", helicity_weight(psi, Helicity::minus).value}}},
          {"domain_warning", norm.domain_warning || p.domain_warning}};
}

std::string read_input(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot open " + path);
    }
    buf << in.rdbuf();
  }
  return buf.str();
}

// Writes to a sibling temporary and renames it over the target.
template <typename WriteFn>
void write_atomically(const std::string& path, WriteFn&& write) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw UsageError("cannot write " + path);
    }
    write(out);
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + path);
    }
  }
  std::filesystem::rename(tmp, target);
}

struct VerifyArgs {
  std::string suite = "all";
  int trials = 0;
  std::uint64_t seed = 1;
  double tol = 0;
  bool no_timestamp = false;
};

int cmd_verify(const VerifyArgs& a, CLI::App& sub, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  opt.suite = a.suite;
  opt.seed = a.seed;
  if (sub.count("--trials")) {
    opt.trials = a.trials;
  }
  if (sub.count("--tol")) {
    opt.tol = a.tol;
  }
  VerifyReport report;
  try {
    report = run_verify(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << report.to_json(!a.no_timestamp).dump(2) << "\n";
  if (!report.pass()) {
    err << "verify: one or more properties exceeded their threshold\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct WignerArgs {
  std::string kind;
  std::vector<double> axis{0, 0, 1};
  double angle = 0;
  std::vector<double> beta{0, 0, 0};
  double omega = 1;
  double theta = 1;
  double phi = 0;
  double kappa_ref = 1;
};

int cmd_wigner(const WignerArgs& a, std::ostream& out) {
  if (!(a.omega > 0)) {
    throw UsageError("--omega must be positive");
  }
  const Eigen::Vector3d dir(std::sin(a.theta) * std::cos(a.phi),
                            std::sin(a.theta) * std::sin(a.phi), std::cos(a.theta));
  const FourVectord k = null_vector(Eigen::Vector3d(a.omega * dir));
  WignerData data;
  json closed = nullptr;
  if (a.kind == "rotation") {
    const AxisAngled r(vector3(a.axis, "--axis"), a.angle);
    data = wigner_rotation(rotation_matrix(r), k);
    try {
      const auto c = wigner_phase_rotation_closed(r, k);
      closed = {{"re", c.real()}, {"im", c.imag()}};
    } catch (const DomainError&) {
    }
  } else {
    const Eigen::Vector3d beta = vector3(a.beta, "--beta");
    data = wigner_boost(boost_matrix(beta), k, a.kappa_ref);
    try {
      const Eigen::Vector3d zeta =
          beta.norm() > 0 ? Eigen::Vector3d(std::atanh(beta.norm()) * beta.normalized())
                          : Eigen::Vector3d::Zero();
      const auto c = wigner_phase_boost_closed(zeta, k);
      closed = {{"re", c.real()}, {"im", c.imag()}};
    } catch (const DomainError&) {
    }
  }
  const auto phase = data.phase(1);
  json j{{"schema", 1},
         {"command", "wigner"},
         {"kind", a.kind},
         {"k", array(k)},
         {"w", data.w},
         {"phase_re", phase.real()},
         {"phase_im", phase.imag()},
         {"alpha", array(data.alpha.alpha)},
         {"residual", data.residual},
         {"closed_form_half_phase", closed}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct TransformArgs {
  std::string input;
  std::vector<std::string> ops;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  WavepacketDescriptor d;
  try {
    d = parse_descriptor_text(read_input(a.input));
  } catch (const ParseError& e) {
    throw UsageError(a.input + ": " + e.what());
  }
  const HelicityAmplitude before = d.build();
  const json before_obs = observables(before);
  const Helicity helicity_before = d.current_helicity();
  HelicityAmplitude after = before;
  for (const std::string& text : a.ops) {
    const TransformOp op = parse_op_flag(text);
    d.ops.push_back(op);
    after = after.apply(op);
  }
  json j{{"schema", 1},
         {"command", "transform"},
         {"descriptor", to_json(d)},
         {"helicity_before", to_int(helicity_before)},
         {"helicity", to_int(d.current_helicity())},
         {"before", before_obs},
         {"after", observables(after)}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct FieldsArgs {
  double kappa = 3.3;
  double ratio = 0.01;
  int helicity = 1;
  int n = 48;
  int nz = 0;
  double extent = kEnvelopeSigmas;
  double time = 0;
  std::string mode = "narrowband";
  std::string out_path;
  std::string units = "natural";
  int points = 48;
};

void write_csv(std::ostream& os, const FieldTensorGrid& grid, double length_scale) {
  os << "x,y,z,Ex,Ey,Ez,Bx,By,Bz\n";
  const GridSpec& g = grid.spec();
  std::string line;
  for (int i = 0; i < g.dims[0]; ++i) {
    for (int j = 0; j < g.dims[1]; ++j) {
      for (int l = 0; l < g.dims[2]; ++l) {
        const Eigen::Vector3d x = g.position(i, j, l) * length_scale;
        const ElectroMagnetic& f = grid.at(g.index(i, j, l));
        const double row[9] = {x.x(), x.y(), x.z(), f.E.x(), f.E.y(), f.E.z(),
                               f.B.x(), f.B.y(), f.B.z()};
        line.clear();
        for (int c = 0; c < 9; ++c) {
          if (c) {
            line += ',';
          }
          line += format_double(row[c]);
        }
        line += '\n';
        os << line;
      }
    }
  }
}

int cmd_fields(const FieldsArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.kappa > 0)) {
    throw UsageError("--kappa must be positive");
  }
  if (!(a.ratio > 0 && a.ratio < 1)) {
    throw UsageError("--ratio must lie in (0, 1)");
  }
  if (a.n < 2 || a.nz < 0 || a.nz == 1 || !(a.extent > 0)) {
    throw UsageError("grid needs --n >= 2, --nz >= 2 (0 for automatic) and --extent > 0");
  }
  const NarrowbandSpec spec{a.kappa, a.ratio * a.kappa, helicity_from_int(a.helicity)};
  const GridRequirements req = narrowband_requirements(spec, a.time);
  const double half = a.extent * spec.sigma_x();
  std::array<int, 3> dims{a.n, a.n, a.nz};
  if (a.nz == 0) {
    dims[2] = minimal_grid(GridRequirements{req.carrier, req.envelope_center, half / kEnvelopeSigmas})
                  .dims[2];
  }
  const GridSpec grid = GridSpec::centered(req.envelope_center, Eigen::Vector3d::Constant(half), dims);
  try {
    check_resolution(grid, req);
  } catch (const ResolutionError& e) {
    err << "fields: " << e.what() << "\n";
    json j{{"schema", 1},
           {"command", "fields"},
           {"error", e.what()},
           {"required_n", e.required_dims},
           {"required_spacing", array(e.required_spacing)}};
    out << j.dump(2) << "\n";
    return kExitNumerical;
  }

  FieldTensorGrid fields = [&] {
    if (a.mode == "narrowband") {
      return narrowband_grid(spec, grid, a.time);
    }
    FieldTensorGrid g = exact_grid(FieldEvaluator(spec.amplitude(a.points)), grid, a.time);
    g.requirements = req;
    return g;
  }();
  const FourVectord pm = energy_momentum_integrals(fields);

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  double total = 0;
  for (int i = 0; i < grid.dims[0]; ++i) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      for (int l = 0; l < grid.dims[2]; ++l) {
        const ElectroMagnetic& f = fields.at(grid.index(i, j, l));
        const double u = grid.weight(i, j, l) * (f.E.squaredNorm() + f.B.squaredNorm()) / 2;
        centroid += u * grid.position(i, j, l);
        total += u;
      }
    }
  }
  if (total > 0) {
    centroid /= total;
  }

  const bool micrometres = a.units == "um";
  const double length_scale = micrometres ? kHbarCeVnm / 1000 : 1.0;
  if (!a.out_path.empty()) {
    write_atomically(a.out_path, [&](std::ostream& os) { write_csv(os, fields, length_scale); });
  }
  json j{{"schema", 1},
         {"command", "fields"},
         {"mode", a.mode},
         {"kappa_eV", a.kappa},
         {"sigma_ratio", a.ratio},
         {"helicity", a.helicity},
         {"time", a.time},
         {"length_unit", micrometres ? "um" : "1/eV"},
         {"sigma_x", spec.sigma_x() * length_scale},
         {"grid",
          {{"dims", grid.dims},
           {"origin", array(Eigen::Vector3d(grid.origin * length_scale))},
           {"spacing", array(Eigen::Vector3d(grid.spacing * length_scale))}}},
         {"energy", pm(0)},
         {"momentum", array(pm.tail<3>())},
         {"energy_over_kappa", pm(0) / a.kappa},
         {"envelope_center", array(Eigen::Vector3d(req.envelope_center * length_scale))},
         {"energy_centroid", array(Eigen::Vector3d(centroid * length_scale))},
         {"outside_window", std::abs(a.time) > kNarrowbandWindowFraction * spec.time_window()},
         {"csv", a.out_path.empty() ? json(nullptr) : json(a.out_path)},
         {"rows", grid.size()}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_localize(double kappa, double ratio, std::ostream& out) {
  double sx = 0;
  try {
    sx = localization_scale(kappa, ratio);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  json j{{"schema", 1},
         {"command", "localize"},
         {"kappa_eV", kappa},
         {"sigma_ratio", ratio},
         {"sigma_x_um", sx}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value == 0 ? 0.0 : value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon little-group, amplitude and field toolkit", "photon"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run randomized property suites");
  verify->add_option("--suite", va.suite, "all, little-group, wigner, amplitudes, polarization, fields");
  verify->add_option("--trials", va.trials, "Trials per property (default per suite)");
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--tol", va.tol, "Override every threshold");
  verify->add_flag("--no-timestamp", va.no_timestamp, "Omit timestamp and wall time");

  WignerArgs wa;
  CLI::App* wigner = app.add_subcommand("wigner", "Wigner angle of a rotation or boost");
  wigner->add_option("kind", wa.kind, "rotation or boost")
      ->required()
      ->check(CLI::IsMember({"rotation", "boost"}));
  wigner->add_option("--axis", wa.axis, "Rotation axis ax,ay,az")->delimiter(',')->expected(3);
  wigner->add_option("--angle", wa.angle, "Rotation angle (rad)");
  wigner->add_option("--beta", wa.beta, "Boost velocity bx,by,bz")->delimiter(',')->expected(3);
  wigner->add_option("--omega", wa.omega, "Photon energy (eV)");
  wigner->add_option("--theta", wa.theta, "Polar angle of k (rad)");
  wigner->add_option("--phi", wa.phi, "Azimuth of k (rad)");
  wigner->add_option("--kappa-ref", wa.kappa_ref, "Reference energy (eV)");

  TransformArgs ta;
  CLI::App* transform = app.add_subcommand("transform", "Apply operations to a wavepacket");
  transform->add_option("input", ta.input, "Wavepacket JSON file, - for stdin")->required();
  transform->add_option("--op", ta.ops,
                        "boost:bx,by,bz | rotate:ax,ay,az,angle | translate:t,x,y,z | parity | "
                        "time_reverse (repeatable, applied in order)");

  FieldsArgs fa;
  CLI::App* fields = app.add_subcommand("fields", "Field expectation values on a grid");
  fields->add_option("--kappa", fa.kappa, "Packet energy (eV)");
  fields->add_option("--ratio", fa.ratio, "sigma_k / kappa");
  fields->add_option("--helicity", fa.helicity, "+1 or -1")->check(CLI::IsMember({1, -1}));
  fields->add_option("--n", fa.n, "Points along x and y");
  fields->add_option("--nz", fa.nz, "Points along z (0: smallest resolving value)");
  fields->add_option("--extent", fa.extent, "Grid half extent in sigma_x");
  fields->add_option("--time", fa.time, "Time (1/eV)");
  fields->add_option("--mode", fa.mode, "exact or narrowband")
      ->check(CLI::IsMember({"exact", "narrowband"}));
  fields->add_option("--out", fa.out_path, "CSV output path");
  fields->add_option("--units", fa.units, "CSV positions: natural (1/eV) or um")
      ->check(CLI::IsMember({"natural", "um"}));
  fields->add_option("--points", fa.points, "Momentum quadrature points per axis (exact mode)")
      ->check(CLI::Range(2, 256));

  double lkappa = 3.3;
  double lratio = 0.01;
  CLI::App* localize = app.add_subcommand("localize", "Localization scale sigma_x");
  localize->add_option("--kappa", lkappa, "Photon energy (eV)");
  localize->add_option("--ratio", lratio, "sigma_k / kappa");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify(va, *verify, out, err);
    }
    if (wigner->parsed()) {
      return cmd_wigner(wa, out);
    }
    if (transform->parsed()) {
      return cmd_transform(ta, out);
    }
    if (fields->parsed()) {
      return cmd_fields(fa, out, err);
    }
    return cmd_localize(lkappa, lratio, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace photon
