#include "photon/descriptor.hpp"

#include <cmath>

namespace photon {
namespace {

using nlohmann::json;

template <int N>
Eigen::Matrix<double, N, 1> vector_field(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != N) {
    throw ParseError(std::string("field \"") + key + "\" must be an array of " +
                     std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!v[i].is_number()) {
      throw ParseError(std::string("field \"") + key + "\" must contain numbers");
    }
    out(i) = v[i].get<double>();
  }
  return out;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("field \"") + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

template <typename Derived>
json array(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

}  // namespace

Helicity WavepacketDescriptor::current_helicity() const {
  int h = to_int(helicity);
  for (const auto& op : ops) {
    if (std::holds_alternative<Parity>(op)) {
      h = -h;
    }
  }
  return helicity_from_int(h);
}

HelicityAmplitude WavepacketDescriptor::base() const {
  return gaussian_wavepacket(kappa, sigma_k, helicity, points);
}

HelicityAmplitude WavepacketDescriptor::build() const { return replay(base(), ops); }

TransformOp parse_op(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ParseError("each op must be an object with a string \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "boost") {
    const Eigen::Vector3d beta = vector_field<3>(j, "beta");
    if (!(beta.norm() < 1)) {
      throw ParseError("boost: |beta| must be below 1");
    }
    return Boost{beta};
  }
  if (type == "rotation") {
    const Eigen::Vector3d axis = vector_field<3>(j, "axis");
    if (axis.norm() == 0) {
      throw ParseError("rotation: zero axis");
    }
    return Rotation{AxisAngled(axis, number_field(j, "angle"))};
  }
  if (type == "translation") {
    return Translation{vector_field<4>(j, "a")};
  }
  if (type == "parity") {
    return Parity{};
  }
  if (type == "time_reversal") {
    return TimeReversal{};
  }
  throw ParseError("unknown op type \"" + type + "\"");
}

WavepacketDescriptor parse_descriptor(const json& j) {
  if (!j.is_object()) {
    throw ParseError("descriptor must be a JSON object");
  }
  if (j.contains("units") && j.at("units") != "eV") {
    throw ParseError("units must be \"eV\"");
  }
  WavepacketDescriptor d;
  d.kappa = vector_field<3>(j, "kappa");
  d.sigma_k = number_field(j, "sigma_k");
  if (!(d.sigma_k > 0)) {
    throw ParseError("sigma_k must be positive");
  }
  if (d.kappa.norm() == 0) {
    throw ParseError("kappa must be nonzero");
  }
  const double h = number_field(j, "helicity");
  if (h != 1 && h != -1) {
    throw ParseError("helicity must be +1 or -1");
  }
  d.helicity = helicity_from_int(static_cast<int>(h));
  if (j.contains("points")) {
    const double p = number_field(j, "points");
    if (p < 2 || p > 256 || p != std::floor(p)) {
      throw ParseError("points must be an integer in [2, 256]");
    }
    d.points = static_cast<int>(p);
  }
  if (j.contains("ops")) {
    if (!j.at("ops").is_array()) {
      throw ParseError("ops must be an array");
    }
    for (const json& op : j.at("ops")) {
      d.ops.push_back(parse_op(op));
    }
  }
  return d;
}

WavepacketDescriptor parse_descriptor_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_descriptor(j);
}

json to_json(const TransformOp& op) {
  json j;
  j["type"] = op_name(op);
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Boost>) {
          j["beta"] = array(o.beta);
        } else if constexpr (std::is_same_v<T, Rotation>) {
          j["axis"] = array(o.r.axis());
          j["angle"] = o.r.angle();
        } else if constexpr (std::is_same_v<T, Translation>) {
          j["a"] = array(o.a);
        }
      },
      op);
  return j;
}

json to_json(const WavepacketDescriptor& d) {
  json j;
  j["units"] = "eV";
  j["kappa"] = array(d.kappa);
  j["sigma_k"] = d.sigma_k;
  j["helicity"] = to_int(d.helicity);
  j["points"] = d.points;
  j["ops"] = json::array();
  for (const auto& op : d.ops) {
    j["ops"].push_back(to_json(op));
  }
  return j;
}

}  // namespace photon
