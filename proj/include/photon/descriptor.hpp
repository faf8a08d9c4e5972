#pragma once

// Wavepacket descriptor: a single-helicity Gaussian packet plus the list of
// operations applied to it.
//
//   {"units": "eV", "kappa": [kx, ky, kz], "sigma_k": s, "helicity": 1,
//    "ops": [{"type": "boost", "beta": [bx, by, bz]},
//            {"type": "rotation", "axis": [ax, ay, az], "angle": a},
//            {"type": "translation", "a": [t, x, y, z]},
//            {"type": "parity"}, {"type": "time_reversal"}]}
//
// "helicity" always names the base packet; replaying "ops" reproduces the
// transformed amplitude. Translation components are in 1/eV.

#include "photon/amplitudes.hpp"

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace photon {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WavepacketDescriptor {
  Eigen::Vector3d kappa = Eigen::Vector3d(0, 0, 1);
  double sigma_k = 0.01;
  Helicity helicity = Helicity::plus;
  int points = 48;
  TransformRecord ops;

  /// Helicity after the recorded parity operations.
  Helicity current_helicity() const;
  HelicityAmplitude base() const;
  HelicityAmplitude build() const;
};

/// Throws ParseError on malformed input.
WavepacketDescriptor parse_descriptor(const nlohmann::json& j);
WavepacketDescriptor parse_descriptor_text(const std::string& text);

nlohmann::json to_json(const TransformOp& op);
nlohmann::json to_json(const WavepacketDescriptor& d);
TransformOp parse_op(const nlohmann::json& j);

}  // namespace photon
