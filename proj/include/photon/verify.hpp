#pragma once

// Randomized property suites behind `photon verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace photon {

struct PropertyResult {
  std::string name;
  double max_residual = 0;
  double threshold = 0;

  /// NaN residuals fail.
  bool pass() const { return max_residual <= threshold; }
};

struct SuiteReport {
  std::string name;
  int trials = 0;
  std::vector<PropertyResult> properties;

  bool pass() const;
};

struct VerifyOptions {
  std::string suite = "all";
  std::optional<int> trials;  ///< defaults per suite
  std::uint64_t seed = 1;
  std::optional<double> tol;  ///< replaces every threshold
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;
  double wall_seconds = 0;

  bool pass() const;
  /// Without timestamp the report is a pure function of the options.
  nlohmann::json to_json(bool timestamp) const;
};

const std::vector<std::string>& suite_names();
int default_trials(const std::string& suite);

/// Throws std::invalid_argument for an unknown suite.
VerifyReport run_verify(const VerifyOptions& options);

SuiteReport verify_little_group(int trials, std::uint64_t seed);
SuiteReport verify_wigner(int trials, std::uint64_t seed);
SuiteReport verify_amplitudes(int trials, std::uint64_t seed);
SuiteReport verify_polarization(int trials, std::uint64_t seed);
SuiteReport verify_fields(int trials, std::uint64_t seed);

}  // namespace photon
