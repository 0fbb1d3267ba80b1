#pragma once

// Scenario configuration and the report builders behind the CLI subcommands.

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mzmirror/ensemble.hpp"
#include "mzmirror/weak_measurement.hpp"

namespace mzmirror {

/// Invalid scenario input. The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  double r_squared = 0.75;
  double omega = 1.0;
  double alpha_degrees = 60.0;
  double nbar = 1e4;
  double delta_spread = 10.0;
  std::int64_t grid_points = kDefaultGridPoints;
  /// 0 selects the default +-max(8 spread, |kick| + 8 spread).
  double grid_halfwidth = 0.0;
  std::uint64_t seed = 7;
  std::int64_t trials = 1000;
  double hbar = 1.0;

  /// Reads a JSON object; absent keys keep their defaults, unknown keys are rejected.
  static ScenarioConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  double alpha_radians() const;
  OpticalSetup optical_setup() const;
  /// Grid for a Gaussian pointer of spread delta_spread that must hold a shift of `max_kick`.
  MomentumGrid grid_for(double max_kick) const;
};

ScenarioConfig load_config(const std::string& path);

nlohmann::json postselection_to_json(Channel channel, const PostselectionResult& result,
                                     std::complex<double> weak_value);

/// Weak values, exact post-selection and net kicks for both detectors.
nlohmann::json run_single_photon(const ScenarioConfig& config);

struct EnsembleOutput {
  std::vector<RunRecord> records;
  nlohmann::json summary;
};

EnsembleOutput run_ensemble(const ScenarioConfig& config);

struct DecoherenceRow {
  double kick_over_spread;
  double visibility;
  double p_d1;
  double p_d2;
  double d2_mean_kick;
  double d2_weak_prediction;
};

std::vector<DecoherenceRow> run_decoherence_scan(const ScenarioConfig& config,
                                                 std::span<const double> kick_over_spread);

/// Ratios used when the caller does not supply a list.
std::vector<double> default_decoherence_ratios();

void write_csv(std::ostream& out, std::span<const DecoherenceRow> rows);
nlohmann::json decoherence_to_json(std::span<const DecoherenceRow> rows);

/// Classical and quantum mirror-momentum totals side by side, at the configured
/// alpha or, if given, at every angle in `alpha_degrees`.
nlohmann::json run_compare_classical(const ScenarioConfig& config,
                                     std::span<const double> alpha_degrees = {});

}  // namespace mzmirror
