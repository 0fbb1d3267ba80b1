#include "mzmirror/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "mzmirror/classical_optics.hpp"
#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"

namespace mzmirror {

namespace {

using nlohmann::json;

double degrees_to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

template <typename T>
void read_field(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  const json& value = doc.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!value.is_number()) throw ConfigError(std::string(key) + ": expected a number");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
      throw ConfigError(std::string(key) + ": expected a non-negative integer");
    }
  } else {
    if (!value.is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
  }
  target = value.get<T>();
}

json channel_entry(Channel channel, const PostselectionResult& exact, std::complex<double> weak,
                   double weak_kick) {
  json entry = postselection_to_json(channel, exact, weak);
  entry["weak_value_kick"] = weak_kick;
  return entry;
}

std::complex<double> channel_weak_value(const ModeAmplitudes& psi, const Beamsplitter& bs,
                                        Channel channel) {
  try {
    return weak_value_PB(psi, detector_state(bs, channel));
  } catch (const ZeroOverlapError& e) {
    throw ZeroOverlapError(std::string(to_string(channel)) + " channel: " + e.what());
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  static const char* const known[] = {"r_squared",      "omega", "alpha_degrees", "nbar",
                                      "delta_spread",   "grid_points", "grid_halfwidth",
                                      "seed",           "trials", "hbar"};
  for (const auto& item : doc.items()) {
    bool found = false;
    for (const char* k : known) found = found || item.key() == k;
    if (!found) throw ConfigError(item.key() + ": unknown configuration field");
  }
  ScenarioConfig c;
  read_field(doc, "r_squared", c.r_squared);
  read_field(doc, "omega", c.omega);
  read_field(doc, "alpha_degrees", c.alpha_degrees);
  read_field(doc, "nbar", c.nbar);
  read_field(doc, "delta_spread", c.delta_spread);
  read_field(doc, "grid_points", c.grid_points);
  read_field(doc, "grid_halfwidth", c.grid_halfwidth);
  read_field(doc, "seed", c.seed);
  read_field(doc, "trials", c.trials);
  read_field(doc, "hbar", c.hbar);
  return c;
}

json ScenarioConfig::to_json() const {
  return {{"r_squared", r_squared},       {"omega", omega},
          {"alpha_degrees", alpha_degrees}, {"nbar", nbar},
          {"delta_spread", delta_spread}, {"grid_points", grid_points},
          {"grid_halfwidth", grid_halfwidth}, {"seed", seed},
          {"trials", trials},             {"hbar", hbar}};
}

void ScenarioConfig::validate() const {
  if (!(r_squared > 0.0 && r_squared < 1.0)) {
    throw ConfigError("r_squared: must lie strictly between 0 and 1");
  }
  if (!(std::isfinite(omega) && omega > 0.0)) throw ConfigError("omega: must be positive");
  if (!(alpha_degrees > 0.0 && alpha_degrees < 90.0)) {
    throw ConfigError("alpha_degrees: must lie strictly between 0 and 90");
  }
  if (!(std::isfinite(nbar) && nbar >= 0.0)) {
    throw ConfigError("nbar: must be finite and non-negative");
  }
  if (!(std::isfinite(delta_spread) && delta_spread > 0.0)) {
    throw ConfigError("delta_spread: must be positive");
  }
  if (grid_points < 16) throw ConfigError("grid_points: must be at least 16");
  if (!(std::isfinite(grid_halfwidth) && grid_halfwidth >= 0.0)) {
    throw ConfigError("grid_halfwidth: must be non-negative (0 selects the default)");
  }
  if (trials < 1) throw ConfigError("trials: must be at least 1");
  if (!(std::isfinite(hbar) && hbar > 0.0)) throw ConfigError("hbar: must be positive");
}

double ScenarioConfig::alpha_radians() const { return degrees_to_radians(alpha_degrees); }

OpticalSetup ScenarioConfig::optical_setup() const {
  validate();
  return OpticalSetup(Beamsplitter::from_reflectance(r_squared), omega, alpha_radians(), hbar,
                      nbar);
}

MomentumGrid ScenarioConfig::grid_for(double max_kick) const {
  if (grid_halfwidth > 0.0) return MomentumGrid::symmetric(grid_halfwidth, grid_points);
  return default_grid(delta_spread, max_kick, grid_points);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
  }
  return ScenarioConfig::from_json(doc);
}

json postselection_to_json(Channel channel, const PostselectionResult& result,
                           std::complex<double> weak_value) {
  return {{"channel", to_string(channel)},
          {"probability", result.probability},
          {"mean_kick", result.mean_kick},
          {"weak_value_re", weak_value.real()},
          {"weak_value_im", weak_value.imag()}};
}

json run_single_photon(const ScenarioConfig& config) {
  const OpticalSetup setup = config.optical_setup();
  const Beamsplitter& bs = setup.bs();
  const ModeAmplitudes psi = intra_state(bs);
  const ModeAmplitudes phi1 = detector_state(bs, Channel::D1);
  const ModeAmplitudes phi2 = detector_state(bs, Channel::D2);

  const std::complex<double> weak1 = channel_weak_value(psi, bs, Channel::D1);
  const std::complex<double> weak2 = channel_weak_value(psi, bs, Channel::D2);
  const D1KickParts d1 = d1_kick_parts(setup);
  const double d2 = net_kick_d2(setup);

  const double kick = setup.delta_kick();
  const PointerState pointer = gaussian_pointer(config.grid_for(kick), config.delta_spread);
  const JointState joint = couple_reflection(psi, pointer, kick);
  const PostselectionResult exact1 = postselect(joint, phi1);
  const PostselectionResult exact2 = postselect(joint, phi2);

  json report = {{"schema_version", io::kSchemaVersion},
                 {"command", "single-photon"},
                 {"config", config.to_json()},
                 {"delta_kick", kick},
                 {"beta_degrees", setup.beta() * 180.0 / std::numbers::pi},
                 {"visibility", std::abs(overlap(pointer, shift(pointer, kick)))},
                 {"weak_value_d1", weak1.real()},
                 {"weak_value_d2", weak2.real()},
                 {"d1_kick_inside", d1.inside},
                 {"d1_kick_outside", d1.outside},
                 {"net_kick_d1", d1.net()},
                 {"net_kick_d2", d2},
                 {"channels",
                  json::array({channel_entry(Channel::D1, exact1, weak1, d1.inside),
                               channel_entry(Channel::D2, exact2, weak2, d2)})}};
  if (setup.nbar() > 0.0) report["regime"] = to_string(regime_classify(setup, config.delta_spread));
  return report;
}

EnsembleOutput run_ensemble(const ScenarioConfig& config) {
  const OpticalSetup setup = config.optical_setup();
  if (!(setup.nbar() > 0.0)) throw ConfigError("nbar: must be positive for ensemble runs");
  const KickReport expected = expected_kick_report(setup);

  EnsembleOutput out;
  out.records = sample_runs(setup, config.trials, config.seed);
  const MomentumSummary stats = summarize_momentum(out.records);

  const auto fixed_total = static_cast<std::int64_t>(std::llround(setup.nbar()));
  const std::vector<RunRecord> conditioned =
      sample_runs_fixed_total(setup, std::max<std::int64_t>(fixed_total, 1), config.trials,
                              config.seed);
  const std::vector<RunRecord> contrast =
      sample_runs(setup, config.trials, config.seed, KickAttribution::classical_d1);

  auto correlation_or_null = [](std::span<const RunRecord> records) -> json {
    try {
      return fluctuation_analysis(records);
    } catch (const DegenerateSampleError&) {
      return nullptr;
    }
  };

  out.summary = {
      {"schema_version", io::kSchemaVersion},
      {"command", "ensemble"},
      {"config", config.to_json()},
      {"trials", config.trials},
      {"seed", config.seed},
      {"sample_mean", stats.mean},
      {"standard_error", stats.standard_error},
      {"expected", expected.grand_total},
      {"expected_d1_total", expected.d1_total},
      {"expected_d2_total", expected.d2_total},
      {"classical_reference", expected.classical_reference},
      {"within_3_standard_errors",
       std::abs(stats.mean - expected.grand_total) <= 3.0 * stats.standard_error},
      {"correlation_unconditional", correlation_or_null(out.records)},
      {"correlation_fixed_total", correlation_or_null(conditioned)},
      {"fixed_total_photons", fixed_total},
      {"correlation_classical_contrast", correlation_or_null(contrast)}};
  return out;
}

std::vector<double> default_decoherence_ratios() {
  return {0.0, 0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
}

std::vector<DecoherenceRow> run_decoherence_scan(const ScenarioConfig& config,
                                                 std::span<const double> kick_over_spread) {
  config.validate();
  if (kick_over_spread.empty()) throw ConfigError("ratios: list must not be empty");
  double max_ratio = 0.0;
  for (double x : kick_over_spread) {
    if (!std::isfinite(x)) throw ConfigError("ratios: entries must be finite");
    max_ratio = std::max(max_ratio, std::abs(x));
  }
  const OpticalSetup setup = config.optical_setup();
  const Beamsplitter& bs = setup.bs();
  const ModeAmplitudes psi = intra_state(bs);
  const ModeAmplitudes phi1 = detector_state(bs, Channel::D1);
  const ModeAmplitudes phi2 = detector_state(bs, Channel::D2);
  const double weak2 = channel_weak_value(psi, bs, Channel::D2).real();

  const double spread = config.delta_spread;
  const PointerState pointer = gaussian_pointer(config.grid_for(max_ratio * spread), spread);

  std::vector<DecoherenceRow> rows;
  for (double ratio : kick_over_spread) {
    const double kick = ratio * spread;
    const JointState joint = couple_reflection(psi, pointer, kick);
    const PostselectionResult exact1 = postselect(joint, phi1);
    const PostselectionResult exact2 = postselect(joint, phi2);
    rows.push_back({ratio, std::abs(overlap(pointer, shift(pointer, kick))), exact1.probability,
                    exact2.probability, exact2.mean_kick, weak2 * kick});
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const DecoherenceRow> rows) {
  io::write_csv_row(out, {"kick_over_spread", "visibility", "p_d1", "p_d2", "d2_mean_kick",
                          "d2_weak_prediction"});
  for (const DecoherenceRow& r : rows) {
    io::write_csv_row(out, {io::format_number(r.kick_over_spread), io::format_number(r.visibility),
                            io::format_number(r.p_d1), io::format_number(r.p_d2),
                            io::format_number(r.d2_mean_kick),
                            io::format_number(r.d2_weak_prediction)});
  }
}

json decoherence_to_json(std::span<const DecoherenceRow> rows) {
  json out = {{"schema_version", io::kSchemaVersion}, {"command", "decoherence"}};
  json list = json::array();
  for (const DecoherenceRow& r : rows) {
    list.push_back({{"kick_over_spread", r.kick_over_spread},
                    {"visibility", r.visibility},
                    {"p_d1", r.p_d1},
                    {"p_d2", r.p_d2},
                    {"d2_mean_kick", r.d2_mean_kick},
                    {"d2_weak_prediction", r.d2_weak_prediction}});
  }
  out["rows"] = std::move(list);
  return out;
}

json run_compare_classical(const ScenarioConfig& config, std::span<const double> alpha_degrees) {
  config.validate();
  if (!(config.nbar > 0.0)) throw ConfigError("nbar: must be positive to compare totals");
  std::vector<double> angles(alpha_degrees.begin(), alpha_degrees.end());
  if (angles.empty()) angles.push_back(config.alpha_degrees);

  json points = json::array();
  for (double degrees : angles) {
    ScenarioConfig point = config;
    point.alpha_degrees = degrees;
    const OpticalSetup setup = point.optical_setup();
    const KickReport quantum = expected_kick_report(setup);
    const double intensity = setup.nbar() * setup.photon_momentum();
    points.push_back(
        {{"alpha_degrees", degrees},
         {"intensity", intensity},
         {"classical_total", quantum.classical_reference},
         {"classical_closed_form",
          classical_mirror_momentum_closed_form(intensity, setup.bs(), setup.alpha())},
         {"quantum_total", quantum.grand_total},
         {"quantum_d1_total", quantum.d1_total},
         {"quantum_d2_total", quantum.d2_total},
         {"ratio", quantum.grand_total / quantum.classical_reference}});
  }
  json out = {{"schema_version", io::kSchemaVersion},
              {"command", "compare-classical"},
              {"config", config.to_json()},
              {"points", points}};
  const json& first = points.front();
  for (const char* key : {"classical_total", "quantum_total", "ratio"}) out[key] = first[key];
  return out;
}

}  // namespace mzmirror
