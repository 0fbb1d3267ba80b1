// mzmirror: momentum bookkeeping for a Mach-Zehnder interferometer whose inner
// mirror is also struck from outside by the D1 output beam.
//
// Exit codes: 0 success, 1 numerical or physics error, 2 configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"
#include "mzmirror/scenario.hpp"

namespace {

using mzmirror::ScenarioConfig;
using nlohmann::json;

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> r_squared;
  std::optional<double> omega;
  std::optional<double> alpha_degrees;
  std::optional<double> nbar;
  std::optional<double> delta_spread;
  std::optional<std::int64_t> grid_points;
  std::optional<double> grid_halfwidth;
  std::optional<std::int64_t> trials;
  std::optional<double> hbar;
  std::string out_dir;
  std::string format;
};

void add_shared_options(CLI::App& cmd, Overrides& o, const std::string& default_format) {
  o.format = default_format;
  cmd.add_option("--config", o.config_path, "Scenario JSON file");
  cmd.add_option("--seed", o.seed, "Random seed");
  cmd.add_option("--out", o.out_dir, "Output directory (default: stdout)");
  cmd.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_option("--r-squared", o.r_squared, "Beamsplitter reflectance r^2");
  cmd.add_option("--omega", o.omega, "Photon angular frequency");
  cmd.add_option("--alpha", o.alpha_degrees, "Inside incidence angle in degrees");
  cmd.add_option("--nbar", o.nbar, "Mean photon number");
  cmd.add_option("--delta-spread", o.delta_spread, "Mirror momentum spread");
  cmd.add_option("--grid-points", o.grid_points, "Momentum grid size");
  cmd.add_option("--grid-halfwidth", o.grid_halfwidth, "Momentum grid half-width (0 = auto)");
  cmd.add_option("--trials", o.trials, "Monte-Carlo trials");
  cmd.add_option("--hbar", o.hbar, "Action scale");
}

ScenarioConfig resolve(const Overrides& o) {
  ScenarioConfig c = o.config_path.empty() ? ScenarioConfig{} : mzmirror::load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.r_squared) c.r_squared = *o.r_squared;
  if (o.omega) c.omega = *o.omega;
  if (o.alpha_degrees) c.alpha_degrees = *o.alpha_degrees;
  if (o.nbar) c.nbar = *o.nbar;
  if (o.delta_spread) c.delta_spread = *o.delta_spread;
  if (o.grid_points) c.grid_points = *o.grid_points;
  if (o.grid_halfwidth) c.grid_halfwidth = *o.grid_halfwidth;
  if (o.trials) c.trials = *o.trials;
  if (o.hbar) c.hbar = *o.hbar;
  c.validate();
  return c;
}

// Writes `content` to <out_dir>/<name>, or to stdout when no directory was given.
void emit(const Overrides& o, const std::string& name, const std::string& content) {
  if (o.out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(o.out_dir);
  const std::filesystem::path path = std::filesystem::path(o.out_dir) / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << content;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string channels_csv(const json& report) {
  std::ostringstream out;
  mzmirror::io::write_csv_row(out, {"channel", "probability", "mean_kick", "weak_value_re",
                                    "weak_value_im", "weak_value_kick"});
  for (const json& ch : report.at("channels")) {
    mzmirror::io::write_csv_row(
        out, {ch.at("channel").get<std::string>(),
              mzmirror::io::format_number(ch.at("probability").get<double>()),
              mzmirror::io::format_number(ch.at("mean_kick").get<double>()),
              mzmirror::io::format_number(ch.at("weak_value_re").get<double>()),
              mzmirror::io::format_number(ch.at("weak_value_im").get<double>()),
              mzmirror::io::format_number(ch.at("weak_value_kick").get<double>())});
  }
  return out.str();
}

std::string points_csv(const json& report) {
  std::ostringstream out;
  const std::vector<std::string> keys = {"alpha_degrees", "intensity", "classical_total",
                                         "classical_closed_form", "quantum_total", "ratio"};
  mzmirror::io::write_csv_row(out, keys);
  for (const json& p : report.at("points")) {
    std::vector<std::string> fields;
    for (const auto& k : keys) fields.push_back(mzmirror::io::format_number(p.at(k).get<double>()));
    mzmirror::io::write_csv_row(out, fields);
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-by-photon momentum bookkeeping for a doubly-struck interferometer mirror"};
  app.require_subcommand(1);

  Overrides single_opts, ensemble_opts, scan_opts, compare_opts;
  std::vector<double> ratios;
  std::vector<double> alphas;

  CLI::App* single = app.add_subcommand("single-photon", "Weak values and kicks per detected photon");
  add_shared_options(*single, single_opts, "json");
  CLI::App* ensemble = app.add_subcommand("ensemble", "Monte-Carlo photon counting runs");
  add_shared_options(*ensemble, ensemble_opts, "json");
  CLI::App* scan = app.add_subcommand("decoherence", "Exact post-selection versus kick/spread");
  add_shared_options(*scan, scan_opts, "csv");
  scan->add_option("--ratios", ratios, "Kick-to-spread ratios")->delimiter(',');
  CLI::App* compare = app.add_subcommand("compare-classical", "Quantum versus classical totals");
  add_shared_options(*compare, compare_opts, "json");
  compare->add_option("--alphas", alphas, "Angles in degrees to sweep")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (single->parsed()) {
      const json report = mzmirror::run_single_photon(resolve(single_opts));
      if (single_opts.format == "csv") {
        emit(single_opts, "single_photon.csv", channels_csv(report));
      } else {
        emit(single_opts, "single_photon.json", dump(report));
      }
    } else if (ensemble->parsed()) {
      const mzmirror::EnsembleOutput result = mzmirror::run_ensemble(resolve(ensemble_opts));
      std::ostringstream csv;
      mzmirror::write_csv(csv, result.records);
      if (!ensemble_opts.out_dir.empty()) {
        emit(ensemble_opts, "runs.csv", csv.str());
        emit(ensemble_opts, "ensemble_summary.json", dump(result.summary));
      } else if (ensemble_opts.format == "csv") {
        std::cout << csv.str();
      } else {
        std::cout << dump(result.summary);
      }
    } else if (scan->parsed()) {
      const ScenarioConfig config = resolve(scan_opts);
      if (ratios.empty()) ratios = mzmirror::default_decoherence_ratios();
      const auto rows = mzmirror::run_decoherence_scan(config, ratios);
      if (scan_opts.format == "json") {
        emit(scan_opts, "decoherence.json", dump(mzmirror::decoherence_to_json(rows)));
      } else {
        std::ostringstream csv;
        mzmirror::write_csv(csv, rows);
        emit(scan_opts, "decoherence.csv", csv.str());
      }
    } else if (compare->parsed()) {
      const json report = mzmirror::run_compare_classical(resolve(compare_opts), alphas);
      if (compare_opts.format == "csv") {
        emit(compare_opts, "compare_classical.csv", points_csv(report));
      } else {
        emit(compare_opts, "compare_classical.json", dump(report));
      }
    }
  } catch (const mzmirror::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mzmirror::ZeroOverlapError& e) {
    std::cerr << "zero-overlap post-selection: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
