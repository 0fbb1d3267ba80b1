#include "mzmirror/ensemble.hpp"

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <random>

#include "mzmirror/classical_optics.hpp"
#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"

namespace mzmirror {

namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, std::int64_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

double d1_probability(const OpticalSetup& setup) {
  const Beamsplitter& bs = setup.bs();
  return detection_probability(intra_state(bs), detector_state(bs, Channel::D1));
}

struct PerPhotonKicks {
  double d1;
  double d2;
};

PerPhotonKicks per_photon_kicks(const OpticalSetup& setup, KickAttribution attribution) {
  if (attribution == KickAttribution::weak_value_d2) {
    return {net_kick_d1(setup), net_kick_d2(setup)};
  }
  const double per_photon_total =
      classical_mirror_momentum(setup.photon_momentum(), setup.bs(), setup.alpha());
  return {per_photon_total / d1_probability(setup), 0.0};
}

template <typename DrawTotal>
std::vector<RunRecord> sample(const OpticalSetup& setup, std::int64_t trials, std::uint64_t seed,
                              KickAttribution attribution, DrawTotal&& draw_total) {
  if (trials < 1) throw ConstraintViolation("at least one trial is required");
  const PerPhotonKicks kicks = per_photon_kicks(setup, attribution);
  const double p1 = d1_probability(setup);
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 engine = trial_engine(seed, trial);
    const std::int64_t total = draw_total(engine);
    std::binomial_distribution<std::int64_t> channel(total, p1);
    const std::int64_t n1 = channel(engine);
    const std::int64_t n2 = total - n1;
    const double momentum =
        static_cast<double>(n1) * kicks.d1 + static_cast<double>(n2) * kicks.d2;
    records.push_back({trial, total, n1, n2, momentum});
  }
  return records;
}

}  // namespace

double plain_mirror_quantum_kick(const OpticalSetup& setup) {
  return 2.0 * setup.nbar() * setup.photon_momentum() * setup.cos_alpha();
}

KickReport expected_kick_report(const OpticalSetup& setup) {
  const Beamsplitter& bs = setup.bs();
  const ModeAmplitudes psi = intra_state(bs);
  const double p1 = detection_probability(psi, detector_state(bs, Channel::D1));
  const double p2 = detection_probability(psi, detector_state(bs, Channel::D2));
  const double d1_total = setup.nbar() * p1 * net_kick_d1(setup);
  const double d2_total = setup.nbar() * p2 * net_kick_d2(setup);
  const double classical =
      classical_mirror_momentum(setup.nbar() * setup.photon_momentum(), bs, setup.alpha());
  return {d1_total, d2_total, d1_total + d2_total, classical};
}

std::vector<RunRecord> sample_runs(const OpticalSetup& setup, std::int64_t trials,
                                   std::uint64_t seed, KickAttribution attribution) {
  if (!(setup.nbar() > 0.0)) throw ConstraintViolation("sampling needs nbar > 0");
  return sample(setup, trials, seed, attribution, [&setup](std::mt19937_64& engine) {
    std::poisson_distribution<std::int64_t> photons(setup.nbar());
    return photons(engine);
  });
}

std::vector<RunRecord> sample_runs_fixed_total(const OpticalSetup& setup,
                                               std::int64_t total_photons, std::int64_t trials,
                                               std::uint64_t seed, KickAttribution attribution) {
  if (total_photons < 1) throw ConstraintViolation("fixed photon number must be positive");
  return sample(setup, trials, seed, attribution,
                [total_photons](std::mt19937_64&) { return total_photons; });
}

double fluctuation_analysis(std::span<const RunRecord> records) {
  if (records.size() < kMinFluctuationRecords) {
    throw DegenerateSampleError("fluctuation analysis needs at least 30 records, got " +
                                std::to_string(records.size()));
  }
  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::ArrayXd counts(n);
  Eigen::ArrayXd momenta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    counts(i) = static_cast<double>(records[static_cast<std::size_t>(i)].d1_count);
    momenta(i) = records[static_cast<std::size_t>(i)].mirror_momentum;
  }
  counts -= counts.mean();
  momenta -= momenta.mean();
  const double var_counts = counts.square().sum();
  const double var_momenta = momenta.square().sum();
  if (!(var_counts > 0.0) || !(var_momenta > 0.0)) {
    throw DegenerateSampleError("D1 counts or mirror momenta have zero variance");
  }
  return (counts * momenta).sum() / std::sqrt(var_counts * var_momenta);
}

std::vector<FixedTotalCorrelation> fixed_total_correlations(std::span<const RunRecord> records) {
  std::map<std::int64_t, std::vector<RunRecord>> groups;
  for (const RunRecord& r : records) groups[r.total_photons].push_back(r);
  std::vector<FixedTotalCorrelation> out;
  for (const auto& [total, group] : groups) {
    try {
      out.push_back({total, group.size(), fluctuation_analysis(group)});
    } catch (const DegenerateSampleError&) {
    }
  }
  return out;
}

MomentumSummary summarize_momentum(std::span<const RunRecord> records) {
  if (records.size() < 2) throw DegenerateSampleError("need at least two records to summarize");
  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::ArrayXd momenta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    momenta(i) = records[static_cast<std::size_t>(i)].mirror_momentum;
  }
  const double mean = momenta.mean();
  const double variance = (momenta - mean).square().sum() / static_cast<double>(n - 1);
  return {mean, std::sqrt(variance / static_cast<double>(n)), records.size()};
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  io::write_csv_row(out, {"trial", "N", "n1", "n2", "momentum"});
  for (const RunRecord& r : records) {
    io::write_csv_row(out, {io::format_number(static_cast<long long>(r.trial)),
                            io::format_number(static_cast<long long>(r.total_photons)),
                            io::format_number(static_cast<long long>(r.d1_count)),
                            io::format_number(static_cast<long long>(r.d2_count)),
                            io::format_number(r.mirror_momentum)});
  }
}

}  // namespace mzmirror
