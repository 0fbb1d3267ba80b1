#pragma once

// Coherent-state photon statistics on top of the single-photon kicks: expected
// per-channel totals, seeded Monte-Carlo photon counting, and the correlation
// between D1 counts and the mirror momentum.

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "mzmirror/weak_measurement.hpp"

namespace mzmirror {

struct RunRecord {
  std::int64_t trial;
  std::int64_t total_photons;
  std::int64_t d1_count;
  std::int64_t d2_count;
  double mirror_momentum;
};

struct KickReport {
  double d1_total;
  double d2_total;
  double grand_total;
  double classical_reference;
};

/// Which photons a sampled run charges with the mirror momentum.
enum class KickAttribution {
  /// Each D2 photon carries its weak-value kick; D1 photons carry none.
  weak_value_d2,
  /// Classical-intuition contrast: the whole expected total is split evenly
  /// over D1 photons and nothing is charged to D2.
  classical_d1,
};

/// 2 nbar hbar omega cos(alpha): average kick of a coherent beam on a plain mirror.
double plain_mirror_quantum_kick(const OpticalSetup& setup);

/// Expected per-channel totals for nbar photons and the classical reference at I = nbar hbar omega.
/// Throws ZeroOverlapError for a balanced splitter.
KickReport expected_kick_report(const OpticalSetup& setup);

/// Draws N ~ Poisson(nbar) and n1 ~ Binomial(N, 4 r^2 t^2) per trial. Each trial
/// has its own engine keyed by (seed, trial), so results do not depend on
/// evaluation order.
std::vector<RunRecord> sample_runs(const OpticalSetup& setup, std::int64_t trials,
                                   std::uint64_t seed,
                                   KickAttribution attribution = KickAttribution::weak_value_d2);

/// Same as sample_runs with the photon number held at `total_photons`.
std::vector<RunRecord> sample_runs_fixed_total(
    const OpticalSetup& setup, std::int64_t total_photons, std::int64_t trials,
    std::uint64_t seed, KickAttribution attribution = KickAttribution::weak_value_d2);

/// Pearson correlation between the D1 count and the mirror momentum.
/// Needs at least 30 records with non-zero variance in both; otherwise DegenerateSampleError.
double fluctuation_analysis(std::span<const RunRecord> records);

inline constexpr std::size_t kMinFluctuationRecords = 30;

struct FixedTotalCorrelation {
  std::int64_t total_photons;
  std::size_t records;
  double correlation;
};

/// fluctuation_analysis restricted to each group of records sharing the same N.
/// Groups that are too small or degenerate are skipped.
std::vector<FixedTotalCorrelation> fixed_total_correlations(std::span<const RunRecord> records);

struct MomentumSummary {
  double mean;
  double standard_error;
  std::size_t count;
};

MomentumSummary summarize_momentum(std::span<const RunRecord> records);

/// CSV with header `trial,N,n1,n2,momentum`.
void write_csv(std::ostream& out, std::span<const RunRecord> records);

}  // namespace mzmirror
