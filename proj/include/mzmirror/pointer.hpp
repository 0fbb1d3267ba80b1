#pragma once

// The mirror's momentum-space wavefunction phi(p), used as the pointer of a
// which-arm measurement. Samples live on a uniform grid; integrals use the
// trapezoidal rule and translations act through the conjugate (position)
// domain, so kicks need not be multiples of the grid spacing.

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <ostream>

namespace mzmirror {

/// Pointer norms must equal 1 within this tolerance to count as normalized.
inline constexpr double kNormTolerance = 1e-10;

/// Amplitudes below this fraction of the peak amplitude are treated as tails.
inline constexpr double kTailAmplitudeFraction = 1e-12;

/// Half-widths of a Gaussian pointer that the grid must cover, in units of its spread.
inline constexpr double kGaussianCoverage = 8.0;

inline constexpr Eigen::Index kDefaultGridPoints = 4096;

class MomentumGrid {
 public:
  MomentumGrid(double p_min, double p_max, Eigen::Index n);

  static MomentumGrid symmetric(double halfwidth, Eigen::Index n = kDefaultGridPoints);

  double p_min() const { return p_min_; }
  double p_max() const { return p_max_; }
  Eigen::Index size() const { return n_; }
  double spacing() const { return (p_max_ - p_min_) / static_cast<double>(n_ - 1); }
  double at(Eigen::Index k) const { return p_min_ + spacing() * static_cast<double>(k); }
  Eigen::VectorXd points() const;

  friend bool operator==(const MomentumGrid&, const MomentumGrid&) = default;

 private:
  double p_min_;
  double p_max_;
  Eigen::Index n_;
};

/// Grid symmetric about p = 0 that holds a Gaussian of spread `spread`
/// both unshifted and shifted by `max_kick`: +-max(8 spread, |max_kick| + 8 spread).
MomentumGrid default_grid(double spread, double max_kick = 0.0,
                          Eigen::Index n = kDefaultGridPoints);

class PointerState {
 public:
  PointerState(MomentumGrid grid, Eigen::VectorXcd amplitudes,
               std::optional<double> sigma_hint = std::nullopt);

  const MomentumGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  /// Advisory spread of the state; no computation reads it.
  std::optional<double> sigma_hint() const { return sigma_hint_; }

  /// Quadrature norm  int |phi(p)|^2 dp.
  double norm() const;
  bool is_normalized(double tol = kNormTolerance) const;
  /// Copy rescaled to unit quadrature norm. Throws ConstraintViolation on a zero state.
  PointerState normalized() const;

 private:
  MomentumGrid grid_;
  Eigen::VectorXcd amplitudes_;
  std::optional<double> sigma_hint_;
};

/// Normalized samples of exp(-p^2 / (2 spread^2)).
/// Throws GridCoverageError unless the grid spans at least +-8 spread.
PointerState gaussian_pointer(const MomentumGrid& grid, double spread);

/// phi(p) -> phi(p - kick). Throws GridCoverageError if the state's significant
/// amplitude would leave the grid.
PointerState shift(const PointerState& state, double kick);

/// int p |phi(p)|^2 dp. Throws ConstraintViolation for a non-normalized state.
double mean_momentum(const PointerState& state);

/// int conj(phi1) phi2 dp. Throws GridMismatchError for different grids.
std::complex<double> overlap(const PointerState& s1, const PointerState& s2);

/// Band-limited translation of raw grid samples by `kick`, no coverage check.
Eigen::VectorXcd spectral_shift(const MomentumGrid& grid, const Eigen::VectorXcd& samples,
                                double kick);

/// d/dp of the band-limited interpolant through the samples.
Eigen::VectorXcd spectral_derivative(const MomentumGrid& grid, const Eigen::VectorXcd& samples);

/// Grid range [lo, hi] outside of which every amplitude is a tail.
std::pair<double, double> significant_support(const MomentumGrid& grid,
                                              const Eigen::VectorXcd& samples);

/// CSV with header `p,re_amplitude,im_amplitude`.
void write_csv(std::ostream& out, const PointerState& state);

}  // namespace mzmirror
