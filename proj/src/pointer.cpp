#include "mzmirror/pointer.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"
#include "mzmirror/quadrature.hpp"

namespace mzmirror {

namespace {

constexpr Eigen::Index kMinGridPoints = 16;

// Angular wavenumbers of the DFT bins in standard FFT order.
// For even n the Nyquist bin is reported as +pi/h.
Eigen::VectorXd conjugate_wavenumbers(const MomentumGrid& grid) {
  const Eigen::Index n = grid.size();
  const double period = grid.spacing() * static_cast<double>(n);
  Eigen::VectorXd k(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index m = (j <= n / 2) ? j : j - n;
    k(j) = 2.0 * std::numbers::pi * static_cast<double>(m) / period;
  }
  return k;
}

bool has_nyquist_bin(Eigen::Index n) { return n % 2 == 0; }

template <typename Multiplier>
Eigen::VectorXcd apply_in_conjugate_domain(const MomentumGrid& grid,
                                           const Eigen::VectorXcd& samples,
                                           Multiplier&& multiplier) {
  const Eigen::Index n = grid.size();
  std::vector<std::complex<double>> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, in);
  const Eigen::VectorXd k = conjugate_wavenumbers(grid);
  for (Eigen::Index j = 0; j < n; ++j) {
    const bool nyquist = has_nyquist_bin(n) && j == n / 2;
    spectrum[static_cast<std::size_t>(j)] *= multiplier(k(j), nyquist);
  }
  std::vector<std::complex<double>> out;
  fft.inv(out, spectrum);
  return Eigen::Map<const Eigen::VectorXcd>(out.data(), n);
}

}  // namespace

MomentumGrid::MomentumGrid(double p_min, double p_max, Eigen::Index n)
    : p_min_(p_min), p_max_(p_max), n_(n) {
  if (!(std::isfinite(p_min) && std::isfinite(p_max) && p_max > p_min)) {
    throw ConstraintViolation("momentum grid requires finite p_min < p_max");
  }
  if (n < kMinGridPoints) {
    throw ConstraintViolation("momentum grid requires at least 16 points");
  }
}

MomentumGrid MomentumGrid::symmetric(double halfwidth, Eigen::Index n) {
  return MomentumGrid(-halfwidth, halfwidth, n);
}

Eigen::VectorXd MomentumGrid::points() const {
  Eigen::VectorXd p(n_);
  for (Eigen::Index k = 0; k < n_; ++k) p(k) = at(k);
  return p;
}

MomentumGrid default_grid(double spread, double max_kick, Eigen::Index n) {
  if (!(spread > 0.0)) throw ConstraintViolation("pointer spread must be positive");
  const double reach = kGaussianCoverage * spread;
  return MomentumGrid::symmetric(std::max(reach, std::abs(max_kick) + reach), n);
}

PointerState::PointerState(MomentumGrid grid, Eigen::VectorXcd amplitudes,
                           std::optional<double> sigma_hint)
    : grid_(grid), amplitudes_(std::move(amplitudes)), sigma_hint_(sigma_hint) {
  if (amplitudes_.size() != grid_.size()) {
    throw GridMismatchError("pointer has " + std::to_string(amplitudes_.size()) +
                            " samples but its grid has " + std::to_string(grid_.size()));
  }
}

double PointerState::norm() const {
  return trapezoid(amplitudes_.cwiseAbs2(), grid_.spacing());
}

bool PointerState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

PointerState PointerState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw ConstraintViolation("cannot normalize a zero pointer state");
  return PointerState(grid_, amplitudes_ / std::sqrt(n), sigma_hint_);
}

PointerState gaussian_pointer(const MomentumGrid& grid, double spread) {
  if (!(spread > 0.0)) throw ConstraintViolation("pointer spread must be positive");
  const double reach = kGaussianCoverage * spread * (1.0 - 1e-12);
  if (grid.p_min() > -reach || grid.p_max() < reach) {
    throw GridCoverageError("grid [" + io::format_number(grid.p_min()) + ", " +
                            io::format_number(grid.p_max()) +
                            "] does not cover +-8 spreads of a Gaussian with spread " +
                            io::format_number(spread));
  }
  const Eigen::VectorXd p = grid.points();
  const Eigen::VectorXcd samples =
      (-p.array().square() / (2.0 * spread * spread)).exp().cast<std::complex<double>>();
  return PointerState(grid, samples, spread).normalized();
}

std::pair<double, double> significant_support(const MomentumGrid& grid,
                                              const Eigen::VectorXcd& samples) {
  const Eigen::VectorXd magnitude = samples.cwiseAbs();
  const double threshold = kTailAmplitudeFraction * magnitude.maxCoeff();
  Eigen::Index lo = 0;
  Eigen::Index hi = magnitude.size() - 1;
  while (lo < hi && magnitude(lo) <= threshold) ++lo;
  while (hi > lo && magnitude(hi) <= threshold) --hi;
  return {grid.at(lo), grid.at(hi)};
}

Eigen::VectorXcd spectral_shift(const MomentumGrid& grid, const Eigen::VectorXcd& samples,
                                double kick) {
  if (kick == 0.0) return samples;
  return apply_in_conjugate_domain(grid, samples, [kick](double k, bool nyquist) {
    // The Nyquist bin stands for both +-k; average the two phases.
    if (nyquist) return std::complex<double>(std::cos(k * kick), 0.0);
    return std::polar(1.0, -k * kick);
  });
}

Eigen::VectorXcd spectral_derivative(const MomentumGrid& grid, const Eigen::VectorXcd& samples) {
  return apply_in_conjugate_domain(grid, samples, [](double k, bool nyquist) {
    if (nyquist) return std::complex<double>(0.0, 0.0);
    return std::complex<double>(0.0, k);
  });
}

PointerState shift(const PointerState& state, double kick) {
  if (!std::isfinite(kick)) throw ConstraintViolation("kick must be finite");
  const MomentumGrid& grid = state.grid();
  const auto [lo, hi] = significant_support(grid, state.amplitudes());
  if (lo + kick < grid.p_min() || hi + kick > grid.p_max()) {
    throw GridCoverageError("shift by " + io::format_number(kick) +
                            " pushes significant density off the grid [" +
                            io::format_number(grid.p_min()) + ", " +
                            io::format_number(grid.p_max()) + "]");
  }
  return PointerState(grid, spectral_shift(grid, state.amplitudes(), kick), state.sigma_hint());
}

double mean_momentum(const PointerState& state) {
  if (!state.is_normalized()) {
    throw ConstraintViolation("mean_momentum requires a normalized pointer state (norm = " +
                              io::format_number(state.norm()) + ")");
  }
  const Eigen::VectorXd weighted =
      state.grid().points().cwiseProduct(state.amplitudes().cwiseAbs2());
  return trapezoid(weighted, state.grid().spacing());
}

std::complex<double> overlap(const PointerState& s1, const PointerState& s2) {
  if (!(s1.grid() == s2.grid())) throw GridMismatchError("overlap of states on different grids");
  const Eigen::VectorXcd integrand = s1.amplitudes().conjugate().cwiseProduct(s2.amplitudes());
  return trapezoid(integrand, s1.grid().spacing());
}

void write_csv(std::ostream& out, const PointerState& state) {
  io::write_csv_row(out, {"p", "re_amplitude", "im_amplitude"});
  const MomentumGrid& grid = state.grid();
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const std::complex<double> a = state.amplitudes()(k);
    io::write_csv_row(out, {io::format_number(grid.at(k)), io::format_number(a.real()),
                            io::format_number(a.imag())});
  }
}

}  // namespace mzmirror
