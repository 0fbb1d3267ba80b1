#pragma once

// Independent reference values for the test suites. Everything here works
// from closed forms or direct quadrature of analytic Gaussians; nothing calls
// the FFT path or the post-selection code it checks.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

/// <phi(p)|phi(p - kick)> for normalized phi ~ exp(-p^2 / (2 spread^2)).
inline double gaussian_overlap(double kick, double spread) {
  return std::exp(-kick * kick / (4.0 * spread * spread));
}

/// Trapezoidal integral of f over [-halfwidth, halfwidth] with n points.
inline double trapezoid(const std::function<double(double)>& f, double halfwidth, int n) {
  const double h = 2.0 * halfwidth / (n - 1);
  double sum = 0.5 * (f(-halfwidth) + f(halfwidth));
  for (int k = 1; k < n - 1; ++k) sum += f(-halfwidth + h * k);
  return sum * h;
}

inline double gaussian(double p, double center, double spread) {
  const double x = p - center;
  return std::exp(-x * x / (2.0 * spread * spread));
}

/// Overlap by direct quadrature of the analytic Gaussians.
inline double gaussian_overlap_quadrature(double kick, double spread, double halfwidth, int n) {
  const double cross = trapezoid(
      [&](double p) { return gaussian(p, 0.0, spread) * gaussian(p, kick, spread); }, halfwidth, n);
  const double norm = trapezoid(
      [&](double p) { return gaussian(p, 0.0, spread) * gaussian(p, 0.0, spread); }, halfwidth, n);
  return cross / norm;
}

/// Exact D1 post-selection probability 2 r^2 t^2 (1 + v), v the pointer overlap.
inline double d1_probability(double r_squared, double visibility) {
  return 2.0 * r_squared * (1.0 - r_squared) * (1.0 + visibility);
}

/// Exact conditional D2 mean kick for a Gaussian pointer:
/// kick (t^4 - r^2 t^2 v) / (r^4 + t^4 - 2 r^2 t^2 v).
inline double d2_mean_kick(double r_squared, double kick, double spread) {
  const double r2 = r_squared;
  const double t2 = 1.0 - r_squared;
  const double v = gaussian_overlap(kick, spread);
  return kick * (t2 * t2 - r2 * t2 * v) / (r2 * r2 + t2 * t2 - 2.0 * r2 * t2 * v);
}

/// Weak value of the arm-B projector for the D2 channel.
inline double d2_weak_value(double r_squared) {
  const double t2 = 1.0 - r_squared;
  return -t2 / (r_squared - t2);
}

struct ConditionalMoments {
  double probability;
  double mean;
};

/// Conditional probability and mean of c_a phi(p) + c_b phi(p - kick), by direct
/// quadrature of the analytic Gaussians (phi normalized).
inline ConditionalMoments conditional_moments(std::complex<double> c_a, std::complex<double> c_b,
                                              double kick, double spread, double halfwidth,
                                              int n) {
  const double norm = trapezoid(
      [&](double p) { return gaussian(p, 0.0, spread) * gaussian(p, 0.0, spread); }, halfwidth, n);
  auto density = [&](double p) {
    return std::norm(c_a * gaussian(p, 0.0, spread) + c_b * gaussian(p, kick, spread)) / norm;
  };
  const double prob = trapezoid(density, halfwidth, n);
  const double first = trapezoid([&](double p) { return p * density(p); }, halfwidth, n);
  return {prob, first / prob};
}

}  // namespace oracle
