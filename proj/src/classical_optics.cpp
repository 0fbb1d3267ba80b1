#include "mzmirror/classical_optics.hpp"

#include <cmath>
#include <numbers>

#include "mzmirror/errors.hpp"

namespace mzmirror {

namespace {

void require_intensity(double intensity) {
  if (!(std::isfinite(intensity) && intensity >= 0.0)) {
    throw ConstraintViolation("intensity must be finite and non-negative");
  }
}

void require_angle(double angle) {
  if (!(angle >= 0.0 && angle < std::numbers::pi / 2)) {
    throw ConstraintViolation("incidence angle must lie in [0, pi/2)");
  }
}

}  // namespace

ClassicalBeam::ClassicalBeam(double intensity, double incidence_angle)
    : intensity_(intensity), incidence_angle_(incidence_angle) {
  require_intensity(intensity);
  require_angle(incidence_angle);
}

double plain_mirror_kick(const ClassicalBeam& beam) {
  return 2.0 * beam.intensity() * std::cos(beam.incidence_angle());
}

InterferometerIntensities interferometer_intensities(double intensity, const Beamsplitter& bs) {
  require_intensity(intensity);
  const double r2 = bs.reflectance();
  const double t2 = bs.transmittance();
  const double d1 = 4.0 * r2 * t2 * intensity;
  return {r2 * intensity, t2 * intensity, d1, intensity - d1};
}

double classical_mirror_momentum(double intensity, const Beamsplitter& bs, double alpha) {
  require_angle(alpha);
  const InterferometerIntensities beams = interferometer_intensities(intensity, bs);
  const double cos_alpha = std::cos(alpha);
  const double cos_beta = 0.5 * cos_alpha;
  return 2.0 * beams.arm_b * cos_alpha - 2.0 * beams.d1 * cos_beta;
}

double classical_mirror_momentum_closed_form(double intensity, const Beamsplitter& bs,
                                             double alpha) {
  require_intensity(intensity);
  require_angle(alpha);
  const double t2 = bs.transmittance();
  return -2.0 * t2 * intensity * (bs.reflectance() - t2) * std::cos(alpha);
}

}  // namespace mzmirror
