#pragma once

// Wave-optics momentum bookkeeping. Intensities and momenta are per unit beam
// area and unit duration, with c = 1. Momenta use the signed axis of the
// quantum calculation: positive along the outward normal of the mirror's inside face.

#include "mzmirror/photon_modes.hpp"

namespace mzmirror {

class ClassicalBeam {
 public:
  ClassicalBeam(double intensity, double incidence_angle);

  double intensity() const { return intensity_; }
  double incidence_angle() const { return incidence_angle_; }

 private:
  double intensity_;
  double incidence_angle_;
};

/// 2 I cos(angle): kick on a plain mirror that reflects the whole beam.
double plain_mirror_kick(const ClassicalBeam& beam);

struct InterferometerIntensities {
  double arm_a;
  double arm_b;
  double d1;
  double d2;
};

/// (r^2 I, t^2 I, 4 r^2 t^2 I, (1 - 4 r^2 t^2) I).
InterferometerIntensities interferometer_intensities(double intensity, const Beamsplitter& bs);

/// Net kick on the doubly-struck mirror, summed beam by beam:
/// 2 I_B cos(alpha) from the arm-B beam inside, minus 2 I_D1 cos(beta) from the
/// D1 beam outside, with cos(beta) = cos(alpha) / 2.
double classical_mirror_momentum(double intensity, const Beamsplitter& bs, double alpha);

/// Closed form -2 t^2 I (r^2 - t^2) cos(alpha) of the same quantity.
double classical_mirror_momentum_closed_form(double intensity, const Beamsplitter& bs,
                                             double alpha);

}  // namespace mzmirror
