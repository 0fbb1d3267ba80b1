#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mzmirror/classical_optics.hpp"
#include "mzmirror/errors.hpp"

using namespace mzmirror;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

TEST_CASE("plain mirror") {
  CHECK(plain_mirror_kick(ClassicalBeam(100.0, 60.0 * kDeg)) == doctest::Approx(100.0));
  CHECK(plain_mirror_kick(ClassicalBeam(0.0, 60.0 * kDeg)) == 0.0);
  CHECK(plain_mirror_kick(ClassicalBeam(100.0, std::nextafter(std::numbers::pi / 2, 0.0))) <
        1e-12);
  CHECK_THROWS_AS(ClassicalBeam(-1.0, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(ClassicalBeam(1.0, std::numbers::pi / 2), ConstraintViolation);
}

TEST_CASE("interferometer intensities") {
  const InterferometerIntensities i =
      interferometer_intensities(100.0, Beamsplitter::from_reflectance(0.75));
  CHECK(i.arm_a == doctest::Approx(75.0).epsilon(1e-14));
  CHECK(i.arm_b == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(i.d1 == doctest::Approx(75.0).epsilon(1e-14));
  CHECK(i.d2 == doctest::Approx(25.0).epsilon(1e-14));

  const InterferometerIntensities balanced =
      interferometer_intensities(100.0, Beamsplitter::from_reflectance(0.5));
  CHECK(std::abs(balanced.d2) < 1e-12);
}

TEST_CASE("doubly struck mirror") {
  const Beamsplitter bs = Beamsplitter::from_reflectance(0.75);
  CHECK(classical_mirror_momentum(100.0, bs, 60.0 * kDeg) == doctest::Approx(-12.5).epsilon(1e-14));
  CHECK(std::abs(classical_mirror_momentum(100.0, Beamsplitter::from_reflectance(0.5),
                                           60.0 * kDeg)) < 1e-12);
  for (double r2 = 0.51; r2 < 0.995; r2 += 0.04) {
    CHECK(classical_mirror_momentum(1.0, Beamsplitter::from_reflectance(r2), 45.0 * kDeg) < 0.0);
  }
}

TEST_CASE("property: beam-by-beam sum equals the closed form and energy is conserved") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> reflectance(0.01, 0.99);
  std::uniform_real_distribution<double> angle(0.0, 89.0 * kDeg);
  std::uniform_real_distribution<double> intensity(0.0, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const Beamsplitter bs = Beamsplitter::from_reflectance(reflectance(rng));
    const double a = angle(rng);
    const double power = intensity(rng);
    const double summed = classical_mirror_momentum(power, bs, a);
    const double closed = classical_mirror_momentum_closed_form(power, bs, a);
    CHECK(std::abs(summed - closed) <= 1e-12 * std::max(1.0, power));
    const InterferometerIntensities beams = interferometer_intensities(power, bs);
    CHECK(std::abs(beams.arm_a + beams.arm_b - power) <= 1e-12 * std::max(1.0, power));
    CHECK(std::abs(beams.d1 + beams.d2 - power) <= 1e-12 * std::max(1.0, power));
  }
}
