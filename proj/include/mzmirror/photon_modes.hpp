#pragma once

// Single-photon arm basis {|A>, |B>} of the interferometer, the beamsplitter
// convention |in> -> i r |R> + t |T>, and the two detection channels.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "mzmirror/errors.hpp"

namespace mzmirror {

/// Library-wide identity tolerance for closed-form relations.
inline constexpr double kIdentityTolerance = 1e-12;

/// Amplitudes over the arm basis: index 0 is arm A, index 1 is arm B.
template <typename Scalar>
using BasicModeAmplitudes = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
using ModeAmplitudes = BasicModeAmplitudes<double>;

enum class Channel { D1, D2 };

inline const char* to_string(Channel c) { return c == Channel::D1 ? "D1" : "D2"; }

/// Lossless beamsplitter with real reflection and transmission amplitudes.
template <typename Scalar>
class BasicBeamsplitter {
 public:
  BasicBeamsplitter(Scalar r, Scalar t) : r_(r), t_(t) {
    if (!(r > Scalar(0) && r < Scalar(1) && t > Scalar(0) && t < Scalar(1))) {
      throw ConstraintViolation("beamsplitter amplitudes must lie strictly in (0, 1)");
    }
    if (std::abs(r * r + t * t - Scalar(1)) > Scalar(kIdentityTolerance)) {
      throw ConstraintViolation("beamsplitter is not lossless: r^2 + t^2 != 1");
    }
  }

  /// Builds the splitter from its intensity reflectance r^2; t^2 = 1 - r^2.
  static BasicBeamsplitter from_reflectance(Scalar r_squared) {
    if (!(r_squared > Scalar(0) && r_squared < Scalar(1))) {
      throw ConstraintViolation("reflectance r^2 must lie strictly in (0, 1)");
    }
    return BasicBeamsplitter(std::sqrt(r_squared), std::sqrt(Scalar(1) - r_squared));
  }

  Scalar r() const { return r_; }
  Scalar t() const { return t_; }
  Scalar reflectance() const { return r_ * r_; }
  Scalar transmittance() const { return t_ * t_; }

 private:
  Scalar r_;
  Scalar t_;
};

using Beamsplitter = BasicBeamsplitter<double>;

template <typename Scalar>
BasicModeAmplitudes<Scalar> arm_a() {
  return {std::complex<Scalar>(1), std::complex<Scalar>(0)};
}

template <typename Scalar>
BasicModeAmplitudes<Scalar> arm_b() {
  return {std::complex<Scalar>(0), std::complex<Scalar>(1)};
}

/// State inside the interferometer after the input splitter: i r |A> + t |B>.
template <typename Scalar>
BasicModeAmplitudes<Scalar> intra_state(const BasicBeamsplitter<Scalar>& bs) {
  return {std::complex<Scalar>(0, bs.r()), std::complex<Scalar>(bs.t(), 0)};
}

/// Arm-basis state that the output splitter routes entirely into `channel`.
/// D1: t |A> - i r |B>;  D2: -i r |A> + t |B>.
template <typename Scalar>
BasicModeAmplitudes<Scalar> detector_state(const BasicBeamsplitter<Scalar>& bs, Channel channel) {
  const std::complex<Scalar> t(bs.t(), 0);
  const std::complex<Scalar> minus_ir(0, -bs.r());
  if (channel == Channel::D1) return {t, minus_ir};
  return {minus_ir, t};
}

/// <x|y>, antilinear in the first argument.
template <typename Scalar>
std::complex<Scalar> inner_product(const BasicModeAmplitudes<Scalar>& x,
                                   const BasicModeAmplitudes<Scalar>& y) {
  return x.dot(y);
}

template <typename Scalar>
bool is_normalized(const BasicModeAmplitudes<Scalar>& x, Scalar tol = Scalar(kIdentityTolerance)) {
  return std::abs(x.squaredNorm() - Scalar(1)) <= tol;
}

/// |<channel|psi>|^2 for normalized states.
template <typename Scalar>
Scalar detection_probability(const BasicModeAmplitudes<Scalar>& psi,
                             const BasicModeAmplitudes<Scalar>& channel_state) {
  if (!is_normalized(psi) || !is_normalized(channel_state)) {
    throw ConstraintViolation("detection_probability requires normalized states");
  }
  return std::norm(inner_product(channel_state, psi));
}

/// (|a|^2, |b|^2): probabilities of finding the photon in arm A and arm B.
template <typename Scalar>
std::pair<Scalar, Scalar> arm_probabilities(const BasicModeAmplitudes<Scalar>& psi) {
  return {std::norm(psi(0)), std::norm(psi(1))};
}

}  // namespace mzmirror
