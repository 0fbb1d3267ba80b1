#include "mzmirror/weak_measurement.hpp"

#include <cmath>
#include <numbers>

#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"
#include "mzmirror/quadrature.hpp"

namespace mzmirror {

OpticalSetup::OpticalSetup(Beamsplitter bs, double omega, double alpha, double hbar, double nbar)
    : bs_(bs), omega_(omega), alpha_(alpha), hbar_(hbar), nbar_(nbar) {
  if (!(std::isfinite(omega) && omega > 0.0)) {
    throw ConstraintViolation("photon frequency omega must be positive");
  }
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
    throw ConstraintViolation("inside incidence angle alpha must lie in (0, pi/2)");
  }
  if (!(std::isfinite(hbar) && hbar > 0.0)) throw ConstraintViolation("hbar must be positive");
  if (!(std::isfinite(nbar) && nbar >= 0.0)) {
    throw ConstraintViolation("mean photon number must be finite and non-negative");
  }
}

double JointState::norm() const {
  const Eigen::VectorXd density = comp_a.cwiseAbs2() + comp_b.cwiseAbs2();
  return trapezoid(density, grid.spacing());
}

namespace {

void require_coupling_inputs(const ModeAmplitudes& psi, const PointerState& pointer) {
  if (!is_normalized(psi)) throw ConstraintViolation("photon state must be normalized");
  if (!pointer.is_normalized()) throw ConstraintViolation("pointer state must be normalized");
}

}  // namespace

JointState couple_reflection(const ModeAmplitudes& psi, const PointerState& pointer, double kick) {
  require_coupling_inputs(psi, pointer);
  const PointerState kicked = shift(pointer, kick);
  return {pointer.grid(), psi(0) * pointer.amplitudes(), psi(1) * kicked.amplitudes()};
}

JointState couple_reflection(const ModeAmplitudes& psi, const PointerState& pointer,
                             const OpticalSetup& setup) {
  return couple_reflection(psi, pointer, setup.delta_kick());
}

JointState first_order_joint(const ModeAmplitudes& psi, const PointerState& pointer, double kick) {
  require_coupling_inputs(psi, pointer);
  const Eigen::VectorXcd& phi = pointer.amplitudes();
  const Eigen::VectorXcd slope = spectral_derivative(pointer.grid(), phi);
  JointState joint{pointer.grid(), psi(0) * phi, psi(1) * (phi - kick * slope)};
  // The linearized state has norm 1 + O(kick^2 / spread^2).
  const double scale = 1.0 / std::sqrt(joint.norm());
  joint.comp_a *= scale;
  joint.comp_b *= scale;
  return joint;
}

JointState first_order_joint(const ModeAmplitudes& psi, const PointerState& pointer,
                             const OpticalSetup& setup) {
  return first_order_joint(psi, pointer, setup.delta_kick());
}

std::complex<double> weak_value_PB(const ModeAmplitudes& psi, const ModeAmplitudes& phi_post) {
  const std::complex<double> amplitude = inner_product(phi_post, psi);
  if (std::abs(amplitude) < kZeroProbability) {
    throw ZeroOverlapError("post-selected state is orthogonal to the pre-selected state; "
                           "the weak value is undefined");
  }
  const std::complex<double> projected = std::conj(phi_post(1)) * psi(1);
  return projected / amplitude;
}

PostselectionResult postselect(const JointState& joint, const ModeAmplitudes& phi_post) {
  if (std::abs(joint.norm() - 1.0) > kNormTolerance) {
    throw ConstraintViolation("joint state must be normalized (norm = " +
                              io::format_number(joint.norm()) + ")");
  }
  if (!is_normalized(phi_post)) throw ConstraintViolation("post-selected state must be normalized");
  const Eigen::VectorXcd conditional =
      std::conj(phi_post(0)) * joint.comp_a + std::conj(phi_post(1)) * joint.comp_b;
  PointerState unnormalized(joint.grid, conditional);
  const double probability = unnormalized.norm();
  if (probability < kZeroProbability) {
    throw ZeroOverlapError("post-selection probability " + io::format_number(probability) +
                           " is below " + io::format_number(kZeroProbability));
  }
  PointerState pointer = unnormalized.normalized();
  const double kick = mean_momentum(pointer);
  return {probability, std::move(pointer), kick};
}

D1KickParts d1_kick_parts(const OpticalSetup& setup) {
  const Beamsplitter& bs = setup.bs();
  const double weak = weak_value_PB(intra_state(bs), detector_state(bs, Channel::D1)).real();
  return {weak * setup.delta_kick(), -2.0 * setup.photon_momentum() * setup.cos_beta()};
}

double net_kick_d1(const OpticalSetup& setup) { return d1_kick_parts(setup).net(); }

double net_kick_d2(const OpticalSetup& setup) {
  const Beamsplitter& bs = setup.bs();
  return weak_value_PB(intra_state(bs), detector_state(bs, Channel::D2)).real() *
         setup.delta_kick();
}

double coherence_visibility(const OpticalSetup& setup, double spread, Eigen::Index grid_points) {
  const double kick = setup.delta_kick();
  const PointerState phi = gaussian_pointer(default_grid(spread, kick, grid_points), spread);
  return std::abs(overlap(phi, shift(phi, kick)));
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::coherent_detectable: return "coherent_detectable";
    case Regime::coherent_undetectable: return "coherent_undetectable";
    case Regime::decoherent: return "decoherent";
  }
  return "unknown";
}

Regime regime_classify(const OpticalSetup& setup, double spread, RegimeThresholds thresholds) {
  if (!(setup.nbar() > 0.0)) throw ConstraintViolation("regime classification needs nbar > 0");
  if (!(spread > 0.0)) throw ConstraintViolation("pointer spread must be positive");
  const double kick = setup.delta_kick();
  const double nbar = setup.nbar();
  if (spread < thresholds.coherence * std::sqrt(nbar) * kick) return Regime::decoherent;
  if (nbar * kick > thresholds.detectability * spread) return Regime::coherent_detectable;
  return Regime::coherent_undetectable;
}

}  // namespace mzmirror
