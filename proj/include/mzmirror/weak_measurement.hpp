#pragma once

// Photon-mirror coupling inside the interferometer and its read-out by
// post-selection on the detector that fires.
//
// Sign convention: the momentum axis points along the outward normal of the
// mirror's inside face. A reflection inside the interferometer adds +delta;
// the external reflection of the D1 beam adds -2 hbar omega cos(beta).

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "mzmirror/photon_modes.hpp"
#include "mzmirror/pointer.hpp"

namespace mzmirror {

/// Post-selections with probability below this are reported as forbidden.
inline constexpr double kZeroProbability = 1e-14;

/// Experiment constants. The outside incidence angle beta is always derived
/// from the inside angle through cos(beta) = cos(alpha) / 2.
class OpticalSetup {
 public:
  OpticalSetup(Beamsplitter bs, double omega, double alpha, double hbar = 1.0, double nbar = 0.0);

  const Beamsplitter& bs() const { return bs_; }
  double omega() const { return omega_; }
  double alpha() const { return alpha_; }
  double hbar() const { return hbar_; }
  double nbar() const { return nbar_; }

  double cos_alpha() const { return std::cos(alpha_); }
  double cos_beta() const { return 0.5 * cos_alpha(); }
  double beta() const { return std::acos(cos_beta()); }
  /// hbar * omega (c = 1).
  double photon_momentum() const { return hbar_ * omega_; }
  /// Kick delta = 2 hbar omega cos(alpha) from one reflection inside the interferometer.
  double delta_kick() const { return 2.0 * photon_momentum() * cos_alpha(); }

 private:
  Beamsplitter bs_;
  double omega_;
  double alpha_;
  double hbar_;
  double nbar_;
};

/// Photon-mirror state: one pointer-valued component per arm.
struct JointState {
  MomentumGrid grid;
  Eigen::VectorXcd comp_a;
  Eigen::VectorXcd comp_b;

  /// int (|comp_a|^2 + |comp_b|^2) dp
  double norm() const;
};

struct PostselectionResult {
  double probability;
  PointerState conditional_pointer;
  double mean_kick;
};

/// Exact reflection coupling: a |A> phi(p) + b |B> phi(p - kick).
JointState couple_reflection(const ModeAmplitudes& psi, const PointerState& pointer, double kick);
JointState couple_reflection(const ModeAmplitudes& psi, const PointerState& pointer,
                             const OpticalSetup& setup);

/// First-order expansion  |psi> phi(p) - b |B> phi'(p) kick,  valid only for kick << spread.
/// Rescaled to unit norm. Kept to validate the linearized coupling against the exact one.
JointState first_order_joint(const ModeAmplitudes& psi, const PointerState& pointer, double kick);
JointState first_order_joint(const ModeAmplitudes& psi, const PointerState& pointer,
                             const OpticalSetup& setup);

/// Weak value <post|P_B|psi> / <post|psi> of the arm-B projector.
/// Throws ZeroOverlapError if |<post|psi>| < 1e-14.
std::complex<double> weak_value_PB(const ModeAmplitudes& psi, const ModeAmplitudes& phi_post);

/// Projects the photon onto `phi_post` and reads the conditional mirror state. Exact at any coupling.
PostselectionResult postselect(const JointState& joint, const ModeAmplitudes& phi_post);

struct D1KickParts {
  double inside;   ///< weak-value kick from the reflection inside the interferometer
  double outside;  ///< external reflection of the D1 beam (negative on our axis)
  double net() const { return inside + outside; }
};

D1KickParts d1_kick_parts(const OpticalSetup& setup);

/// Total mirror kick per photon detected at D1; vanishes identically.
double net_kick_d1(const OpticalSetup& setup);

/// Weak-value kick per photon detected at D2: -t^2 / (r^2 - t^2) * delta.
/// Throws ZeroOverlapError for a balanced splitter.
double net_kick_d2(const OpticalSetup& setup);

/// |<phi(p)|phi(p - delta)>| for a Gaussian pointer of the given spread.
/// 1 means the arms stay coherent; 0 means the mirror recorded which-path.
double coherence_visibility(const OpticalSetup& setup, double spread,
                            Eigen::Index grid_points = kDefaultGridPoints);

enum class Regime { coherent_detectable, coherent_undetectable, decoherent };

const char* to_string(Regime regime);

/// Multipliers in the coherence condition spread >= c1 sqrt(nbar) delta and the
/// detectability condition nbar delta > c2 spread.
struct RegimeThresholds {
  double coherence = 3.0;
  double detectability = 3.0;
};

Regime regime_classify(const OpticalSetup& setup, double spread, RegimeThresholds thresholds = {});

}  // namespace mzmirror
