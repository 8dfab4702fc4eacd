// Transition-selective pulses on the 4-level electron-nuclear system, the
// textbook gate set, pseudo-pure preparation, and Bell-state generation.
//
// Level map: 1=|00>, 2=|01>, 3=|10>, 4=|11>, electron bit first. Microwave
// pulses drive the electron-flipping transitions (1,3) and (2,4); radio
// frequency drives the nuclear-flipping (1,2) and (3,4).

#pragma once

#include <string>
#include <vector>

#include "spinqc/quantum_state.hpp"

namespace spinqc {

enum class Channel { MW, RF };

struct Transition {
  int i;  // 1..4, i < j
  int j;

  bool operator==(const Transition&) const = default;
};

inline constexpr Transition w12{1, 2};
inline constexpr Transition w13{1, 3};
inline constexpr Transition w24{2, 4};
inline constexpr Transition w34{3, 4};

struct TransitionPulse {
  Transition levels;
  double theta;  // radians
  double phi;    // carrier phase, radians
  Channel channel;
};

// Either a pulse or a dephase marker.
struct SequenceStep {
  bool dephase = false;
  TransitionPulse pulse{};
};

using PulseSequence = std::vector<SequenceStep>;

bool channel_matches_transition(Channel c, const Transition& t);

// Identity except the (i,j) block
//   [ cos(t/2)              -i e^{-i phi} sin(t/2) ]
//   [ -i e^{i phi} sin(t/2)  cos(t/2)              ]
// theta = 2 pi gives the spinor -1 on the block.
Operator pulse_unitary(const TransitionPulse& p);
Operator pulse_unitary(const Transition& t, Channel c, double theta, double phi);

enum class GateName { X, Y, Z, H, CNOT };

// Textbook 4x4 matrices. For one-qubit gates `target` is 1 (electron,
// leftmost factor) or 2 (nucleus); for CNOT pass control and target.
Operator gate(GateName name, int target, int control = 0);

// Five-factor pulse product of the NMR CNOT construction, with its printed
// 1/2^{5/2} prefactor; equals CNOT (control = first qubit) up to a global
// phase.
Operator cnot_pulse_product();

// Off-diagonal entries zeroed; trace preserved.
DensityMatrix dephase(const DensityMatrix& rho);

// MW(2,4) at arccos(-1/3) (109.47 deg), dephase, RF(1,2) at pi/2, dephase.
// Input must be diagonal. For electron-only polarization eps the output is
// (3+eps)/12 on levels {1,2,4} and (3-3eps)/12 on level 3, a pseudo-pure
// deviation on |10>.
DensityMatrix pseudo_pure_prepare(const DensityMatrix& rho_thermal);

// pulse(mw, pi) . pulse(rf, pi/2) . |initial>, carrier phases pi/2. The rf
// transition must touch the initial level; output has concurrence 1.
PureState bell_prepare(int initial_level, const Transition& rf, const Transition& mw);

// Text format: "mw24:pi:90,rf34:pi/2:0,dephase" (transition, angle,
// phase-degrees). Angles accept pi fractions ("pi", "pi/2", "3pi/2", "2pi")
// or plain numbers in degrees.
PulseSequence parse_sequence(const std::string& text);

DensityMatrix apply_sequence(const DensityMatrix& rho, const PulseSequence& seq);

}  // namespace spinqc
