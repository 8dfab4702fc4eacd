// Superdense coding end to end: ideal and mixed-state protocol states,
// ensemble signal statistics and error probability, coil SNR, the witness F
// with observables W1/W2, the conventional witness, and the single-run
// decomposition of the conventional witness into spin-magnetization
// measurements.

#pragma once

#include <array>

#include "spinqc/quantum_state.hpp"

namespace spinqc {

struct SdcMessage {
  int z;  // bit
  int x;  // bit

  SdcMessage(int z_, int x_);
};

struct SignalStats {
  double mu_i = 0.0;
  double mu_s = 0.0;
  double sigma_i = 0.0;
  double sigma_s = 0.0;
  double log10_error_probability = 0.0;
  bool pure_guess = false;  // set when eps = 0 (P_e = 1/2 exactly)
};

struct SnrParams {
  double quality_factor;   // Q
  double coil_volume_m3;   // V
  double resistance_ohm;   // R
  double omega_i;          // rad/s
  double gamma_i;          // rad/s/T
  double bandwidth_hz;     // Delta nu
  double temperature_k;
  double n_molecules;
  double epsilon_i;
};

struct WitnessDecomposition {
  double a;
  double b;
  double c;
  Operator u;  // 4x4 unitary; W~ = U^dag (a Z⊗I + b I⊗Z + c I⊗I) U
};

// U_ent = U_cn (H_I ⊗ I_S), U_Bell = (H_I ⊗ I_S) U_cn, U_zx = Z^z X^x on the
// I spin (first factor).
Operator u_ent();
Operator u_bell();
Operator u_zx(const SdcMessage& msg);

// Runs the pure-state protocol on |00> and reads the signs of <Z_I>, <Z_S>.
SdcMessage ideal_sdc(const SdcMessage& msg);

struct SdcStates {
  DensityMatrix rho1;  // shared Bell-diagonal state
  DensityMatrix rho2;  // after encoding
  DensityMatrix rho3;  // after disentangling: product diagonal state
};

SdcStates mixed_sdc_states(double p_i, double p_s, const SdcMessage& msg);

// mu = (-1)^bit n eps, sigma^2 = n (1 - eps^2); the error probability is the
// Gaussian tail in log10 domain.
SignalStats signal_stats(double n, double eps_i, double eps_s, const SdcMessage& msg);

// V_S / V_N with V_S = (1/4) sqrt((Q/V) mu0 R omega) hbar gamma n eps and
// V_N = sqrt(4 k_B T R dnu).
double snr(const SnrParams& params);

// w1 = tr(rho2 X⊗X), w2 = tr(rho2 Z⊗Z).
std::pair<double, double> evaluate_w1_w2(const DensityMatrix& rho2);

// F = 1/2 - (1/4)(1+|w1|)(1+|w2|); F < 0 declares entanglement.
double witness_F(double w1, double w2);

// W = (1/4)(I⊗I + (-1)^zbar X⊗X + (-1)^zbar (-1)^xbar Y⊗Y + (-1)^xbar Z⊗Z).
Operator conventional_witness(const SdcMessage& msg);

// Basis change diagonalizing the Bell-diagonal family: columns are the four
// Bell states in (z,x) order.
Mat u_hcn();

// The example unitary of the decomposition, alpha >= 3/4.
Mat v_ex(double alpha);

// a = b = 3/8, c = 1/4, U = V P U_HCN^dag with P swapping column 0 with
// column x+2z. Satisfies tr(rho2 W~) = tr(rho2 W) for all p_I, p_S.
WitnessDecomposition decompose_witness(const SdcMessage& msg);

Mat witness_tilde(const WitnessDecomposition& d);

struct SignFlipCheck {
  bool impossibility_confirmed;
  // max |tr(rho W'_k) - tr(rho W~_cand)| over the probe grid, for the
  // candidate (a', b') = (-a, -b) against W'_4 (the eqw3 case).
  double worst_violation;
  // per-candidate best (smallest over k in {2,3,4}) grid residual
  std::array<double, 3> candidate_best_residuals;
};

// Checks that for the fixed U of the (0,0) decomposition, the sign-flipped
// coefficient candidates (a,-b), (-a,b), (-a,-b) fail to reproduce the
// W'_2..W'_4 trace equalities on a probe grid of (p_I, p_S).
SignFlipCheck verify_sign_flip_impossibility();

}  // namespace spinqc
