// First-order spin-Hamiltonian energy levels and EPR/ENDOR line positions,
// TPPI phase-incremented echo simulation with spectral classification of the
// Bell-state preparations, and the angular-detection closed forms of the
// SDC-ENDOR experiment.

#pragma once

#include <array>
#include <vector>

#include "spinqc/pulse_engine.hpp"

namespace spinqc {

struct SpinHamiltonianParams {
  double nu_e_mhz;   // > 0
  double nu_n_mhz;   // >= 0
  double a_iso_mhz;  // signed
};

// E_{mS,mI}/h = nu_e mS - nu_n mI + a mS mI, keyed by (mS, mI) in {+,-}^2
// with +1/2 first: order (++), (+-), (-+), (--).
std::array<double, 4> energy_levels(const SpinHamiltonianParams& p);

// { nu_e + a/2, nu_e - a/2 }
std::array<double, 2> epr_lines(const SpinHamiltonianParams& p);

enum class EndorRegime { NU_CENTERED, A_CENTERED, DEGENERATE };

struct EndorLines {
  std::array<double, 2> freqs_mhz;  // ascending
  EndorRegime regime;
};

// |nu_n -+ a/2|; two peaks centered at nu_n (split |a|) when nu_n > |a|/2,
// centered at |a|/2 (split 2 nu_n) otherwise.
EndorLines endor_lines(const SpinHamiltonianParams& p);

struct TppiSequence {
  Transition mw;      // entangling + detection microwave transition
  Transition rf1;     // entangling radio frequency transition
  Transition rf2;     // detection radio frequency transition
  int initial_level;  // 1..4
};

struct TppiConfig {
  TppiSequence sequence;
  double nu1_hz;  // phase frequency of the MW detection pulse
  double nu2_hz;  // phase frequency of the RF detection pulse
  double dt_s = 25e-9;
  int steps = 512;
  bool dephase_control = false;  // erase coherences before detection
};

struct Interferogram {
  std::vector<double> times_s;
  std::vector<double> signal;
};

// Echo observable: (rho_ii - rho_jj)/2 across the detection MW transition,
// after U_rf2(pi/2, phi2) U_mw(pi, phi1) with phi_j = 2 pi nu_j k dt.
Interferogram tppi_simulate(const TppiConfig& cfg);

double echo_signal(const DensityMatrix& rho, const Transition& mw_transition);

enum class TppiClass { SUM, DIFFERENCE, SINGLE_FREQUENCIES };

struct TppiClassification {
  TppiClass cls;
  double peak_hz;  // interpolated dominant non-DC frequency, 0 if flat
};

// DFT of the mean-subtracted signal (zero-padded 4x), dominant non-DC peak
// matched to the nearest of {|nu1-nu2|, nu1+nu2, nu1, nu2}.
TppiClassification tppi_classify(const Interferogram& ig, double nu1_hz, double nu2_hz);

enum class EncodingOp { I, X, Y, Z };

// Closed forms for the angular-dependent echo (detection phases enter via
// phi1 - phi2):
//   I:    (1/4)  (-1 + cos(phi1-phi2))
//   X, Y: (1/16) (-3 cos t - cos p + 4 cos(t/2) cos(p/2) cos(phi1-phi2))
//   Z:    (1/16) (-1 - 3 cos t + 4 cos(t/2) cos(phi1-phi2))
double angular_echo_closed_form(EncodingOp u, double theta, double phi, double phi1,
                                double phi2);

// Pulse-level route: pseudo-pure |10> deviation -> entangle (rf34 pi/2,
// mw24 pi) -> encoding pulses P^34/P^12 per row -> detection (mw24 pi phi1,
// rf34 pi/2 phi2) -> echo, normalized per unit pseudo-pure deviation.
double angular_echo_simulate(EncodingOp u, double theta, double phi, double phi1,
                             double phi2);

// Same echo with the detection MW pulse angle taken as a parameter; used for
// the 4 pi spinor-periodicity sweep.
double angular_echo_simulate_mw_angle(EncodingOp u, double theta, double phi, double phi1,
                                      double phi2, double mw_angle);

}  // namespace spinqc
