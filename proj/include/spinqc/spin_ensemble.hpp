// Thermal-equilibrium spin ensembles: tanh polarizations, product thermal
// density matrices, the entanglement-threshold condition and its critical
// temperature, and the pulse-based polarization-transfer population model.

#pragma once

#include <string>
#include <vector>

#include "spinqc/quantum_state.hpp"

namespace spinqc {

namespace constants {
inline constexpr double h = 6.62607015e-34;        // J s
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double mu_bohr = 9.2740100783e-24;  // J/T
inline constexpr double mu0 = 1.25663706212e-6;      // N/A^2
inline constexpr double gamma_proton = 2.6752218744e8;  // rad/s/T
}  // namespace constants

struct SpinSpecies {
  std::string name;
  double larmor_frequency_hz;  // > 0
};

struct EnsembleConfig {
  double temperature_k;             // > 0
  std::vector<SpinSpecies> species;  // electron first when present
  double n_molecules = 1.0;          // used only in statistics
};

struct PolarizationPair {
  double epsilon_s;  // [0,1)
  double epsilon_i;  // [0,1)

  PolarizationPair(double eps_s, double eps_i);
};

// epsilon = tanh(h nu / (2 k_B T)); the sign convention stores epsilon
// positive with the excess population in |0> (the lower level).
double polarization(double larmor_frequency_hz, double temperature_k);

// Product state ⊗_i diag(p_i, q_i) with p = (1+eps)/2, q = (1-eps)/2. Exact
// tanh populations throughout; the truncated high-temperature deviation form
// (-3/2 S_z plus a uniform background) is an approximation of this and is
// not used for state construction.
DensityMatrix thermal_state(const EnsembleConfig& config);

// Two-spin product thermal state; the first polarization belongs to the
// leftmost tensor factor.
DensityMatrix thermal_state_2x2(double eps_first, double eps_second);

// eps_I eps_S + eps_I + eps_S - 1; positive iff the ideally Bell-prepared
// state is entangled (equivalently p_I p_S > 1/2).
double entanglement_margin(const PolarizationPair& p);

// Critical temperature where the margin crosses zero, by bisection on
// [1e-3, 1e3] K. With transfer=true the nuclear polarization is idealized to
// equal the electron one.
double threshold_temperature(double electron_freq_hz, double nuclear_freq_hz, bool transfer);

// Nuclear Larmor frequency for a named nucleus at the field implied by the
// electron frequency (g = 2 anchor: 1H is 14.4 MHz when the electron
// resonates at 9.5 GHz). Known nuclei: 1H, 2H, 14N, 15N, 19F.
double nuclear_frequency_hz(const std::string& nucleus, double electron_freq_hz);

// Three-step transfer sequence (MW pi on w13, RF pi on w12, wait T1e)
// modelled by rate-equation population bookkeeping; returns
// eps_S' = 2e/(2-e), eps_I' = (2e/(2-e))(1-e).
PolarizationPair transfer_polarization(double epsilon);

}  // namespace spinqc
