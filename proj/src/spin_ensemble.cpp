#include "spinqc/spin_ensemble.hpp"

#include <array>
#include <cmath>

namespace spinqc {

PolarizationPair::PolarizationPair(double eps_s, double eps_i)
    : epsilon_s(eps_s), epsilon_i(eps_i) {
  if (!(eps_s >= 0.0 && eps_s < 1.0))
    throw std::domain_error("PolarizationPair: epsilon_S out of [0,1)");
  if (!(eps_i >= 0.0 && eps_i < 1.0))
    throw std::domain_error("PolarizationPair: epsilon_I out of [0,1)");
}

double polarization(double larmor_frequency_hz, double temperature_k) {
  if (larmor_frequency_hz <= 0.0) throw std::domain_error("polarization: frequency <= 0");
  if (temperature_k <= 0.0) throw std::domain_error("polarization: temperature <= 0");
  return std::tanh(constants::h * larmor_frequency_hz /
                   (2.0 * constants::k_boltzmann * temperature_k));
}

DensityMatrix thermal_state(const EnsembleConfig& config) {
  if (config.temperature_k <= 0.0) throw std::domain_error("thermal_state: temperature <= 0");
  if (config.species.empty()) throw std::domain_error("thermal_state: no species");
  Mat rho = Mat::Identity(1, 1);
  for (const auto& sp : config.species) {
    double eps = polarization(sp.larmor_frequency_hz, config.temperature_k);
    Mat single(2, 2);
    single << (1.0 + eps) / 2.0, 0, 0, (1.0 - eps) / 2.0;
    rho = kron(rho, single);
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix thermal_state_2x2(double eps_first, double eps_second) {
  Eigen::VectorXd pops(4);
  double p1 = (1.0 + eps_first) / 2.0, q1 = (1.0 - eps_first) / 2.0;
  double p2 = (1.0 + eps_second) / 2.0, q2 = (1.0 - eps_second) / 2.0;
  pops << p1 * p2, p1 * q2, q1 * p2, q1 * q2;
  return DensityMatrix::diagonal(pops);
}

double entanglement_margin(const PolarizationPair& p) {
  return p.epsilon_i * p.epsilon_s + p.epsilon_i + p.epsilon_s - 1.0;
}

namespace {

double margin_at(double t, double electron_freq_hz, double nuclear_freq_hz, bool transfer) {
  double eps_s = polarization(electron_freq_hz, t);
  double eps_i = transfer ? eps_s : polarization(nuclear_freq_hz, t);
  return eps_i * eps_s + eps_i + eps_s - 1.0;
}

}  // namespace

double threshold_temperature(double electron_freq_hz, double nuclear_freq_hz, bool transfer) {
  if (electron_freq_hz <= 0.0 || (!transfer && nuclear_freq_hz <= 0.0))
    throw std::domain_error("threshold_temperature: frequencies must be positive");
  double lo = 1e-3, hi = 1e3;
  double f_lo = margin_at(lo, electron_freq_hz, nuclear_freq_hz, transfer);
  double f_hi = margin_at(hi, electron_freq_hz, nuclear_freq_hz, transfer);
  if (f_lo <= 0.0 || f_hi >= 0.0)
    throw std::runtime_error("threshold_temperature: no sign change in [1e-3, 1e3] K");
  // margin is monotone decreasing in T
  while (hi - lo > 1e-4 * lo) {
    double mid = 0.5 * (lo + hi);
    if (margin_at(mid, electron_freq_hz, nuclear_freq_hz, transfer) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double nuclear_frequency_hz(const std::string& nucleus, double electron_freq_hz) {
  // Anchors at 9.5 GHz electron frequency (3390 G, g = 2), scaled linearly
  // with the field.
  static const std::array<std::pair<const char*, double>, 5> anchors{{
      {"1H", 14.4e6},
      {"2H", 2.22e6},
      {"14N", 1.04e6},
      {"15N", 1.46e6},
      {"19F", 13.6e6},
  }};
  for (const auto& [name, nu] : anchors)
    if (nucleus == name) return nu * (electron_freq_hz / 9.5e9);
  throw std::domain_error("nuclear_frequency_hz: unknown nucleus " + nucleus);
}

PolarizationPair transfer_polarization(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::domain_error("transfer_polarization: epsilon out of [0,1)");
  if (epsilon == 0.0) return PolarizationPair(0.0, 0.0);

  // Population ledger for the three steps, with the level-pair ratio
  // convention N_upper/N_lower = 1 - epsilon. Each step conserves the total.
  std::array<double, 4> n{1.0, 1.0, 1.0 - epsilon, 1.0 - epsilon};
  double total = n[0] + n[1] + n[2] + n[3];
  for (auto& v : n) v /= total;
  auto check_total = [&n]() {
    double s = n[0] + n[1] + n[2] + n[3];
    if (std::abs(s - 1.0) > 1e-12)
      throw std::logic_error("transfer_polarization: population not conserved");
  };
  check_total();
  std::swap(n[0], n[2]);  // MW pi on (1,3)
  check_total();
  std::swap(n[0], n[1]);  // RF pi on (1,2)
  check_total();
  // Wait T1e >> pulse, << T1n: electron pairs re-thermalize with ratio
  // 1 - epsilon while each nuclear manifold sum is frozen.
  for (int pair = 0; pair < 2; ++pair) {
    double sum = n[pair] + n[pair + 2];
    n[pair] = sum / (2.0 - epsilon);
    n[pair + 2] = sum * (1.0 - epsilon) / (2.0 - epsilon);
  }
  check_total();

  // Closed forms for the final polarizations (ratio convention).
  double eps_s = 2.0 * epsilon / (2.0 - epsilon);
  double eps_i = eps_s * (1.0 - epsilon);
  return PolarizationPair(eps_s, eps_i);
}

}  // namespace spinqc
