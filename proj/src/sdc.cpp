#include "spinqc/sdc.hpp"

#include <cmath>
#include <numbers>

#include "spinqc/spin_ensemble.hpp"

namespace spinqc {

namespace {

constexpr double kPi = std::numbers::pi;

Mat xx() { return kron(gates2::pauli_x(), gates2::pauli_x()); }
Mat yy() { return kron(gates2::pauli_y(), gates2::pauli_y()); }
Mat zz() { return kron(gates2::pauli_z(), gates2::pauli_z()); }

}  // namespace

SdcMessage::SdcMessage(int z_, int x_) : z(z_), x(x_) {
  if ((z != 0 && z != 1) || (x != 0 && x != 1))
    throw std::domain_error("SdcMessage: z and x must be bits");
}

Operator u_ent() {
  Mat h_i = kron(gates2::hadamard(), gates2::identity2());
  Mat cn = Mat::Zero(4, 4);
  cn(0, 0) = cn(1, 1) = cn(2, 3) = cn(3, 2) = 1.0;  // control = I spin
  return Operator(cn * h_i, false);
}

Operator u_bell() {
  Mat h_i = kron(gates2::hadamard(), gates2::identity2());
  Mat cn = Mat::Zero(4, 4);
  cn(0, 0) = cn(1, 1) = cn(2, 3) = cn(3, 2) = 1.0;
  return Operator(h_i * cn, false);
}

Operator u_zx(const SdcMessage& msg) {
  Mat g = gates2::identity2();
  if (msg.x == 1) g = gates2::pauli_x() * g;
  if (msg.z == 1) g = gates2::pauli_z() * g;
  return Operator(kron(g, gates2::identity2()), false);
}

SdcMessage ideal_sdc(const SdcMessage& msg) {
  PureState psi0 = PureState::basis(4, 0);
  PureState psi3 = apply_unitary(
      apply_unitary(apply_unitary(psi0, u_ent()), u_zx(msg)), u_bell());
  DensityMatrix rho = DensityMatrix::from_pure(psi3);
  Mat z_i = kron(gates2::pauli_z(), gates2::identity2());
  Mat z_s = kron(gates2::identity2(), gates2::pauli_z());
  double mi = (z_i * rho.entries()).trace().real();
  double ms = (z_s * rho.entries()).trace().real();
  return SdcMessage(mi < 0 ? 1 : 0, ms < 0 ? 1 : 0);
}

SdcStates mixed_sdc_states(double p_i, double p_s, const SdcMessage& msg) {
  if (p_i < 0.5 || p_i > 1.0 || p_s < 0.5 || p_s > 1.0)
    throw std::domain_error("mixed_sdc_states: p_I, p_S must lie in [1/2, 1]");
  DensityMatrix rho0 = thermal_state_2x2(2.0 * p_i - 1.0, 2.0 * p_s - 1.0);
  DensityMatrix rho1 = apply_unitary(rho0, u_ent());
  DensityMatrix rho2 = apply_unitary(rho1, u_zx(msg));
  DensityMatrix rho3 = apply_unitary(rho2, u_bell());
  return {rho1, rho2, rho3};
}

SignalStats signal_stats(double n, double eps_i, double eps_s, const SdcMessage& msg) {
  if (n < 1.0) throw std::domain_error("signal_stats: n must be >= 1");
  SignalStats st;
  st.mu_i = (msg.z == 0 ? 1.0 : -1.0) * n * eps_i;
  st.mu_s = (msg.x == 0 ? 1.0 : -1.0) * n * eps_s;
  st.sigma_i = std::sqrt(n * (1.0 - eps_i * eps_i));
  st.sigma_s = std::sqrt(n * (1.0 - eps_s * eps_s));
  if (eps_i == 0.0) {
    st.pure_guess = true;
    st.log10_error_probability = std::log10(0.5);
    return st;
  }
  if (eps_i >= 1.0) {
    st.log10_error_probability = -std::numeric_limits<double>::infinity();
    return st;
  }
  // log10 of (1/sqrt(2 pi)) exp(-n eps^2 / 2) / (sqrt(n) eps), kept in the
  // log domain so n ~ 1e18 survives.
  constexpr double kLn10 = 2.302585092994046;
  st.log10_error_probability = -n * eps_i * eps_i / (2.0 * kLn10) -
                               0.5 * std::log10(2.0 * kPi) -
                               std::log10(std::sqrt(n) * eps_i);
  return st;
}

double snr(const SnrParams& p) {
  if (p.quality_factor <= 0 || p.coil_volume_m3 <= 0 || p.resistance_ohm <= 0 ||
      p.omega_i <= 0 || p.gamma_i <= 0 || p.bandwidth_hz <= 0 || p.temperature_k <= 0 ||
      p.n_molecules <= 0 || p.epsilon_i <= 0)
    throw std::domain_error("snr: all parameters must be positive");
  double v_s = 0.25 *
               std::sqrt(p.quality_factor / p.coil_volume_m3 * constants::mu0 *
                         p.resistance_ohm * p.omega_i) *
               constants::hbar * p.gamma_i * p.n_molecules * p.epsilon_i;
  double v_n = std::sqrt(4.0 * constants::k_boltzmann * p.temperature_k * p.resistance_ohm *
                         p.bandwidth_hz);
  return v_s / v_n;
}

std::pair<double, double> evaluate_w1_w2(const DensityMatrix& rho2) {
  if (rho2.dim() != 4) throw std::invalid_argument("evaluate_w1_w2: 2-qubit state required");
  double w1 = (xx() * rho2.entries()).trace().real();
  double w2 = (zz() * rho2.entries()).trace().real();
  return {w1, w2};
}

double witness_F(double w1, double w2) {
  if (std::abs(w1) > 1.0 + 1e-9 || std::abs(w2) > 1.0 + 1e-9)
    throw std::domain_error("witness_F: |w| exceeds 1 beyond tolerance");
  return 0.5 - 0.25 * (1.0 + std::abs(w1)) * (1.0 + std::abs(w2));
}

Operator conventional_witness(const SdcMessage& msg) {
  double sz = msg.z == 0 ? -1.0 : 1.0;  // (-1)^zbar
  double sx = msg.x == 0 ? -1.0 : 1.0;  // (-1)^xbar
  Mat w = 0.25 * (Mat::Identity(4, 4) + sz * xx() + sz * sx * yy() + sx * zz());
  return Operator(std::move(w), true);
}

Mat u_hcn() {
  Mat u(4, 4);
  double s = 1.0 / std::sqrt(2.0);
  u << s, 0, s, 0,
       0, s, 0, s,
       0, s, 0, -s,
       s, 0, -s, 0;
  return u;
}

Mat v_ex(double alpha) {
  if (alpha < 0.75) throw std::domain_error("v_ex: alpha must be >= 3/4");
  Mat v(4, 4);
  double r3 = 1.0 / std::sqrt(3.0);
  cxd wp = std::exp(cxd(0.0, 2.0 * kPi / 3.0));
  cxd wm = std::conj(wp);
  double sa = std::sqrt(alpha);
  double root = std::sqrt(4.0 * alpha - 3.0);
  v.row(0) << 0.0, r3, r3 * wp, r3 * wm;
  v.row(1) << 0.0, r3, r3 * wm, r3 * wp;
  v.row(2) << -root / (2.0 * sa), 1.0 / (2.0 * sa), 1.0 / (2.0 * sa), 1.0 / (2.0 * sa);
  v.row(3) << std::sqrt(3.0) / (2.0 * sa), root / (2.0 * std::sqrt(3.0) * sa),
      root / (2.0 * std::sqrt(3.0) * sa), root / (2.0 * std::sqrt(3.0) * sa);
  return v;
}

WitnessDecomposition decompose_witness(const SdcMessage& msg) {
  Mat v = v_ex(0.75);
  int k = msg.x + 2 * msg.z;
  if (k != 0) {
    // The odd diagonal entry -3/4 must sit at index x+2z: swap columns 0, k.
    v.col(0).swap(v.col(k));
  }
  Mat u = v * u_hcn().adjoint();
  return WitnessDecomposition{3.0 / 8.0, 3.0 / 8.0, 0.25, Operator(std::move(u), false)};
}

Mat witness_tilde(const WitnessDecomposition& d) {
  Mat w0 = Mat::Zero(4, 4);
  w0 += d.a * kron(gates2::pauli_z(), gates2::identity2());
  w0 += d.b * kron(gates2::identity2(), gates2::pauli_z());
  w0 += d.c * Mat::Identity(4, 4);
  return d.u.entries().adjoint() * w0 * d.u.entries();
}

SignFlipCheck verify_sign_flip_impossibility() {
  WitnessDecomposition d = decompose_witness(SdcMessage(0, 0));
  Mat v = d.u.entries() * u_hcn();  // the V of the diagonalized problem
  Mat zi = v.adjoint() * kron(gates2::pauli_z(), gates2::identity2()) * v;
  Mat iz = v.adjoint() * kron(gates2::identity2(), gates2::pauli_z()) * v;
  Eigen::Vector4d xd = zi.diagonal().real();
  Eigen::Vector4d yd = iz.diagonal().real();

  const std::array<std::pair<double, double>, 3> candidates{
      {{d.a, -d.b}, {-d.a, d.b}, {-d.a, -d.b}}};
  const int grid = 5;
  SignFlipCheck result{};
  result.impossibility_confirmed = true;
  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    auto [ap, bp] = candidates[ci];
    double best_over_k = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 3; ++k) {  // W'_2, W'_3, W'_4 have -1/2 at index k
      double worst = 0.0;
      for (int gi = 0; gi < grid; ++gi)
        for (int gj = 0; gj < grid; ++gj) {
          double p_i = 0.5 + 0.5 * gi / (grid - 1);
          double p_s = 0.5 + 0.5 * gj / (grid - 1);
          Eigen::Vector4d rho{p_i * p_s, p_i * (1 - p_s), (1 - p_i) * p_s,
                              (1 - p_i) * (1 - p_s)};
          double lhs = 0.0, rhs = 0.0;
          for (int m = 0; m < 4; ++m) {
            lhs += rho(m) * (m == k ? -0.5 : 0.5);
            rhs += rho(m) * (0.25 + ap * xd(m) + bp * yd(m));
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      best_over_k = std::min(best_over_k, worst);
    }
    result.candidate_best_residuals[ci] = best_over_k;
    if (best_over_k <= 0.1) result.impossibility_confirmed = false;
  }

  // The eqw3 equation: for (a', b') = (-a, -b) and k = 4,
  // (a+a') x00 + (b+b') y00 must equal -1/2 but the left side vanishes.
  double aa = d.a + (-d.a), bb = d.b + (-d.b);
  result.worst_violation = std::abs(aa * xd(0) + bb * yd(0) + 0.5);
  return result;
}

}  // namespace spinqc
