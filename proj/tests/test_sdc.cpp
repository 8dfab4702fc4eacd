#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinqc/entanglement.hpp"
#include "spinqc/sdc.hpp"
#include "spinqc/spin_ensemble.hpp"

using namespace spinqc;

namespace {

// Exact oracle for the +-1 magnetization sum of n independent spins with
// P(+1) = p: full binomial enumeration, ties at zero counted with weight 1/2.
struct BinomialOracle {
  double mean = 0.0;
  double variance = 0.0;
  double p_negative = 0.0;
};

BinomialOracle enumerate_magnetization(int n, double p) {
  BinomialOracle o;
  double q = 1.0 - p;
  std::vector<double> logfact(n + 1, 0.0);
  for (int i = 2; i <= n; ++i) logfact[i] = logfact[i - 1] + std::log(double(i));
  double m2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    double logw = logfact[n] - logfact[k] - logfact[n - k] + k * std::log(p) +
                  (n - k) * std::log(q);
    double w = std::exp(logw);
    double sum = 2.0 * k - n;
    o.mean += w * sum;
    m2 += w * sum * sum;
    if (sum < 0) o.p_negative += w;
    if (sum == 0) o.p_negative += 0.5 * w;
  }
  o.variance = m2 - o.mean * o.mean;
  return o;
}

}  // namespace

TEST_CASE("ideal sdc returns the message") {
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x) {
      SdcMessage out = ideal_sdc(SdcMessage(z, x));
      CHECK(out.z == z);
      CHECK(out.x == x);
    }

  // the circuit algebra behind it: U_Bell U_zx U_ent |00> = |zx>
  PureState psi = apply_unitary(
      apply_unitary(apply_unitary(PureState::basis(4, 0), u_ent()), u_zx(SdcMessage(1, 1))),
      u_bell());
  CHECK(psi.overlap(PureState::basis(4, 3)) == doctest::Approx(1.0).epsilon(1e-12));

  PureState bell = apply_unitary(PureState::basis(4, 0), u_ent());
  CHECK(bell.overlap(bell_state(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixed sdc states") {
  auto pure = mixed_sdc_states(1.0, 1.0, SdcMessage(0, 0));
  DensityMatrix bell = DensityMatrix::from_pure(bell_state(0, 0));
  CHECK(max_abs(pure.rho2.entries() - bell.entries()) < 1e-12);

  auto mixed = mixed_sdc_states(0.5, 0.5, SdcMessage(1, 0));
  CHECK(max_abs(mixed.rho1.entries() - Mat::Identity(4, 4) / 4.0) < 1e-12);
  CHECK(max_abs(mixed.rho2.entries() - Mat::Identity(4, 4) / 4.0) < 1e-12);
  CHECK(max_abs(mixed.rho3.entries() - Mat::Identity(4, 4) / 4.0) < 1e-12);

  // rho3 = diag(p_I p_S, p_I q_S, q_I p_S, q_I q_S) for z = x = 0
  auto st = mixed_sdc_states(0.9, 0.8, SdcMessage(0, 0));
  CHECK(st.rho3.entry(0, 0).real() == doctest::Approx(0.72).epsilon(1e-12));
  CHECK(st.rho3.entry(1, 1).real() == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(st.rho3.entry(2, 2).real() == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(st.rho3.entry(3, 3).real() == doctest::Approx(0.02).epsilon(1e-12));

  // the three stages share one spectrum
  Eigen::VectorXd e1 = st.rho1.eigenvalues(), e2 = st.rho2.eigenvalues(),
                  e3 = st.rho3.eigenvalues();
  CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((e1 - e3).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS(mixed_sdc_states(0.3, 0.8, SdcMessage(0, 0)));
}

TEST_CASE("signal statistics against the exact binomial oracle") {
  for (int n : {1, 5, 10, 20}) {
    for (double eps : {0.0, 0.1, 0.5, 0.9}) {
      double p = (1.0 + eps) / 2.0;
      auto oracle = enumerate_magnetization(n, p);
      SignalStats st = signal_stats(double(n), eps, eps, SdcMessage(0, 0));
      CHECK(st.mu_i == doctest::Approx(oracle.mean).epsilon(1e-12));
      CHECK(st.sigma_i * st.sigma_i == doctest::Approx(oracle.variance).epsilon(1e-12));
      if (eps > 0.0 && n >= 10 && oracle.p_negative > 1e-12) {
        // The Gaussian tail brackets the enumerated P(sum < 0) within a
        // factor of 10 for moderate polarization; the eps = 0.9 corner of
        // the grid is off by up to ~10^4 at these small n (the asymptotic
        // regime is n eps^2 >> 1) and is bounded accordingly.
        double log_ratio =
            std::abs(st.log10_error_probability - std::log10(oracle.p_negative));
        CHECK(log_ratio < (eps <= 0.5 ? 1.0 : 4.0));
      }
    }
  }

  // signs follow the message
  SignalStats st = signal_stats(100.0, 0.5, 0.25, SdcMessage(1, 0));
  CHECK(st.mu_i == doctest::Approx(-50.0));
  CHECK(st.mu_s == doctest::Approx(25.0));
  CHECK(st.sigma_i * st.sigma_i == doctest::Approx(75.0));

  // NMR regime: log-domain survives n = 1e18
  SignalStats big = signal_stats(1e18, 1e-5, 1e-5, SdcMessage(0, 0));
  CHECK(big.log10_error_probability == doctest::Approx(-2.17e7).epsilon(1e-3));
  CHECK(big.log10_error_probability < -100.0);

  // degenerate cases
  SignalStats guess = signal_stats(100.0, 0.0, 0.0, SdcMessage(0, 0));
  CHECK(guess.pure_guess);
  CHECK(std::pow(10.0, guess.log10_error_probability) == doctest::Approx(0.5));
  SignalStats det = signal_stats(100.0, 1.0, 1.0, SdcMessage(0, 0));
  CHECK(det.sigma_i == 0.0);
  CHECK(std::isinf(det.log10_error_probability));
}

TEST_CASE("snr") {
  SnrParams base{1e3, 1e-6, 50.0, constants::gamma_proton * 11.7, constants::gamma_proton,
                 1e4, 300.0, 1e16, 1e-5};
  double s1 = snr(base);
  SnrParams doubled = base;
  doubled.n_molecules *= 2.0;
  CHECK(snr(doubled) == doctest::Approx(2.0 * s1).epsilon(1e-12));

  // minimal molecule count for SNR = 1 lands in the 1e15..1e17 decade
  double n_min = base.n_molecules / s1;
  CHECK(n_min > 1e15);
  CHECK(n_min < 1e17);

  // n scales as 1/eps at fixed SNR
  SnrParams tenth = base;
  tenth.epsilon_i *= 10.0;
  CHECK(snr(tenth) == doctest::Approx(10.0 * s1).epsilon(1e-12));

  SnrParams bad = base;
  bad.temperature_k = -1.0;
  CHECK_THROWS(snr(bad));
}

TEST_CASE("w1 w2 and witness F") {
  auto st = mixed_sdc_states(0.9, 0.8, SdcMessage(0, 0));
  auto [w1, w2] = evaluate_w1_w2(st.rho2);
  CHECK(w1 == doctest::Approx(0.8).epsilon(1e-12));  // eps_I
  CHECK(w2 == doctest::Approx(0.6).epsilon(1e-12));  // eps_S

  // the conjugation identity: w1 = tr(rho3 Z⊗I), w2 = tr(rho3 I⊗Z)
  Mat zi = kron(gates2::pauli_z(), gates2::identity2());
  Mat iz = kron(gates2::identity2(), gates2::pauli_z());
  CHECK(w1 == doctest::Approx((zi * st.rho3.entries()).trace().real()).epsilon(1e-12));
  CHECK(w2 == doctest::Approx((iz * st.rho3.entries()).trace().real()).epsilon(1e-12));

  auto [wb1, wb2] = evaluate_w1_w2(DensityMatrix::from_pure(bell_state(0, 0)));
  CHECK(wb1 == doctest::Approx(1.0));
  CHECK(wb2 == doctest::Approx(1.0));
  auto [wm1, wm2] = evaluate_w1_w2(DensityMatrix::maximally_mixed(4));
  CHECK(wm1 == doctest::Approx(0.0));
  CHECK(wm2 == doctest::Approx(0.0));

  CHECK(witness_F(1.0, 1.0) == doctest::Approx(-0.5));
  CHECK(witness_F(0.0, 0.0) == doctest::Approx(0.25));
  CHECK(witness_F(0.8, 0.6) == doctest::Approx(-0.22).epsilon(1e-12));
  CHECK(witness_F(0.8, 0.6) == doctest::Approx(0.5 - 0.9 * 0.8).epsilon(1e-12));
  CHECK_THROWS(witness_F(1.1, 0.0));
}

TEST_CASE("conventional witness") {
  Operator w = conventional_witness(SdcMessage(0, 0));
  Mat expected(4, 4);
  expected << 0, 0, 0, -0.5, 0, 0.5, 0, 0, 0, 0, 0.5, 0, -0.5, 0, 0, 0;
  CHECK(max_abs(w.entries() - expected) < 1e-12);
  CHECK(w.entries().trace().real() == doctest::Approx(1.0));

  // tr(W |beta_zx><beta_zx|) = -1/2 for the matching message
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x) {
      DensityMatrix bell = DensityMatrix::from_pure(bell_state(z, x));
      CHECK(witness_expectation(bell, conventional_witness(SdcMessage(z, x))) ==
            doctest::Approx(-0.5).epsilon(1e-12));
    }

  // Monte-Carlo positivity on separable mixtures
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto random_1q_density = [&]() {
    Mat m(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = cxd(g(rng), g(rng));
    Mat rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
  };
  for (int trial = 0; trial < 500; ++trial) {
    Mat sep = Mat::Zero(4, 4);
    double wsum = 0.0;
    int terms = 1 + int(u01(rng) * 3);
    std::vector<double> weights(terms);
    for (int t = 0; t < terms; ++t) {
      weights[t] = u01(rng);
      wsum += weights[t];
    }
    for (int t = 0; t < terms; ++t)
      sep += (weights[t] / wsum) * kron(random_1q_density(), random_1q_density());
    CHECK(witness_expectation(DensityMatrix(sep), w) >= -1e-12);
  }

  // tr(rho2 W) = 1/2 - p_I p_S on the grid, all four messages
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x)
      for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
          double p_i = 0.5 + 0.05 * i, p_s = 0.5 + 0.05 * j;
          auto st2 = mixed_sdc_states(p_i, p_s, SdcMessage(z, x));
          double tr = witness_expectation(st2.rho2, conventional_witness(SdcMessage(z, x)));
          CHECK(tr == doctest::Approx(0.5 - p_i * p_s).epsilon(1e-12));
        }
}

TEST_CASE("witness F agrees with state-based detectors on the grid") {
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x)
      for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
          double p_i = 0.5 + 0.05 * i, p_s = 0.5 + 0.05 * j;
          if (std::abs(p_i * p_s - 0.5) < 1e-6) continue;
          auto st = mixed_sdc_states(p_i, p_s, SdcMessage(z, x));
          auto [w1, w2] = evaluate_w1_w2(st.rho2);
          double f = witness_F(w1, w2);
          CHECK(f == doctest::Approx(0.5 - p_i * p_s).epsilon(1e-9));
          bool entangled = concurrence(st.rho2) > 1e-9;
          CHECK((f < 0.0) == entangled);
          CHECK((f < 0.0) == !is_ppt(st.rho2, 2, 2).ppt);
        }
}

TEST_CASE("single-run witness decomposition") {
  // V_ex(3/4) reproduced entrywise
  Mat v = v_ex(0.75);
  Mat expected(4, 4);
  double r3 = 1.0 / std::sqrt(3.0);
  cxd wp = std::exp(cxd(0.0, 2.0 * M_PI / 3.0)), wm = std::conj(wp);
  expected << 0, r3, r3 * wp, r3 * wm,
              0, r3, r3 * wm, r3 * wp,
              0, r3, r3, r3,
              1, 0, 0, 0;
  CHECK(max_abs(v - expected) < 1e-12);
  CHECK(is_unitary(v));
  CHECK(is_unitary(v_ex(1.3)));

  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x) {
      SdcMessage msg(z, x);
      WitnessDecomposition d = decompose_witness(msg);
      CHECK(d.a == doctest::Approx(3.0 / 8.0));
      CHECK(d.b == doctest::Approx(3.0 / 8.0));
      CHECK(d.c == doctest::Approx(0.25));
      CHECK(is_unitary(d.u.entries()));
      Mat wt = witness_tilde(d);
      Operator w = conventional_witness(msg);
      double worst = 0.0;
      for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
          double p_i = 0.5 + 0.025 * i, p_s = 0.5 + 0.025 * j;
          auto st = mixed_sdc_states(p_i, p_s, msg);
          double t1 = (wt * st.rho2.entries()).trace().real();
          double t2 = (w.entries() * st.rho2.entries()).trace().real();
          worst = std::max(worst, std::abs(t1 - t2));
        }
      CHECK(worst <= 1e-10);
    }

  // the two reference trace values for z = x = 0
  WitnessDecomposition d0 = decompose_witness(SdcMessage(0, 0));
  Mat wt0 = witness_tilde(d0);
  auto st = mixed_sdc_states(0.9, 0.8, SdcMessage(0, 0));
  CHECK((wt0 * st.rho2.entries()).trace().real() == doctest::Approx(-0.22).epsilon(1e-12));
  CHECK((wt0 * (Mat::Identity(4, 4) / 4.0)).trace().real() ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("sign flip impossibility") {
  SignFlipCheck check = verify_sign_flip_impossibility();
  CHECK(check.impossibility_confirmed);
  CHECK(check.worst_violation >= 0.1);
  for (double r : check.candidate_best_residuals) CHECK(r > 0.1);

  // at the maximally mixed point alone, all candidates agree (value 1/4):
  // the grid, not a single point, is what distinguishes them
  WitnessDecomposition d = decompose_witness(SdcMessage(0, 0));
  Mat v = d.u.entries() * u_hcn();
  Eigen::Vector4d xd = (v.adjoint() * kron(gates2::pauli_z(), gates2::identity2()) * v)
                           .diagonal()
                           .real();
  Eigen::Vector4d yd = (v.adjoint() * kron(gates2::identity2(), gates2::pauli_z()) * v)
                           .diagonal()
                           .real();
  for (auto [ap, bp] : {std::pair{d.a, -d.b}, {-d.a, d.b}, {-d.a, -d.b}}) {
    double tr = 0.0;
    for (int m = 0; m < 4; ++m) tr += 0.25 * (0.25 + ap * xd(m) + bp * yd(m));
    CHECK(tr == doctest::Approx(0.25).epsilon(1e-12));
  }
}
