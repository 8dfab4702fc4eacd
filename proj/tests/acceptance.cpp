// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinqc/endor_spect.hpp"
#include "spinqc/entanglement.hpp"
#include "spinqc/pulse_engine.hpp"
#include "spinqc/sdc.hpp"
#include "spinqc/spin_ensemble.hpp"
#include "spinqc/tensor_fit.hpp"

using namespace spinqc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> body;
  double time_limit_s;
};

bool check(bool ok, std::string& detail, const std::string& msg) {
  if (!ok && detail.empty()) detail = msg;
  return ok;
}

// ---- 1: threshold temperatures ---------------------------------------------

bool c1_thresholds(std::string& detail) {
  double nu_h = nuclear_frequency_hz("1H", 95e9);
  double t_plain = threshold_temperature(95e9, nu_h, false);
  double t_transfer = threshold_temperature(95e9, 0.0, true);
  bool ok = true;
  ok &= check(std::abs(t_plain - 0.83) <= 0.02, detail,
              "no-transfer threshold " + std::to_string(t_plain));
  ok &= check(std::abs(t_transfer - 5.17) <= 0.02, detail,
              "transfer threshold " + std::to_string(t_transfer));
  return ok;
}

// ---- 2: witness consistency on the 11x11 grid -------------------------------

bool c2_witness_grid(std::string& detail) {
  bool ok = true;
  for (int z = 0; z <= 1 && ok; ++z)
    for (int x = 0; x <= 1 && ok; ++x)
      for (int i = 0; i <= 10 && ok; ++i)
        for (int j = 0; j <= 10 && ok; ++j) {
          double p_i = 0.5 + 0.05 * i, p_s = 0.5 + 0.05 * j;
          auto st = mixed_sdc_states(p_i, p_s, SdcMessage(z, x));
          double c = concurrence(st.rho2);
          ok &= check(std::abs(c - std::max(0.0, 2.0 * p_i * p_s - 1.0)) <= 1e-9, detail,
                      "concurrence closed form at " + std::to_string(p_i) + "," +
                          std::to_string(p_s));
          if (std::abs(p_i * p_s - 0.5) <= 1e-6) continue;
          auto [w1, w2] = evaluate_w1_w2(st.rho2);
          bool f_entangled = witness_F(w1, w2) < 0.0;
          ok &= check(f_entangled == (c > 0.0), detail, "F vs concurrence sign");
          ok &= check(f_entangled == (negativity(st.rho2, 2, 2) > 0.0), detail,
                      "F vs negativity sign");
          ok &= check(f_entangled == !is_ppt(st.rho2, 2, 2).ppt, detail, "F vs PPT");
        }
  return ok;
}

// ---- 3: witness decomposition theorem ----------------------------------------

bool c3_witness_decomposition(std::string& detail) {
  bool ok = true;
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x) {
      SdcMessage msg(z, x);
      WitnessDecomposition d = decompose_witness(msg);
      Mat wt = witness_tilde(d);
      Operator w = conventional_witness(msg);
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
          double p_i = 0.5 + 0.005 * i, p_s = 0.5 + 0.005 * j;
          auto st = mixed_sdc_states(p_i, p_s, msg);
          double t1 = (wt * st.rho2.entries()).trace().real();
          double t2 = (w.entries() * st.rho2.entries()).trace().real();
          worst = std::max(worst, std::abs(t1 - t2));
        }
      ok &= check(worst <= 1e-10, detail,
                  "decomposition residual " + std::to_string(worst) + " for z=" +
                      std::to_string(z) + " x=" + std::to_string(x));
    }
  SignFlipCheck flip = verify_sign_flip_impossibility();
  ok &= check(flip.impossibility_confirmed, detail, "sign-flip candidates not excluded");
  ok &= check(flip.worst_violation >= 0.1, detail,
              "eqw3 violation " + std::to_string(flip.worst_violation));
  return ok;
}

// ---- 4: ensemble statistics --------------------------------------------------

bool c4_ensemble_statistics(std::string& detail) {
  bool ok = true;
  for (int n = 1; n <= 20; ++n) {
    for (double eps : {0.1, 0.4, 0.75}) {
      double p = (1.0 + eps) / 2.0, q = 1.0 - p;
      std::vector<double> logfact(n + 1, 0.0);
      for (int i = 2; i <= n; ++i) logfact[i] = logfact[i - 1] + std::log(double(i));
      double mean = 0.0, m2 = 0.0;
      for (int k = 0; k <= n; ++k) {
        double w = std::exp(logfact[n] - logfact[k] - logfact[n - k] + k * std::log(p) +
                            (n - k) * std::log(q));
        double s = 2.0 * k - n;
        mean += w * s;
        m2 += w * s * s;
      }
      SignalStats st = signal_stats(double(n), eps, eps, SdcMessage(0, 0));
      ok &= check(std::abs(st.mu_i - mean) <= 1e-12 * std::max(1.0, std::abs(mean)), detail,
                  "mean mismatch at n=" + std::to_string(n));
      double var = m2 - mean * mean;
      ok &= check(std::abs(st.sigma_i * st.sigma_i - var) <= 1e-11 * std::max(1.0, var),
                  detail, "variance mismatch at n=" + std::to_string(n));
    }
  }
  SignalStats big = signal_stats(1e18, 1e-5, 1e-5, SdcMessage(0, 0));
  ok &= check(big.log10_error_probability < -100.0, detail, "P_e not << 1e-100");
  double formula = -1e18 * 1e-10 / (2.0 * std::log(10.0)) - 0.5 * std::log10(2.0 * kPi) -
                   std::log10(std::sqrt(1e18) * 1e-5);
  ok &= check(std::abs(big.log10_error_probability - formula) <=
                  0.01 * std::abs(formula),
              detail, "log-domain formula drift");
  ok &= check(std::abs(big.log10_error_probability + 2.17e7) <= 0.01 * 2.17e7, detail,
              "expected about -2.17e7");
  return ok;
}

// ---- 5: TPPI classification --------------------------------------------------

bool c5_tppi(std::string& detail) {
  struct Row {
    TppiSequence seq;
    TppiClass cls;
    double peak_hz;
  };
  const std::vector<Row> rows{
      {{w24, w34, w34, 3}, TppiClass::DIFFERENCE, 4.2e6},
      {{w24, w12, w12, 1}, TppiClass::SUM, 6.2e6},
      {{w13, w34, w34, 3}, TppiClass::SUM, 6.2e6},
      {{w13, w12, w12, 1}, TppiClass::DIFFERENCE, 4.2e6},
  };
  bool ok = true;
  int row_no = 1;
  for (const auto& row : rows) {
    TppiConfig cfg{row.seq, 1.0e6, 5.2e6};
    auto cls = tppi_classify(tppi_simulate(cfg), cfg.nu1_hz, cfg.nu2_hz);
    double bin = 1.0 / (4.0 * cfg.steps * cfg.dt_s);
    ok &= check(cls.cls == row.cls, detail, "row " + std::to_string(row_no) + " class");
    ok &= check(std::abs(cls.peak_hz - row.peak_hz) <= bin, detail,
                "row " + std::to_string(row_no) + " peak " + std::to_string(cls.peak_hz));
    TppiConfig ctl = cfg;
    ctl.dephase_control = true;
    auto ctl_cls = tppi_classify(tppi_simulate(ctl), ctl.nu1_hz, ctl.nu2_hz);
    ok &= check(ctl_cls.cls == TppiClass::SINGLE_FREQUENCIES, detail,
                "row " + std::to_string(row_no) + " dephased control");
    ++row_no;
  }
  return ok;
}

// ---- 6: angular echo oracle equivalence ---------------------------------------

bool c6_angular_echo(std::string& detail) {
  bool ok = true;
  for (EncodingOp u : {EncodingOp::I, EncodingOp::X, EncodingOp::Y, EncodingOp::Z}) {
    std::vector<double> sim, closed;
    for (int it = 0; it < 8; ++it)
      for (int ip = 0; ip < 8; ++ip) {
        double theta = 2.0 * kPi * it / 8.0, phi = 2.0 * kPi * ip / 8.0;
        for (int id = 0; id < 64; id += 8) {
          double d = 2.0 * kPi * id / 64.0;
          sim.push_back(angular_echo_simulate(u, theta, phi, d, 0.0));
          closed.push_back(angular_echo_closed_form(u, theta, phi, d, 0.0));
        }
      }
    // 64 dedicated detection-phase points at fixed angles
    for (int id = 0; id < 64; ++id) {
      double d = 2.0 * kPi * id / 64.0;
      sim.push_back(angular_echo_simulate(u, 0.8, 1.3, d, 0.2));
      closed.push_back(angular_echo_closed_form(u, 0.8, 1.3, d, 0.2));
    }
    double n = double(sim.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < sim.size(); ++k) {
      sx += sim[k];
      sy += closed[k];
      sxx += sim[k] * sim[k];
      sxy += sim[k] * closed[k];
    }
    double denom = n * sxx - sx * sx;
    double alpha = denom != 0.0 ? (n * sxy - sx * sy) / denom : 1.0;
    double beta = (sy - alpha * sx) / n;
    double worst = 0.0;
    for (size_t k = 0; k < sim.size(); ++k)
      worst = std::max(worst, std::abs(alpha * sim[k] + beta - closed[k]));
    ok &= check(alpha > 0.0, detail, "affine slope not positive");
    ok &= check(worst <= 1e-6, detail,
                "echo residual " + std::to_string(worst) + " for row " +
                    std::to_string(int(u)));
  }
  // 4 pi (not 2 pi) periodicity of the detection pulse angle
  auto echo_at = [](double beta) {
    return angular_echo_simulate_mw_angle(EncodingOp::Z, 0.8, 0.0, 0.9, 0.2, beta);
  };
  double gap2 = 0.0, gap4 = 0.0;
  for (int k = 0; k < 16; ++k) {
    double beta = 4.0 * kPi * k / 16.0;
    gap2 = std::max(gap2, std::abs(echo_at(beta + 2.0 * kPi) - echo_at(beta)));
    gap4 = std::max(gap4, std::abs(echo_at(beta + 4.0 * kPi) - echo_at(beta)));
  }
  ok &= check(gap2 > 0.1, detail, "2 pi looks like a period");
  ok &= check(gap4 <= 1e-9, detail, "4 pi is not a period");
  return ok;
}

// ---- 7: tensor-fit roundtrip --------------------------------------------------

Mat3 rotation_from_rng(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = g(rng);
  Eigen::HouseholderQR<Mat3> qr(m);
  Mat3 q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

PrincipalSystem pipeline(const SymmetricTensor3& t, double noise, std::mt19937_64* rng) {
  std::normal_distribution<double> g;
  auto sweep = [&](Plane plane) {
    std::vector<AngularMeasurement> data;
    for (int k = 0; k < 19; ++k) {
      double theta = kPi * k / 19.0;
      double v = effective_value(t, plane_direction(plane, theta));
      if (noise > 0.0 && rng) v += noise * g(*rng);
      data.push_back({plane, theta, v});
    }
    return fit_plane_constants(data);
  };
  auto [assembled, rep] = assemble_squared_tensor(sweep(Plane::XY), sweep(Plane::YZ),
                                                  sweep(Plane::ZX));
  return principal_values(assembled, TensorQuantity::G);
}

bool c7_tensor_roundtrip(std::string& detail) {
  std::mt19937_64 rng(20060309);
  const Vec3 dpno(2.0033, 2.0065, 2.0110);
  Mat3 rot = rotation_from_rng(rng);
  Mat3 d = Mat3::Zero();
  for (int i = 0; i < 3; ++i) d(i, i) = dpno(i) * dpno(i);
  SymmetricTensor3 t = SymmetricTensor3::from_matrix(rot * d * rot.transpose());

  bool ok = true;
  PrincipalSystem clean = pipeline(t, 0.0, nullptr);
  for (int i = 0; i < 3; ++i)
    ok &= check(std::abs(clean.principal_values(i) - dpno(i)) <= 1e-8, detail,
                "noiseless DPNO principal value " + std::to_string(i));

  PrincipalSystem noisy = pipeline(t, 1e-4, &rng);
  for (int i = 0; i < 3; ++i)
    ok &= check(std::abs(noisy.principal_values(i) - dpno(i)) <= 5e-4, detail,
                "noisy DPNO principal value " + std::to_string(i));

  std::uniform_real_distribution<double> val(0.5, 3.0);
  for (int trial = 0; trial < 100 && ok; ++trial) {
    Vec3 vals(val(rng), val(rng), val(rng));
    std::sort(vals.data(), vals.data() + 3);
    Mat3 r = rotation_from_rng(rng);
    Mat3 dd = Mat3::Zero();
    for (int i = 0; i < 3; ++i) dd(i, i) = vals(i) * vals(i);
    SymmetricTensor3 tt = SymmetricTensor3::from_matrix(r * dd * r.transpose());
    PrincipalSystem out = pipeline(tt, 0.0, nullptr);
    for (int i = 0; i < 3; ++i) {
      ok &= check(std::abs(out.principal_values(i) * out.principal_values(i) -
                           vals(i) * vals(i)) <= 1e-8,
                  detail, "random roundtrip eigenvalue, trial " + std::to_string(trial));
      if (vals(1) - vals(0) > 1e-2 && vals(2) - vals(1) > 1e-2)
        ok &= check(std::abs(std::abs(out.direction_cosines.row(i).dot(r.col(i))) - 1.0) <=
                        1e-6,
                    detail, "random roundtrip eigenvector, trial " + std::to_string(trial));
    }
  }
  return ok;
}

// ---- 8: McConnell cross-check --------------------------------------------------

bool c8_mcconnell(std::string& detail) {
  bool ok = true;
  double rho_n = mcconnell_spin_density(28.752, McConnellRelation::N);
  ok &= check(std::abs(rho_n - 0.3414) <= 5e-4, detail,
              "rho(N) = " + std::to_string(rho_n));
  double rho_h = mcconnell_spin_density(-1.524, McConnellRelation::H);
  ok &= check(std::abs(rho_h - (-0.0011)) <= 5e-5, detail,
              "rho(H) = " + std::to_string(rho_h));
  return ok;
}

// ---- 9: relaxation fits ---------------------------------------------------------

bool c9_relaxation(std::string& detail) {
  bool ok = true;
  auto synth_t1 = [](double t1, int n, double tmax, double noise, std::mt19937_64* rng) {
    std::normal_distribution<double> g;
    std::vector<std::pair<double, double>> data;
    for (int k = 0; k < n; ++k) {
      double t = tmax * k / (n - 1);
      double m = 1.0 - std::exp(-t / t1);
      if (noise > 0 && rng) m += noise * g(*rng);
      data.push_back({t, m});
    }
    return data;
  };
  auto synth_t2 = [](double t2, int n, double tmax, double noise, std::mt19937_64* rng) {
    std::normal_distribution<double> g;
    std::vector<std::pair<double, double>> data;
    for (int k = 0; k < n; ++k) {
      double tau = tmax * (k + 1) / double(n);
      double e = std::exp(-2.0 * tau / t2);
      if (noise > 0 && rng) e += noise * g(*rng);
      data.push_back({tau, e});
    }
    return data;
  };

  for (double t1 : {91.5e-3, 392.0e-3}) {
    auto fit = fit_t1(synth_t1(t1, 20, 5.0 * t1, 0.0, nullptr));
    ok &= check(std::abs(fit.time_constant_s - t1) / t1 <= 1e-6, detail,
                "noiseless T1 " + std::to_string(t1));
  }
  for (double t2 : {5.2e-6, 0.777e-6}) {
    auto fit = fit_t2(synth_t2(t2, 16, 2.0 * t2, 0.0, nullptr));
    ok &= check(std::abs(fit.time_constant_s - t2) / t2 <= 1e-6, detail,
                "noiseless T2 " + std::to_string(t2));
  }

  std::mt19937_64 rng(1956);
  double err1 = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto fit = fit_t1(synth_t1(91.5e-3, 20, 0.46, 0.01, &rng));
    err1 += std::abs(fit.time_constant_s - 91.5e-3) / 91.5e-3;
  }
  ok &= check(err1 / 50.0 <= 0.03, detail,
              "T1 mean error " + std::to_string(err1 / 50.0) + " over 50 trials");

  double err2 = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto fit = fit_t2(synth_t2(0.777e-6, 16, 1.2e-6, 0.01, &rng));
    err2 += std::abs(fit.time_constant_s - 0.777e-6) / 0.777e-6;
  }
  ok &= check(err2 / 50.0 <= 0.05, detail,
              "T2 mean error " + std::to_string(err2 / 50.0) + " over 50 trials");
  return ok;
}

// ---- 10: quoted measure values ---------------------------------------------------

bool c10_measure_sanity(std::string& detail) {
  bool ok = true;
  PureState prod = tensor_product(PureState::basis(2, 0), PureState::basis(2, 1));
  ok &= check(std::abs(entropy_of_entanglement(prod, 2, 2)) <= 1e-9, detail, "E(|ab>)");
  ok &= check(std::abs(entropy_of_entanglement(bell_state(0, 0), 2, 2) - 1.0) <= 1e-9,
              detail, "E(bell)");
  DensityMatrix bell = DensityMatrix::from_pure(bell_state(0, 0));
  ok &= check(std::abs(negativity(bell, 2, 2) - 0.5) <= 1e-9, detail, "N(bell)");
  Operator w = conventional_witness(SdcMessage(0, 0));
  ok &= check(std::abs(witness_expectation(bell, w) + 0.5) <= 1e-9, detail, "<W> bell");
  ok &= check(std::abs(witness_expectation(DensityMatrix::maximally_mixed(4), w) - 0.25) <=
                  1e-9,
              detail, "<W> I/4");
  return ok;
}

// ---- 11: property suites ----------------------------------------------------------

bool c11_properties(std::string& detail) {
  bool ok = true;
  std::mt19937_64 rng(271828);
  std::normal_distribution<double> g;
  auto random_density = [&](int dim) {
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = cxd(g(rng), g(rng));
    Mat rho = m * m.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
  };
  auto random_unitary = [&](int dim) {
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = cxd(g(rng), g(rng));
    return Mat(Eigen::HouseholderQR<Mat>(m).householderQ());
  };

  for (int trial = 0; trial < 50; ++trial) {
    DensityMatrix a = random_density(2), b = random_density(2);
    DensityMatrix prod = tensor_product(a, b);
    ok &= check(max_abs(partial_trace(prod, 2, 2, Subsystem::A).entries() - a.entries()) <=
                    1e-12,
                detail, "partial trace of a product state");
    DensityMatrix rho = random_density(4);
    Mat twice = partial_transpose(partial_transpose(rho.entries(), 2, 2, 1), 2, 2, 1);
    ok &= check(max_abs(twice - rho.entries()) <= 1e-12, detail,
                "partial transpose involution");

    std::vector<Operator> projectors;
    for (int k = 0; k < 4; ++k) {
      Mat p = Mat::Zero(4, 4);
      p(k, k) = 1.0;
      projectors.emplace_back(p, true);
    }
    double psum = 0.0;
    for (const auto& outcome : measure(rho, projectors)) psum += outcome.probability;
    ok &= check(std::abs(psum - 1.0) <= 1e-9, detail, "measurement completeness");

    Mat u = kron(random_unitary(2), random_unitary(2));
    DensityMatrix rotated = apply_unitary(rho, Operator(u, false));
    ok &= check(std::abs(concurrence(rotated) - concurrence(rho)) <= 1e-8, detail,
                "local-unitary invariance of concurrence");
    ok &= check(std::abs(negativity(rotated, 2, 2) - negativity(rho, 2, 2)) <= 1e-8,
                detail, "local-unitary invariance of negativity");
  }

  Operator prod_cnot = cnot_pulse_product();
  Mat cnot = gate(GateName::CNOT, 2, 1).entries();
  ok &= check(global_phase_distance(prod_cnot.entries(), cnot) <= 1e-9, detail,
              "pulse-product CNOT");
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 threshold temperatures", c1_thresholds, 1.0},
      {"2 witness grid consistency", c2_witness_grid, 5.0},
      {"3 witness decomposition theorem", c3_witness_decomposition, 5.0},
      {"4 ensemble statistics", c4_ensemble_statistics, 5.0},
      {"5 TPPI classification", c5_tppi, 5.0},
      {"6 angular echo oracle equivalence", c6_angular_echo, 60.0},
      {"7 tensor-fit roundtrip", c7_tensor_roundtrip, 10.0},
      {"8 McConnell cross-check", c8_mcconnell, 5.0},
      {"9 relaxation fits", c9_relaxation, 5.0},
      {"10 measure sanity", c10_measure_sanity, 5.0},
      {"11 property suites", c11_properties, 60.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    if (secs > c.time_limit_s) {
      ok = false;
      if (detail.empty())
        detail = "runtime " + std::to_string(secs) + " s over limit " +
                 std::to_string(c.time_limit_s);
    }
    std::printf("%s criterion %-36s [%6.2f s]%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                secs, detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
