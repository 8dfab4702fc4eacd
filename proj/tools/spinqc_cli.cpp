// Command-line front door: one subcommand per analysis, JSON run records on
// stdout, CSV side outputs via --out. Units at the boundary: Hz, kelvin,
// tesla, seconds, degrees.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinqc/endor_spect.hpp"
#include "spinqc/entanglement.hpp"
#include "spinqc/pulse_engine.hpp"
#include "spinqc/sdc.hpp"
#include "spinqc/spin_ensemble.hpp"
#include "spinqc/state_io.hpp"
#include "spinqc/tensor_fit.hpp"

namespace {

using nlohmann::json;
using namespace spinqc;

constexpr const char* kVersion = "0.1.0";
constexpr double kDeg = std::numbers::pi / 180.0;

void emit(const std::string& subcommand, const json& parameters, const json& outputs) {
  json record{{"subcommand", subcommand},
              {"parameters", parameters},
              {"outputs", outputs},
              {"version", kVersion}};
  std::cout << record.dump(2) << "\n";
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json matrix3_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Transition parse_transition_flag(const std::string& s) {
  if (s.size() != 4 || (s.substr(0, 2) != "mw" && s.substr(0, 2) != "rf"))
    throw CLI::ValidationError("transition must look like mw24 or rf34, got " + s);
  return Transition{s[2] - '0', s[3] - '0'};
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

// --- subcommand bodies -----------------------------------------------------

struct ThresholdArgs {
  double nu_e = 0.0;
  double nu_n = 0.0;
  std::string nucleus;
  bool transfer = false;
};

int run_threshold(const ThresholdArgs& a) {
  double nu_n = a.nu_n;
  if (nu_n == 0.0 && !a.nucleus.empty()) nu_n = nuclear_frequency_hz(a.nucleus, a.nu_e);
  if (nu_n == 0.0 && !a.transfer)
    throw std::invalid_argument("threshold: need --nucleus or --nu-n unless --transfer");
  double t = threshold_temperature(a.nu_e, nu_n, a.transfer);
  double eps_s = polarization(a.nu_e, t);
  double eps_i = a.transfer ? eps_s : polarization(nu_n, t);
  emit("threshold",
       {{"nu_e_hz", a.nu_e},
        {"nu_n_hz", nu_n},
        {"nucleus", a.nucleus},
        {"transfer", a.transfer}},
       {{"t_critical_kelvin", t}, {"epsilon_S", eps_s}, {"epsilon_I", eps_i}});
  return 0;
}

struct ThermalArgs {
  double temperature = 0.0;
  std::vector<double> frequencies;
  std::vector<double> epsilons;
};

int run_thermal(const ThermalArgs& a) {
  DensityMatrix rho = [&] {
    if (!a.epsilons.empty()) {
      if (a.epsilons.size() != 2)
        throw std::invalid_argument("thermal: exactly two --eps values expected");
      return thermal_state_2x2(a.epsilons[0], a.epsilons[1]);
    }
    if (a.frequencies.empty() || a.temperature <= 0.0)
      throw std::invalid_argument("thermal: need --temperature and --nu, or two --eps");
    EnsembleConfig cfg;
    cfg.temperature_k = a.temperature;
    for (size_t i = 0; i < a.frequencies.size(); ++i)
      cfg.species.push_back({"spin" + std::to_string(i), a.frequencies[i]});
    return thermal_state(cfg);
  }();
  json params{{"temperature_k", a.temperature},
              {"nu_hz", a.frequencies},
              {"eps", a.epsilons}};
  emit("thermal", params, {{"state", to_json(rho)}});
  return 0;
}

struct SdcArgs {
  double p_i = 0.0, p_s = 0.0;
  int z = 0, x = 0;
  double n = 1e18;
};

int run_sdc(const SdcArgs& a) {
  SdcMessage msg(a.z, a.x);
  SdcStates st = mixed_sdc_states(a.p_i, a.p_s, msg);
  auto [w1, w2] = evaluate_w1_w2(st.rho2);
  double f = witness_F(w1, w2);
  double eps_i = 2.0 * a.p_i - 1.0, eps_s = 2.0 * a.p_s - 1.0;
  SignalStats stats = signal_stats(a.n, eps_i, eps_s, msg);
  auto report = entanglement_report(st.rho2);
  emit("sdc",
       {{"pI", a.p_i}, {"pS", a.p_s}, {"z", a.z}, {"x", a.x}, {"n", a.n}},
       {{"rho1_eigenvalues", vector_json(st.rho1.eigenvalues())},
        {"rho2_eigenvalues", vector_json(st.rho2.eigenvalues())},
        {"rho3_eigenvalues", vector_json(st.rho3.eigenvalues())},
        {"w1", w1},
        {"w2", w2},
        {"F", f},
        {"entangled", report.entangled},
        {"concurrence", report.concurrence},
        {"negativity", report.negativity},
        {"stats",
         {{"mu_I", stats.mu_i},
          {"mu_S", stats.mu_s},
          {"sigma_I", stats.sigma_i},
          {"sigma_S", stats.sigma_s},
          {"log10_error_probability", stats.log10_error_probability},
          {"pure_guess", stats.pure_guess}}}});
  return 0;
}

int run_witness_theorem(int grid) {
  double worst = 0.0;
  json per_message = json::array();
  for (int z = 0; z <= 1; ++z)
    for (int x = 0; x <= 1; ++x) {
      SdcMessage msg(z, x);
      WitnessDecomposition d = decompose_witness(msg);
      Mat wt = witness_tilde(d);
      Operator w = conventional_witness(msg);
      double msg_worst = 0.0;
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
          double p_i = 0.5 + 0.5 * i / (grid - 1);
          double p_s = 0.5 + 0.5 * j / (grid - 1);
          auto st = mixed_sdc_states(p_i, p_s, msg);
          double t1 = (wt * st.rho2.entries()).trace().real();
          double t2 = (w.entries() * st.rho2.entries()).trace().real();
          msg_worst = std::max(msg_worst, std::abs(t1 - t2));
        }
      per_message.push_back({{"z", z}, {"x", x}, {"max_residual", msg_worst}});
      worst = std::max(worst, msg_worst);
    }
  SignFlipCheck check = verify_sign_flip_impossibility();
  emit("witness-theorem", {{"grid", grid}},
       {{"max_residual", worst},
        {"per_message", per_message},
        {"a", 3.0 / 8.0},
        {"b", 3.0 / 8.0},
        {"c", 0.25},
        {"sign_flip_violation", check.worst_violation},
        {"impossibility_confirmed", check.impossibility_confirmed}});
  return 0;
}

struct TppiArgs {
  double nu1 = 1.0e6, nu2 = 5.2e6;
  std::string seq = "mw24,rf34";
  std::string detect;
  int init = 3;
  double dt = 25e-9;
  int steps = 512;
  bool dephase = false;
  std::string out;
};

int run_tppi(const TppiArgs& a) {
  auto comma = a.seq.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("tppi: --seq must be <mw>,<rf> like mw24,rf34");
  Transition mw = parse_transition_flag(a.seq.substr(0, comma));
  Transition rf1 = parse_transition_flag(a.seq.substr(comma + 1));
  Transition rf2 = rf1;
  if (!a.detect.empty()) {
    auto c2 = a.detect.find(',');
    if (c2 == std::string::npos)
      throw std::invalid_argument("tppi: --detect must be <mw>,<rf>");
    Transition mw_detect = parse_transition_flag(a.detect.substr(0, c2));
    if (!(mw_detect == mw))
      throw std::invalid_argument("tppi: detection microwave must match the sequence");
    rf2 = parse_transition_flag(a.detect.substr(c2 + 1));
  }
  TppiConfig cfg{{mw, rf1, rf2, a.init}, a.nu1, a.nu2, a.dt, a.steps, a.dephase};
  Interferogram ig = tppi_simulate(cfg);
  auto cls = tppi_classify(ig, a.nu1, a.nu2);
  if (!a.out.empty()) {
    std::ofstream csv(a.out);
    if (!csv) throw std::runtime_error("cannot write " + a.out);
    csv << "time_s,signal\n";
    char buf[64];
    for (size_t k = 0; k < ig.signal.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.9e,%.9e\n", ig.times_s[k], ig.signal[k]);
      csv << buf;
    }
  }
  const char* name = cls.cls == TppiClass::SUM          ? "SUM"
                     : cls.cls == TppiClass::DIFFERENCE ? "DIFFERENCE"
                                                        : "SINGLE_FREQUENCIES";
  emit("tppi",
       {{"nu1_hz", a.nu1},
        {"nu2_hz", a.nu2},
        {"seq", a.seq},
        {"detect", a.detect.empty() ? a.seq : a.detect},
        {"init", a.init},
        {"dt_s", a.dt},
        {"steps", a.steps},
        {"dephase", a.dephase}},
       {{"class", name}, {"peak_hz", cls.peak_hz}, {"samples", int(ig.signal.size())}});
  return 0;
}

struct LinesArgs {
  double nu_e_mhz = 0.0, nu_n_mhz = 0.0, a_mhz = 0.0;
  std::string out;
};

int run_lines(const LinesArgs& a) {
  SpinHamiltonianParams p{a.nu_e_mhz, a.nu_n_mhz, a.a_mhz};
  auto levels = energy_levels(p);
  auto epr = epr_lines(p);
  auto endor = endor_lines(p);
  const char* regime = endor.regime == EndorRegime::NU_CENTERED  ? "NU_CENTERED"
                       : endor.regime == EndorRegime::A_CENTERED ? "A_CENTERED"
                                                                 : "DEGENERATE";
  if (!a.out.empty()) {
    std::ofstream csv(a.out);
    if (!csv) throw std::runtime_error("cannot write " + a.out);
    csv << "kind,frequency_mhz\n";
    char buf[64];
    for (double f : {epr[0], epr[1]}) {
      std::snprintf(buf, sizeof buf, "epr,%.9g\n", f);
      csv << buf;
    }
    for (double f : {endor.freqs_mhz[0], endor.freqs_mhz[1]}) {
      std::snprintf(buf, sizeof buf, "endor,%.9g\n", f);
      csv << buf;
    }
  }
  emit("lines",
       {{"nu_e_mhz", a.nu_e_mhz}, {"nu_n_mhz", a.nu_n_mhz}, {"a_mhz", a.a_mhz}},
       {{"levels_mhz", {levels[0], levels[1], levels[2], levels[3]}},
        {"epr_mhz", {epr[0], epr[1]}},
        {"endor_mhz", {endor.freqs_mhz[0], endor.freqs_mhz[1]}},
        {"endor_regime", regime}});
  return 0;
}

struct FitTensorArgs {
  std::string input;
  std::string quantity = "g";
};

int run_fit_tensor(const FitTensorArgs& a) {
  auto rows = read_csv(a.input);
  if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "plane")
    throw std::invalid_argument("fit-tensor: expected header plane,angle_deg,value");
  std::vector<AngularMeasurement> xy, yz, zx;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3) throw std::invalid_argument("fit-tensor: malformed row");
    double angle = std::stod(rows[r][1]) * kDeg;
    double value = std::stod(rows[r][2]);
    const std::string& plane = rows[r][0];
    if (plane == "xy")
      xy.push_back({Plane::XY, angle, value});
    else if (plane == "yz")
      yz.push_back({Plane::YZ, angle, value});
    else if (plane == "zx")
      zx.push_back({Plane::ZX, angle, value});
    else
      throw std::invalid_argument("fit-tensor: unknown plane " + plane);
  }
  PlaneConstants kxy = fit_plane_constants(xy);
  PlaneConstants kyz = fit_plane_constants(yz);
  PlaneConstants kzx = fit_plane_constants(zx);
  auto [tensor, consistency] = assemble_squared_tensor(kxy, kyz, kzx);
  TensorQuantity q = a.quantity == "a" ? TensorQuantity::A : TensorQuantity::G;
  PrincipalSystem ps = principal_values(tensor, q);
  emit("fit-tensor", {{"input", a.input}, {"quantity", a.quantity}},
       {{"principal_values", {ps.principal_values(0), ps.principal_values(1),
                              ps.principal_values(2)}},
        {"direction_cosines", matrix3_json(ps.direction_cosines)},
        {"sign_resolved", ps.sign_resolved},
        {"residuals",
         {{"xy", kxy.residual_rms}, {"yz", kyz.residual_rms}, {"zx", kzx.residual_rms}}},
        {"consistency",
         {consistency.diagonal_discrepancy(0), consistency.diagonal_discrepancy(1),
          consistency.diagonal_discrepancy(2)}}});
  return 0;
}

struct FitRelaxArgs {
  std::string type;
  std::string input;
};

int run_fit_relax(const FitRelaxArgs& a) {
  auto rows = read_csv(a.input);
  if (rows.empty() || rows[0].size() != 2)
    throw std::invalid_argument("fit-relax: expected header t_s,signal");
  std::vector<std::pair<double, double>> data;
  for (size_t r = 1; r < rows.size(); ++r)
    data.push_back({std::stod(rows[r][0]), std::stod(rows[r][1])});
  RelaxationFit fit = a.type == "t1" ? fit_t1(data) : fit_t2(data);
  emit("fit-relax", {{"type", a.type}, {"input", a.input}},
       {{"time_constant_s", fit.time_constant_s},
        {"amplitude", fit.amplitude},
        {"residual_rms", fit.residual_rms}});
  return 0;
}

int run_entangle(const std::string& state_path) {
  DensityMatrix rho = load_state(state_path);
  auto rep = entanglement_report(rho);
  emit("entangle", {{"state", state_path}},
       {{"concurrence", rep.concurrence},
        {"eof_bits", rep.eof_bits},
        {"negativity", rep.negativity},
        {"log_negativity_bits", rep.log_negativity_bits},
        {"ppt", rep.ppt},
        {"min_pt_eigenvalue", rep.min_pt_eigenvalue},
        {"entangled", rep.entangled}});
  return 0;
}

struct PulsesArgs {
  std::string seq;
  std::string state_path;
  int init = 1;
  std::string out;
};

int run_pulses(const PulsesArgs& a) {
  DensityMatrix rho = a.state_path.empty()
                          ? DensityMatrix::from_pure(PureState::basis(4, a.init - 1))
                          : load_state(a.state_path);
  PulseSequence seq = parse_sequence(a.seq);
  DensityMatrix out = apply_sequence(rho, seq);
  json state_json = to_json(out);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << state_json.dump(2) << "\n";
  }
  emit("pulses",
       {{"seq", a.seq}, {"state", a.state_path}, {"init", a.init}},
       {{"state", state_json}, {"populations", vector_json(out.populations())}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electron-nuclear spin-pair quantum computing toolkit"};
  app.require_subcommand(1);

  ThresholdArgs th;
  auto* threshold = app.add_subcommand("threshold", "entanglement critical temperature");
  threshold->add_option("--nu-e", th.nu_e, "electron frequency, Hz")->required();
  threshold->add_option("--nucleus", th.nucleus, "nucleus label (1H, 2H, 14N, 15N, 19F)");
  threshold->add_option("--nu-n", th.nu_n, "nuclear frequency, Hz");
  threshold->add_flag("--transfer", th.transfer, "assume polarization transfer");

  ThermalArgs tm;
  auto* thermal = app.add_subcommand("thermal", "thermal-equilibrium density matrix");
  thermal->add_option("--temperature", tm.temperature, "kelvin");
  thermal->add_option("--nu", tm.frequencies, "Larmor frequencies, Hz (electron first)");
  thermal->add_option("--eps", tm.epsilons, "two polarizations directly");

  SdcArgs sd;
  auto* sdc_cmd = app.add_subcommand("sdc", "mixed-state superdense coding analysis");
  sdc_cmd->add_option("--pI", sd.p_i, "|0> probability of the I spin")->required();
  sdc_cmd->add_option("--pS", sd.p_s, "|0> probability of the S spin")->required();
  sdc_cmd->add_option("--z", sd.z, "message bit z")->required();
  sdc_cmd->add_option("--x", sd.x, "message bit x")->required();
  sdc_cmd->add_option("--n", sd.n, "molecule count for the statistics");

  int wt_grid = 101;
  auto* witness = app.add_subcommand("witness-theorem",
                                     "single-run witness decomposition verification");
  witness->add_option("--grid", wt_grid, "grid points per axis");

  TppiArgs tp;
  auto* tppi = app.add_subcommand("tppi", "phase-incremented echo simulation");
  tppi->add_option("--nu1", tp.nu1, "MW phase frequency, Hz");
  tppi->add_option("--nu2", tp.nu2, "RF phase frequency, Hz");
  tppi->add_option("--seq", tp.seq, "entangling pair, e.g. mw24,rf34");
  tppi->add_option("--detect", tp.detect, "detection pair (defaults to --seq)");
  tppi->add_option("--init", tp.init, "initial level 1..4");
  tppi->add_option("--dt", tp.dt, "phase increment step, s");
  tppi->add_option("--steps", tp.steps, "number of consecutive experiments");
  tppi->add_flag("--dephase", tp.dephase, "dephase before detection (control run)");
  tppi->add_option("--out", tp.out, "write the interferogram CSV here");

  LinesArgs ln;
  auto* lines = app.add_subcommand("lines", "first-order EPR/ENDOR line positions");
  lines->add_option("--nu-e", ln.nu_e_mhz, "electron frequency, MHz")->required();
  lines->add_option("--nu-n", ln.nu_n_mhz, "nuclear frequency, MHz")->required();
  lines->add_option("--a", ln.a_mhz, "isotropic hyperfine, MHz")->required();
  lines->add_option("--out", ln.out, "write the line table CSV here");

  FitTensorArgs ft;
  auto* fit_tensor = app.add_subcommand("fit-tensor", "three-plane tensor fit");
  fit_tensor->add_option("--input", ft.input, "CSV with header plane,angle_deg,value")
      ->required();
  fit_tensor->add_option("--quantity", ft.quantity, "g or a");

  FitRelaxArgs fr;
  auto* fit_relax = app.add_subcommand("fit-relax", "T1/T2 relaxation fit");
  fit_relax->add_option("--type", fr.type, "t1 or t2")
      ->required()
      ->check(CLI::IsMember({"t1", "t2"}));
  fit_relax->add_option("--input", fr.input, "CSV with header t_s,signal")->required();

  std::string entangle_state;
  auto* entangle = app.add_subcommand("entangle", "entanglement report for a state file");
  entangle->add_option("--state", entangle_state, "state JSON path")->required();

  PulsesArgs pl;
  auto* pulses = app.add_subcommand("pulses", "apply a pulse sequence to a state");
  pulses->add_option("--seq", pl.seq, "e.g. mw24:pi:90,rf34:pi/2:0,dephase")->required();
  pulses->add_option("--state", pl.state_path, "input state JSON (default: basis level)");
  pulses->add_option("--init", pl.init, "basis level 1..4 when no --state");
  pulses->add_option("--out", pl.out, "also write the final state JSON here");

  try {
    app.parse(argc, argv);
    if (*threshold) return run_threshold(th);
    if (*thermal) return run_thermal(tm);
    if (*sdc_cmd) return run_sdc(sd);
    if (*witness) return run_witness_theorem(wt_grid);
    if (*tppi) return run_tppi(tp);
    if (*lines) return run_lines(ln);
    if (*fit_tensor) return run_fit_tensor(ft);
    if (*fit_relax) return run_fit_relax(fr);
    if (*entangle) return run_entangle(entangle_state);
    if (*pulses) return run_pulses(pl);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
