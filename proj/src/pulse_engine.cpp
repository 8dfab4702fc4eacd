#include "spinqc/pulse_engine.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spinqc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_valid_transition(const Transition& t) {
  return (t == w12) || (t == w13) || (t == w24) || (t == w34);
}

}  // namespace

bool channel_matches_transition(Channel c, const Transition& t) {
  bool electron_flip = (t == w13) || (t == w24);
  return c == Channel::MW ? electron_flip : !electron_flip;
}

Operator pulse_unitary(const TransitionPulse& p) {
  if (!is_valid_transition(p.levels))
    throw std::invalid_argument("pulse_unitary: not a single-spin transition");
  if (!channel_matches_transition(p.channel, p.levels))
    throw std::invalid_argument("pulse_unitary: channel does not drive this transition");
  Mat u = Mat::Identity(4, 4);
  int a = p.levels.i - 1, b = p.levels.j - 1;
  double c = std::cos(p.theta / 2.0), s = std::sin(p.theta / 2.0);
  cxd mi(0.0, -1.0);
  u(a, a) = c;
  u(b, b) = c;
  u(a, b) = mi * std::exp(cxd(0.0, -p.phi)) * s;
  u(b, a) = mi * std::exp(cxd(0.0, p.phi)) * s;
  return Operator(std::move(u), false);
}

Operator pulse_unitary(const Transition& t, Channel c, double theta, double phi) {
  return pulse_unitary(TransitionPulse{t, theta, phi, c});
}

Operator gate(GateName name, int target, int control) {
  using namespace gates2;
  auto on_qubit = [](const Mat& g, int q) {
    return q == 1 ? kron(g, identity2()) : kron(identity2(), g);
  };
  switch (name) {
    case GateName::X:
    case GateName::Y:
    case GateName::Z:
    case GateName::H: {
      if (target != 1 && target != 2) throw std::invalid_argument("gate: bad target qubit");
      Mat g = name == GateName::X   ? pauli_x()
              : name == GateName::Y ? pauli_y()
              : name == GateName::Z ? pauli_z()
                                    : hadamard();
      return Operator(on_qubit(g, target), true);
    }
    case GateName::CNOT: {
      if (control == target || control < 1 || control > 2 || target < 1 || target > 2)
        throw std::invalid_argument("gate: bad CNOT wiring");
      Mat u = Mat::Zero(4, 4);
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          int in = b1 * 2 + b2;
          int o1 = b1, o2 = b2;
          if (control == 1 && b1 == 1) o2 = 1 - b2;
          if (control == 2 && b2 == 1) o1 = 1 - b1;
          u(o1 * 2 + o2, in) = 1.0;
        }
      return Operator(std::move(u), false);
    }
  }
  throw std::invalid_argument("gate: unknown gate");
}

Operator cnot_pulse_product() {
  Mat m1(4, 4), m5(4, 4);
  m1 << 1, -1, 0, 0, 1, 1, 0, 0, 0, 0, 1, -1, 0, 0, 1, 1;
  m5 << 1, 1, 0, 0, -1, 1, 0, 0, 0, 0, 1, 1, 0, 0, -1, 1;
  cxd p(1, 1), m(1, -1);
  Mat m2 = Vec{{m, m, p, p}}.asDiagonal();
  Mat m3 = Vec{{m, p, m, p}}.asDiagonal();
  Mat m4 = Vec{{p, m, m, p}}.asDiagonal();
  Mat prod = m1 * m2 * m3 * m4 * m5 / std::pow(2.0, 2.5);
  return Operator(std::move(prod), false);
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix::diagonal(rho.populations());
}

DensityMatrix pseudo_pure_prepare(const DensityMatrix& rho_thermal) {
  Mat off = rho_thermal.entries();
  off.diagonal().setZero();
  if (max_abs(off) > 1e-9)
    throw std::invalid_argument("pseudo_pure_prepare: input must be diagonal");
  double theta_mw = std::acos(-1.0 / 3.0);  // 109.47 deg
  DensityMatrix rho = apply_unitary(rho_thermal, pulse_unitary(w24, Channel::MW, theta_mw, 0.0));
  rho = dephase(rho);
  rho = apply_unitary(rho, pulse_unitary(w12, Channel::RF, kPi / 2.0, 0.0));
  return dephase(rho);
}

PureState bell_prepare(int initial_level, const Transition& rf, const Transition& mw) {
  if (initial_level < 1 || initial_level > 4)
    throw std::invalid_argument("bell_prepare: initial level out of range");
  if (!channel_matches_transition(Channel::RF, rf))
    throw std::invalid_argument("bell_prepare: rf transition is not nuclear");
  if (!channel_matches_transition(Channel::MW, mw))
    throw std::invalid_argument("bell_prepare: mw transition is not electron");
  if (rf.i != initial_level && rf.j != initial_level)
    throw std::invalid_argument("bell_prepare: rf transition does not touch the initial level");
  PureState psi = PureState::basis(4, initial_level - 1);
  psi = apply_unitary(psi, pulse_unitary(rf, Channel::RF, kPi / 2.0, kPi / 2.0));
  psi = apply_unitary(psi, pulse_unitary(mw, Channel::MW, kPi, kPi / 2.0));
  return psi;
}

namespace {

double parse_angle(const std::string& tok) {
  auto pos = tok.find("pi");
  if (pos == std::string::npos) {
    // plain number: degrees
    return std::stod(tok) * kPi / 180.0;
  }
  double mult = pos == 0 ? 1.0 : std::stod(tok.substr(0, pos));
  double div = 1.0;
  auto rest = tok.substr(pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad angle token: " + tok);
    div = std::stod(rest.substr(1));
  }
  return mult * kPi / div;
}

Transition parse_transition(const std::string& digits) {
  if (digits.size() != 2) throw std::invalid_argument("bad transition: " + digits);
  return Transition{digits[0] - '0', digits[1] - '0'};
}

}  // namespace

PulseSequence parse_sequence(const std::string& text) {
  PulseSequence seq;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "dephase") {
      seq.push_back({true, {}});
      continue;
    }
    std::stringstream fs(item);
    std::string chan_tr, angle, phase;
    if (!std::getline(fs, chan_tr, ':') || !std::getline(fs, angle, ':'))
      throw std::invalid_argument("bad pulse token: " + item);
    std::getline(fs, phase, ':');
    Channel chan;
    if (chan_tr.rfind("mw", 0) == 0)
      chan = Channel::MW;
    else if (chan_tr.rfind("rf", 0) == 0)
      chan = Channel::RF;
    else
      throw std::invalid_argument("bad channel in token: " + item);
    TransitionPulse p{parse_transition(chan_tr.substr(2)), parse_angle(angle),
                      phase.empty() ? 0.0 : std::stod(phase) * kPi / 180.0, chan};
    if (!is_valid_transition(p.levels) || !channel_matches_transition(chan, p.levels))
      throw std::invalid_argument("illegal channel/transition pairing: " + item);
    seq.push_back({false, p});
  }
  if (seq.empty()) throw std::invalid_argument("empty pulse sequence");
  return seq;
}

DensityMatrix apply_sequence(const DensityMatrix& rho, const PulseSequence& seq) {
  DensityMatrix out = rho;
  for (const auto& step : seq)
    out = step.dephase ? dephase(out) : apply_unitary(out, pulse_unitary(step.pulse));
  return out;
}

}  // namespace spinqc
