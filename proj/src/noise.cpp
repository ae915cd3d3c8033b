#include "ftqec/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ftqec {

NoiseModel NoiseModel::noiseless() {
  NoiseModel m;
  m.p_1q = m.p_2q = m.p_init = m.p_meas = 0.0;
  m.p_mid_x = m.p_mid_y = m.p_mid_z = 0.0;
  m.idle_enabled = false;
  m.mid_circuit_enabled = false;
  return m;
}

NoiseModel NoiseModel::two_qubit_only(double p) {
  NoiseModel m = noiseless();
  m.p_2q = p;
  return m;
}

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

void NoiseModel::validate() const {
  check_probability(p_1q, "p_1q");
  check_probability(p_2q, "p_2q");
  check_probability(p_init, "p_init");
  check_probability(p_meas, "p_meas");
  check_probability(p_mid_x, "p_mid_x");
  check_probability(p_mid_y, "p_mid_y");
  check_probability(p_mid_z, "p_mid_z");
  if (p_mid_x + p_mid_y + p_mid_z > 1.0 + 1e-12) {
    throw std::invalid_argument("mid-circuit rates sum to more than 1");
  }
  if (!(t2_us > 0.0)) throw std::invalid_argument("T2 must be positive");
  if (!(spam_idle_us >= 0.0)) throw std::invalid_argument("spam_idle_us must be non-negative");
}

bool NoiseModel::is_noiseless() const {
  const bool idle = idle_enabled && std::isfinite(t2_us);
  const bool mid = mid_circuit_enabled && (p_mid_x + p_mid_y + p_mid_z) > 0.0;
  return p_1q == 0.0 && p_2q == 0.0 && p_init == 0.0 && p_meas == 0.0 && !idle && !mid;
}

double idle_dephasing_prob(double t_us, double t2_us) {
  if (t_us < 0.0) throw std::invalid_argument("idle time must be non-negative");
  if (!(t2_us > 0.0)) throw std::invalid_argument("T2 must be positive");
  return 0.5 * -std::expm1(-t_us / t2_us);
}

std::optional<PauliString> sample_gate_fault(OpKind kind, const NoiseModel& model, ShotRng& rng) {
  if (!is_gate(kind)) throw std::invalid_argument(to_string(kind) + " is not a gate");
  if (kind == OpKind::cnot) {
    if (!rng.bernoulli(model.p_2q)) return std::nullopt;
    const int k = 1 + rng.below(15);  // two base-4 digits, not both zero
    PauliString fault(2);
    fault.set(0, static_cast<Pauli>(k & 3));
    fault.set(1, static_cast<Pauli>(k >> 2));
    return fault;
  }
  if (!rng.bernoulli(model.p_1q)) return std::nullopt;
  PauliString fault(1);
  fault.set(0, static_cast<Pauli>(1 + rng.below(3)));
  return fault;
}

bool sample_spam_fault(SpamKind kind, const NoiseModel& model, ShotRng& rng) {
  return rng.bernoulli(kind == SpamKind::prepare ? model.p_init : model.p_meas);
}

uint64_t sample_idle_mask(uint64_t idle_qubits, double duration_us, const NoiseModel& model, ShotRng& rng) {
  if (!model.idle_enabled || idle_qubits == 0 || duration_us <= 0.0) return 0;
  const double p = idle_dephasing_prob(duration_us, model.t2_us);
  if (p <= 0.0) return 0;
  const int k = std::popcount(idle_qubits);
  uint64_t out = 0;
  uint64_t remaining = idle_qubits;
  uint64_t idx = rng.geometric_skip(p);
  int consumed = 0;
  while (idx < static_cast<uint64_t>(k)) {
    while (static_cast<uint64_t>(consumed) < idx) {
      remaining &= remaining - 1;
      ++consumed;
    }
    out |= remaining & (~remaining + 1);
    const uint64_t skip = rng.geometric_skip(p);
    if (skip >= static_cast<uint64_t>(k)) break;
    idx += 1 + skip;
  }
  return out;
}

uint64_t sample_idle_faults(const Instruction& current, int n_qubits, const NoiseModel& model, ShotRng& rng) {
  uint64_t idle = low_mask(n_qubits);
  for (int q : current.qubits) {
    if (q >= 0) idle &= ~(uint64_t{1} << q);
  }
  return sample_idle_mask(idle, current.duration_us, model, rng);
}

PauliString sample_mid_circuit_faults(uint64_t data_qubits, int n_qubits, const NoiseModel& model, ShotRng& rng) {
  PauliString out(n_qubits);
  if (!model.mid_circuit_enabled) return out;
  const double total = model.p_mid_x + model.p_mid_y + model.p_mid_z;
  if (total <= 0.0) return out;
  uint64_t x = 0, z = 0;
  for (uint64_t rest = data_qubits; rest; rest &= rest - 1) {
    const uint64_t bit = rest & (~rest + 1);
    const double u = rng.uniform();
    if (u < model.p_mid_x) {
      x |= bit;
    } else if (u < model.p_mid_x + model.p_mid_y) {
      x |= bit;
      z |= bit;
    } else if (u < total) {
      z |= bit;
    }
  }
  return PauliString(n_qubits, x, z);
}

}  // namespace ftqec
