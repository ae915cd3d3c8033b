#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ftqec/circuit.hpp"
#include "ftqec/pauli.hpp"
#include "ftqec/rng.hpp"

namespace ftqec {

struct NoiseModel {
  double p_1q = 0.0036;
  double p_2q = 0.027;
  double p_init = 0.003;
  double p_meas = 0.003;
  double p_mid_x = 0.011;
  double p_mid_y = 0.024;
  double p_mid_z = 0.035;
  double t2_us = 50000.0;
  bool idle_enabled = true;
  bool mid_circuit_enabled = true;
  /// Idle time charged to the other qubits by each preparation, reset or
  /// measurement outside a mid-circuit block. Zero by default; a knob for
  /// sensitivity studies.
  double spam_idle_us = 0.0;

  static NoiseModel paper_default() { return {}; }
  static NoiseModel noiseless();
  /// Only two-qubit gate depolarization at rate `p`.
  static NoiseModel two_qubit_only(double p);

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
  bool is_noiseless() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

double idle_dephasing_prob(double t_us, double t2_us);

/// Fault after an ideal gate, as a Pauli on the gate's operands (operand 0 is
/// qubit 0 of the result). Empty when no fault occurs.
std::optional<PauliString> sample_gate_fault(OpKind kind, const NoiseModel& model, ShotRng& rng);

enum class SpamKind { prepare, measure };

/// True when an X fault occurs (after a preparation or before a measurement).
bool sample_spam_fault(SpamKind kind, const NoiseModel& model, ShotRng& rng);

/// Mask of qubits receiving a Z fault while `current` runs; operands excluded.
uint64_t sample_idle_faults(const Instruction& current, int n_qubits, const NoiseModel& model, ShotRng& rng);
/// Same, for an explicit duration and set of idle qubits.
uint64_t sample_idle_mask(uint64_t idle_qubits, double duration_us, const NoiseModel& model, ShotRng& rng);

/// Asymmetric depolarizing fault on each qubit of `data_qubits`.
PauliString sample_mid_circuit_faults(uint64_t data_qubits, int n_qubits, const NoiseModel& model, ShotRng& rng);

}  // namespace ftqec
