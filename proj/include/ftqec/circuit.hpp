#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ftqec/codes.hpp"

namespace ftqec {

/// Operation durations in microseconds.
inline constexpr double kTwoQubitGateUs = 322.5;
inline constexpr double kSingleQubitGateUs = 25.0;
/// Register size of the target device.
inline constexpr int kQubitBudget = 16;

enum class OpKind {
  prepare_0,
  reset,
  hadamard,
  cnot,
  pauli_x,
  pauli_y,
  pauli_z,
  measure_z,
  measure_x,
  mid_circuit,
  if_begin,
  if_end,
};

enum class QubitRole { data, auxiliary, flag };

/// Why a shot is thrown away when a record reads 1.
enum class DiscardReason { none, encoding_verification, ghz_flag, postselect_branch };

std::string to_string(OpKind kind);
std::string to_string(QubitRole role);
std::string to_string(DiscardReason reason);
DiscardReason parse_discard_reason(const std::string& text);

bool is_gate(OpKind kind);
bool is_single_qubit_gate(OpKind kind);
bool is_measurement(OpKind kind);
double default_duration(OpKind kind);

struct Instruction {
  OpKind kind = OpKind::hadamard;
  /// Operand qubits; unused slots hold -1. For cnot: {control, target}.
  std::array<int, 2> qubits{-1, -1};
  /// Record written by a measurement, or predicate read by if_begin.
  int index = -1;
  /// Qubits receiving the mid-circuit channel.
  uint64_t mask = 0;
  double duration_us = 0.0;

  int num_operands() const { return (qubits[0] >= 0) + (qubits[1] >= 0); }
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct RecordDecl {
  int qubit = -1;
  std::string label;
  DiscardReason discard_on_one = DiscardReason::none;
  friend bool operator==(const RecordDecl&, const RecordDecl&) = default;
};

/// Condition guarding a feed-forward block. The default reading is "some
/// listed record is 1"; protocols may supply a frame-aware evaluation.
struct Predicate {
  std::string label;
  int round = 0;
  std::vector<int> records;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Records of one Steane half-cycle. `family` is the syndrome it reveals:
/// Z-type checks for the half that detects X errors.
struct SteaneHalfRecords {
  StabilizerType family = StabilizerType::Z;
  /// One record per auxiliary qubit, in data-qubit order.
  std::vector<int> aux_records;
};

/// Records of one flagged color-code round. Entries follow the generator
/// order of the code (S_X^1..3, S_Z^1..3).
struct FlagRoundRecords {
  std::array<int, 6> flagged{};
  /// -1 when the unflagged remeasurement is absent from this circuit.
  std::array<int, 6> unflagged{-1, -1, -1, -1, -1, -1};
  /// Predicate guarding the remeasurement (adaptive circuits), else -1.
  int predicate = -1;
  bool has_unflagged() const { return unflagged[0] >= 0; }
};

struct RoundLayout {
  std::vector<SteaneHalfRecords> halves;
  std::optional<FlagRoundRecords> flag;
};

/// Where a composed experiment keeps the bits the decoder needs.
struct ProtocolLayout {
  CodeKind code = CodeKind::color;
  int distance = 3;
  std::vector<RoundLayout> rounds;
  /// Measured in the basis of `final_family`'s checks, in data-qubit order.
  std::vector<int> final_records;
  StabilizerType final_family = StabilizerType::Z;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int num_qubits() const { return static_cast<int>(roles_.size()); }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::vector<RecordDecl>& records() const { return records_; }
  const std::vector<Predicate>& predicates() const { return predicates_; }
  const std::vector<QubitRole>& roles() const { return roles_; }
  const std::optional<ProtocolLayout>& layout() const { return layout_; }

  void set_role(int qubit, QubitRole role);
  QubitRole role(int qubit) const { return roles_.at(qubit); }
  uint64_t role_mask(QubitRole role) const;
  void set_layout(ProtocolLayout layout) { layout_ = std::move(layout); }

  void prepare(int q);
  void reset(int q);
  void h(int q);
  void x(int q);
  void y(int q);
  void z(int q);
  void cx(int control, int target);
  /// Appends a Z-basis measurement and returns its record id.
  int measure_z(int q, std::string label, DiscardReason discard = DiscardReason::none);
  int measure_x(int q, std::string label, DiscardReason discard = DiscardReason::none);
  void mid_circuit(uint64_t qubits);
  int add_predicate(Predicate p);
  void begin_if(int predicate);
  void end_if();
  void push(const Instruction& ins);

  /// Appends `other` with its qubit i mapped to `qubit_map[i]`; records and
  /// predicates are renumbered. Returns the record offset.
  int append(const Circuit& other, const std::vector<int>& qubit_map);

  size_t count(OpKind kind) const;
  /// Total duration of all instructions, with every conditional block included.
  double total_duration_us() const;

  /// Throws std::logic_error on the first violated structural rule.
  void validate(int qubit_budget = kQubitBudget) const;

  /// One instruction per line: `KIND operands @duration`, preceded by headers
  /// for qubit roles, records and predicates.
  std::string to_text() const;
  static Circuit from_text(const std::string& text);

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.roles_ == b.roles_ && a.instructions_ == b.instructions_ && a.records_ == b.records_ &&
           a.predicates_ == b.predicates_;
  }

 private:
  void check_qubit(int q) const;
  int add_record(int q, std::string label, DiscardReason discard);

  std::vector<QubitRole> roles_;
  std::vector<Instruction> instructions_;
  std::vector<RecordDecl> records_;
  std::vector<Predicate> predicates_;
  std::optional<ProtocolLayout> layout_;
  int open_blocks_ = 0;
};

}  // namespace ftqec
