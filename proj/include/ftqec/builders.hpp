#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ftqec/circuit.hpp"
#include "ftqec/codes.hpp"

namespace ftqec {

enum class LogicalState { zero_L, plus_L };
enum class SteaneHalf { detect_X, detect_Z };
enum class GhzBasis { plus_L, zero_L_dual };
enum class FlagMode { adaptive, emulate_postselect };
enum class Protocol { steane_full, steane_half, flag_adaptive, flag_postselect };

std::string to_string(LogicalState s);
std::string to_string(SteaneHalf h);
std::string to_string(Protocol p);
LogicalState parse_logical_state(const std::string& text);
Protocol parse_protocol(const std::string& text);

/// Thrown when a requested circuit would not be fault tolerant.
class FaultToleranceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Data-register encoding. Qubits 0..n-1 hold the code; with verify=true qubit n
/// is the flag.
Circuit encode_circuit(const StabilizerCode& code, LogicalState state, bool verify);

/// GHZ preparation on qubits 0..d-1; with_flag adds the verification flag as qubit d.
Circuit ghz_aux_prep(int d, GhzBasis basis, bool with_flag);

/// One Steane half-cycle. Register: data 0..n-1, auxiliary n..2n-1, then a flag
/// qubit when the auxiliary preparation needs one (color code, d=5).
Circuit steane_half_cycle(const StabilizerCode& code, SteaneHalf half);

/// Both halves for the color code, auxiliary block reused.
Circuit steane_full_cycle(const StabilizerCode& code);

/// One flagged color-code round on data 0..6 and ancillas 7, 8, 9. In adaptive
/// mode the unflagged remeasurement sits in a conditional block; otherwise it is
/// included when `with_unflagged` is set.
Circuit flag_cycle(const StabilizerCode& code, FlagMode mode, bool with_unflagged = false);

/// Transversal data readout in `basis`; X-basis readout is H then measure_z.
Circuit final_readout(const StabilizerCode& code, StabilizerType basis);

/// The readout basis whose checks the final evaluation uses for `state`.
StabilizerType final_basis(CodeKind code, LogicalState state);

struct ExperimentPlan {
  CodeKind code = CodeKind::color;
  int distance = 3;
  Protocol protocol = Protocol::steane_full;
  LogicalState state = LogicalState::zero_L;
  int rounds = 0;
  /// For flag_postselect: whether round k carries the unflagged remeasurement.
  std::vector<bool> branches;
};

/// Checks protocol/code/state compatibility; throws std::invalid_argument.
void validate_plan(const ExperimentPlan& plan);

/// Encoding, `rounds` rounds and final readout on a single register, with the
/// layout metadata the decoder needs.
Circuit compose_experiment(const ExperimentPlan& plan);

}  // namespace ftqec
