#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftqec/builders.hpp"
#include "ftqec/codes.hpp"
#include "ftqec/engine.hpp"

namespace ftqec {

/// Accumulated recovery, tracked in software only.
struct PauliFrame {
  PauliString recovery;

  static PauliFrame identity(int n) { return {PauliString::identity(n)}; }
};

enum class RoundHalf { detect_X, detect_Z, flagged, unflagged };
std::string to_string(RoundHalf h);

struct RoundRecord {
  int round = 0;
  RoundHalf half = RoundHalf::detect_X;
  std::vector<int> raw_bits;
  Syndrome syndrome;
  PauliString recovery;
};

/// Syndrome of an auxiliary readout: parity of the bits on each check support.
Syndrome steane_syndrome(const std::vector<int>& aux_bits, const StabilizerCode& code, SteaneHalf half);

PauliString decode_round(const Syndrome& syndrome, const DecodeTable& table);

/// Recovery for one stabilizer family of a flagged round. Syndromes are taken
/// relative to the current frame.
PauliString resolve_flag(const Syndrome& flagged, const std::optional<Syndrome>& unflagged,
                         const DecodeTable& standard, const DecodeTable& flag);

PauliFrame update_frame(const PauliFrame& frame, const PauliString& recovery);

/// Final readout check: the frame is folded into the bits, one classical
/// correction round is applied, and the logical parity is compared with +1.
bool evaluate_logical(const std::vector<int>& final_bits, StabilizerType basis, const PauliFrame& frame,
                      const StabilizerCode& code, LogicalState target);
bool evaluate_logical(const std::vector<int>& final_bits, StabilizerType basis, const PauliFrame& frame,
                      const StabilizerCode& code, LogicalState target, const DecodeTable& table);

struct ShotVerdict {
  bool discarded = false;
  DiscardReason reason = DiscardReason::none;
  bool success = false;
};

/// Decodes shots of a circuit built by compose_experiment.
class Decoder {
 public:
  Decoder(CodeKind code, int distance);

  const StabilizerCode& code() const { return code_; }
  const DecodeTable& table(StabilizerType family) const;
  const DecodeTable& flag_table(StabilizerType family) const;

  /// Frame after decoding rounds 0 .. rounds-1.
  PauliFrame frame_after(const ProtocolLayout& layout, const std::vector<int8_t>& records, int rounds,
                         std::vector<RoundRecord>* trace = nullptr) const;

  /// Whether the flagged readout of `round` calls for the unflagged remeasurement:
  /// some raw bit is set, or the readout differs from what the frame predicts.
  bool flagged_nontrivial(const ProtocolLayout& layout, const std::vector<int8_t>& records, int round,
                          const PauliFrame& frame) const;

  ShotVerdict decode(const Circuit& circuit, const ShotOutcome& outcome, LogicalState target,
                     std::vector<RoundRecord>* trace = nullptr) const;

 private:
  Syndrome relative(const std::array<int, 6>& ids, const std::vector<int8_t>& records, StabilizerType family,
                    const PauliFrame& frame) const;

  StabilizerCode code_;
  std::optional<DecodeTable> table_x_, table_z_;
  DecodeTable flag_x_, flag_z_;
};

/// Feed-forward for adaptive flag rounds, deciding with flagged_nontrivial on
/// the frame of the earlier rounds.
PredicateEvaluator make_flag_feed_forward(const Decoder& decoder);

/// Run options suited to a composed circuit (feed-forward when it has
/// conditional blocks).
RunOptions protocol_run_options(const Circuit& circuit, const Decoder& decoder);

struct FaultCheckReport {
  size_t locations = 0;
  size_t faults = 0;
  size_t discarded = 0;
  size_t failures = 0;
  std::vector<std::string> failure_descriptions;
};

/// Injects every single fault (E1 at one-qubit locations, the 15 two-qubit
/// Paulis at CNOTs, E1 on each data qubit at mid-circuit markers) into an
/// otherwise noiseless run and counts logical failures.
FaultCheckReport check_single_faults(const Circuit& circuit, const Decoder& decoder, LogicalState target);

}  // namespace ftqec
