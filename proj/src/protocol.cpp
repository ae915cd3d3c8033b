#include "ftqec/protocol.hpp"

#include <bit>
#include <stdexcept>

namespace ftqec {

std::string to_string(RoundHalf h) {
  switch (h) {
    case RoundHalf::detect_X: return "detect_X";
    case RoundHalf::detect_Z: return "detect_Z";
    case RoundHalf::flagged: return "flagged";
    case RoundHalf::unflagged: return "unflagged";
  }
  return "?";
}

namespace {

uint64_t bits_to_mask(const std::vector<int>& bits) {
  uint64_t m = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("measurement bits must be 0 or 1");
    if (bits[i]) m |= uint64_t{1} << i;
  }
  return m;
}

std::vector<int> gather(const std::vector<int>& ids, const std::vector<int8_t>& records) {
  std::vector<int> out;
  out.reserve(ids.size());
  for (int id : ids) {
    const int8_t v = records.at(id);
    if (v == kRecordAbsent) throw std::runtime_error("record " + std::to_string(id) + " missing from shot");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Syndrome steane_syndrome(const std::vector<int>& aux_bits, const StabilizerCode& code, SteaneHalf half) {
  if (static_cast<int>(aux_bits.size()) != code.n) {
    throw DimensionError("expected " + std::to_string(code.n) + " auxiliary bits, got " +
                         std::to_string(aux_bits.size()));
  }
  const StabilizerType family = half == SteaneHalf::detect_X ? StabilizerType::Z : StabilizerType::X;
  if (!code.has_family(family)) {
    throw std::invalid_argument(code.name + " has no " + to_string(family) + "-type checks for " + to_string(half));
  }
  return syndrome_of_bits(code, bits_to_mask(aux_bits), family);
}

PauliString decode_round(const Syndrome& syndrome, const DecodeTable& table) {
  if (syndrome.trivial()) return PauliString::identity(table.num_qubits());
  if (auto r = table.lookup(syndrome)) return *r;
  throw std::logic_error("syndrome " + syndrome.str() + " missing from a complete decoding table");
}

PauliString resolve_flag(const Syndrome& flagged, const std::optional<Syndrome>& unflagged,
                         const DecodeTable& standard, const DecodeTable& flag) {
  if (flagged.trivial()) return PauliString::identity(standard.num_qubits());
  if (!unflagged) throw std::invalid_argument("a non-trivial flagged syndrome needs the unflagged remeasurement");
  if (*unflagged == flagged) return decode_round(*unflagged, standard);
  if (auto r = flag.lookup(*unflagged)) return *r;
  return decode_round(*unflagged, standard);
}

PauliFrame update_frame(const PauliFrame& frame, const PauliString& recovery) {
  return {frame.recovery * recovery};
}

bool evaluate_logical(const std::vector<int>& final_bits, StabilizerType basis, const PauliFrame& frame,
                      const StabilizerCode& code, LogicalState target) {
  return evaluate_logical(final_bits, basis, frame, code, target, build_lookup_table(code, basis));
}

bool evaluate_logical(const std::vector<int>& final_bits, StabilizerType basis, const PauliFrame& frame,
                      const StabilizerCode& code, LogicalState target, const DecodeTable& table) {
  if (static_cast<int>(final_bits.size()) != code.n) {
    throw DimensionError("expected " + std::to_string(code.n) + " final bits");
  }
  const PauliString& logical = target == LogicalState::zero_L ? code.logical_z : code.logical_x;
  const uint64_t logical_x = logical.x_mask(), logical_z = logical.z_mask();
  const StabilizerType needed = logical_x ? StabilizerType::X : StabilizerType::Z;
  if ((logical_x && logical_z) || basis != needed) {
    throw std::invalid_argument("readout basis " + to_string(basis) + " cannot reveal the " + to_string(target) +
                                " logical operator of " + code.name);
  }
  // Z-basis bits are flipped by X components and vice versa.
  uint64_t bits = bits_to_mask(final_bits);
  bits ^= basis == StabilizerType::Z ? frame.recovery.x_mask() : frame.recovery.z_mask();
  const Syndrome s = syndrome_of_bits(code, bits, basis);
  if (!s.trivial()) {
    if (table.type() != basis) throw std::invalid_argument("decoding table family does not match the readout");
    const PauliString* r = table.find_bits(s.bits);
    if (!r) throw std::logic_error("final syndrome " + s.str() + " missing from the lookup table");
    bits ^= r->x_mask() | r->z_mask();
  }
  return (std::popcount(bits & (logical_x | logical_z)) & 1) == 0;
}

Decoder::Decoder(CodeKind code, int distance) : code_(make_code(code, distance)) {
  if (code_.has_family(StabilizerType::X)) table_x_ = build_lookup_table(code_, StabilizerType::X);
  if (code_.has_family(StabilizerType::Z)) table_z_ = build_lookup_table(code_, StabilizerType::Z);
  if (code == CodeKind::color) {
    flag_x_ = flag_lookup_table(StabilizerType::X);
    flag_z_ = flag_lookup_table(StabilizerType::Z);
  }
}

const DecodeTable& Decoder::table(StabilizerType family) const {
  const auto& t = family == StabilizerType::X ? table_x_ : table_z_;
  if (!t) throw std::invalid_argument(code_.name + " has no " + to_string(family) + "-type checks");
  return *t;
}

const DecodeTable& Decoder::flag_table(StabilizerType family) const {
  if (code_.kind != CodeKind::color) throw std::invalid_argument("flag tables exist for the color code only");
  return family == StabilizerType::X ? flag_x_ : flag_z_;
}

Syndrome Decoder::relative(const std::array<int, 6>& ids, const std::vector<int8_t>& records, StabilizerType family,
                           const PauliFrame& frame) const {
  const int offset = family == StabilizerType::X ? 0 : 3;
  Syndrome s = syndrome_of(code_, frame.recovery, family);
  for (int i = 0; i < 3; ++i) {
    const int8_t v = records.at(ids[offset + i]);
    if (v == kRecordAbsent) throw std::runtime_error("flagged-round record missing from shot");
    if (v) s.bits ^= uint32_t{1} << i;
  }
  return s;
}

bool Decoder::flagged_nontrivial(const ProtocolLayout& layout, const std::vector<int8_t>& records, int round,
                                 const PauliFrame& frame) const {
  const auto& flag = layout.rounds.at(round).flag;
  if (!flag) throw std::invalid_argument("round " + std::to_string(round) + " has no flagged readout");
  const PauliFrame none = PauliFrame::identity(code_.n);
  for (StabilizerType family : {StabilizerType::X, StabilizerType::Z}) {
    if (!relative(flag->flagged, records, family, none).trivial()) return true;
    if (!relative(flag->flagged, records, family, frame).trivial()) return true;
  }
  return false;
}

PauliFrame Decoder::frame_after(const ProtocolLayout& layout, const std::vector<int8_t>& records, int rounds,
                                std::vector<RoundRecord>* trace) const {
  PauliFrame frame = PauliFrame::identity(code_.n);
  for (int r = 0; r < rounds; ++r) {
    const RoundLayout& round = layout.rounds.at(r);
    for (const auto& half : round.halves) {
      const auto bits = gather(half.aux_records, records);
      const SteaneHalf h = half.family == StabilizerType::Z ? SteaneHalf::detect_X : SteaneHalf::detect_Z;
      const Syndrome measured = steane_syndrome(bits, code_, h);
      const Syndrome delta = combine(measured, syndrome_of(code_, frame.recovery, half.family));
      const PauliString rec = decode_round(delta, table(half.family));
      frame = update_frame(frame, rec);
      if (trace) trace->push_back({r, h == SteaneHalf::detect_X ? RoundHalf::detect_X : RoundHalf::detect_Z, bits, delta, rec});
    }
    if (round.flag) {
      const auto& f = *round.flag;
      const bool present = f.has_unflagged() && records.at(f.unflagged[0]) != kRecordAbsent;
      PauliString total = PauliString::identity(code_.n);
      for (StabilizerType family : {StabilizerType::X, StabilizerType::Z}) {
        const Syndrome flagged = relative(f.flagged, records, family, frame);
        std::optional<Syndrome> unflagged;
        if (present) unflagged = relative(f.unflagged, records, family, frame);
        const PauliString rec = resolve_flag(flagged, unflagged, table(family), flag_table(family));
        total *= rec;
        if (trace) {
          const int off = family == StabilizerType::X ? 0 : 3;
          std::vector<int> raw;
          for (int i = 0; i < 3; ++i) raw.push_back(records.at(f.flagged[off + i]));
          trace->push_back({r, RoundHalf::flagged, raw, flagged, rec});
          if (unflagged) {
            std::vector<int> uraw;
            for (int i = 0; i < 3; ++i) uraw.push_back(records.at(f.unflagged[off + i]));
            trace->push_back({r, RoundHalf::unflagged, uraw, *unflagged, rec});
          }
        }
      }
      frame = update_frame(frame, total);
    }
  }
  return frame;
}

ShotVerdict Decoder::decode(const Circuit& circuit, const ShotOutcome& outcome, LogicalState target,
                            std::vector<RoundRecord>* trace) const {
  ShotVerdict v;
  if (outcome.discarded) {
    v.discarded = true;
    v.reason = outcome.reason;
    return v;
  }
  const auto& layout = circuit.layout();
  if (!layout) throw std::invalid_argument("circuit carries no protocol layout");
  // Emulated post-selection: the executed branch must match the flagged outcome.
  PauliFrame frame = PauliFrame::identity(code_.n);
  for (int r = 0; r < static_cast<int>(layout->rounds.size()); ++r) {
    const auto& flag = layout->rounds[r].flag;
    if (flag && flag->predicate < 0) {
      frame = frame_after(*layout, outcome.records, r);
      if (flagged_nontrivial(*layout, outcome.records, r, frame) != flag->has_unflagged()) {
        v.discarded = true;
        v.reason = DiscardReason::postselect_branch;
        return v;
      }
    }
  }
  frame = frame_after(*layout, outcome.records, static_cast<int>(layout->rounds.size()), trace);
  const auto bits = gather(layout->final_records, outcome.records);
  v.success = evaluate_logical(bits, layout->final_family, frame, code_, target, table(layout->final_family));
  return v;
}

PredicateEvaluator make_flag_feed_forward(const Decoder& decoder) {
  return [&decoder](const Circuit& circuit, int predicate, const std::vector<int8_t>& records) {
    const auto& layout = circuit.layout();
    if (!layout) return any_record_set(circuit, predicate, records);
    const int round = circuit.predicates().at(predicate).round;
    const PauliFrame frame = decoder.frame_after(*layout, records, round);
    return decoder.flagged_nontrivial(*layout, records, round, frame);
  };
}

RunOptions protocol_run_options(const Circuit& circuit, const Decoder& decoder) {
  RunOptions options;
  if (!circuit.predicates().empty()) options.evaluator = make_flag_feed_forward(decoder);
  return options;
}

namespace {

std::string describe(const Instruction& ins, size_t index, const PauliString& fault) {
  return "instruction " + std::to_string(index) + " (" + to_string(ins.kind) + ") fault " + fault.str();
}

}  // namespace

FaultCheckReport check_single_faults(const Circuit& circuit, const Decoder& decoder, LogicalState target) {
  FaultCheckReport report;
  const int n = circuit.num_qubits();
  const NoiseModel quiet = NoiseModel::noiseless();
  RunOptions options = protocol_run_options(circuit, decoder);
  const auto& ins = circuit.instructions();

  auto try_fault = [&](size_t index, const PauliString& fault) {
    options.faults = {{index, fault}};
    ++report.faults;
    const ShotOutcome out = run_shot(circuit, quiet, 0, report.faults, options);
    const ShotVerdict v = decoder.decode(circuit, out, target);
    if (v.discarded) {
      ++report.discarded;
    } else if (!v.success) {
      ++report.failures;
      if (report.failure_descriptions.size() < 32) report.failure_descriptions.push_back(describe(ins[index], index, fault));
    }
  };

  for (size_t i = 0; i < ins.size(); ++i) {
    const Instruction& in = ins[i];
    if (in.kind == OpKind::if_begin || in.kind == OpKind::if_end) continue;
    ++report.locations;
    if (in.kind == OpKind::cnot) {
      for (int k = 1; k < 16; ++k) {
        PauliString f(n);
        f.set(in.qubits[0], static_cast<Pauli>(k & 3));
        f.set(in.qubits[1], static_cast<Pauli>(k >> 2));
        try_fault(i, f);
      }
    } else if (in.kind == OpKind::mid_circuit) {
      for (uint64_t m = in.mask; m; m &= m - 1) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) try_fault(i, PauliString::on(n, p, {std::countr_zero(m)}));
      }
    } else {
      for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) try_fault(i, PauliString::on(n, p, {in.qubits[0]}));
    }
  }
  return report;
}

}  // namespace ftqec
