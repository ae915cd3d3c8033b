#include "ftqec/builders.hpp"

#include <array>
#include <stdexcept>

namespace ftqec {

std::string to_string(LogicalState s) { return s == LogicalState::zero_L ? "zero_L" : "plus_L"; }

std::string to_string(SteaneHalf h) { return h == SteaneHalf::detect_X ? "detect_X" : "detect_Z"; }

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::steane_full: return "steane_full";
    case Protocol::steane_half: return "steane_half";
    case Protocol::flag_adaptive: return "flag_adaptive";
    case Protocol::flag_postselect: return "flag_postselect";
  }
  return "?";
}

LogicalState parse_logical_state(const std::string& text) {
  if (text == "zero_L") return LogicalState::zero_L;
  if (text == "plus_L") return LogicalState::plus_L;
  throw std::invalid_argument("unknown initial state '" + text + "' (expected zero_L or plus_L)");
}

Protocol parse_protocol(const std::string& text) {
  for (auto p : {Protocol::steane_full, Protocol::steane_half, Protocol::flag_adaptive, Protocol::flag_postselect}) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown protocol '" + text +
                              "' (expected steane_full, steane_half, flag_adaptive or flag_postselect)");
}

namespace {

// Color-code encoder, 0-based: Hadamards, then the eight CNOTs, then the
// weight-3 check read out by the verification flag.
constexpr std::array<int, 3> kEncodeHadamards = {0, 1, 3};
constexpr std::array<std::array<int, 2>, 8> kEncodeCnots = {
    {{0, 4}, {3, 4}, {1, 5}, {3, 5}, {0, 2}, {1, 2}, {4, 6}, {1, 6}}};
constexpr std::array<int, 3> kVerifyCheck = {2, 3, 6};

// Flagged readout. Per-ancilla data order (0-based), then the token sequence:
// 0..2 one data CNOT of that ancilla, 3/4 open the coupling of ancilla 0 with
// ancilla 1/2, 5/6 close it.
constexpr std::array<std::array<int, 4>, 3> kFlagOrder = {{{0, 2, 4, 6}, {5, 3, 4, 6}, {5, 1, 2, 6}}};
constexpr std::array<int, 16> kFlagSchedule = {0, 1, 2, 3, 4, 0, 1, 2, 0, 1, 2, 5, 6, 0, 1, 2};

// Emits instructions while tracking which qubits are still in a fresh |0>, so
// a preparation right after a reset is dropped.
class Emitter {
 public:
  explicit Emitter(Circuit& c) : c_(c), fresh_(c.num_qubits(), 0) {}

  Circuit& circuit() { return c_; }

  void prep(int q) {
    if (!fresh_[q]) c_.prepare(q);
    fresh_[q] = 1;
  }
  void reset(int q) {
    c_.reset(q);
    fresh_[q] = 1;
  }
  void h(int q) {
    c_.h(q);
    fresh_[q] = 0;
  }
  void cx(int a, int b) {
    c_.cx(a, b);
    fresh_[a] = fresh_[b] = 0;
  }
  int measure(int q, const std::string& label, DiscardReason discard = DiscardReason::none) {
    fresh_[q] = 0;
    return c_.measure_z(q, label, discard);
  }
  void mid(uint64_t data_mask) { c_.mid_circuit(data_mask); }

  void begin_if(int predicate) {
    saved_ = fresh_;
    c_.begin_if(predicate);
  }
  void end_if() {
    c_.end_if();
    for (size_t q = 0; q < fresh_.size(); ++q) fresh_[q] = fresh_[q] && saved_[q];
  }

 private:
  Circuit& c_;
  std::vector<char> fresh_;
  std::vector<char> saved_;
};

uint64_t mask_of(const std::vector<int>& qubits) {
  uint64_t m = 0;
  for (int q : qubits) m |= uint64_t{1} << q;
  return m;
}

std::vector<int> range(int start, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = start + i;
  return out;
}

void require_color(const StabilizerCode& code, const char* what) {
  if (code.kind != CodeKind::color) throw std::invalid_argument(std::string(what) + " needs the color code");
}

void emit_color_zero(Emitter& e, const std::vector<int>& q, int flag, const std::string& tag) {
  for (int i : q) e.prep(i);
  for (int i : kEncodeHadamards) e.h(q[i]);
  for (const auto& g : kEncodeCnots) e.cx(q[g[0]], q[g[1]]);
  if (flag >= 0) {
    e.prep(flag);
    for (int i : kVerifyCheck) e.cx(q[i], flag);
    e.measure(flag, tag + "verify", DiscardReason::encoding_verification);
    e.reset(flag);
  }
}

void emit_encode(Emitter& e, const StabilizerCode& code, LogicalState state, const std::vector<int>& data, int flag) {
  switch (code.kind) {
    case CodeKind::color:
      emit_color_zero(e, data, flag, "enc_");
      if (state == LogicalState::plus_L) {
        for (int q : data) e.h(q);
      }
      return;
    case CodeKind::bit_flip:
      for (int q : data) e.prep(q);
      return;
    case CodeKind::phase_flip:
      for (int q : data) e.prep(q);
      for (int q : data) e.h(q);
      return;
  }
}

void emit_ghz(Emitter& e, const std::vector<int>& aux, int flag, GhzBasis basis, const std::string& tag) {
  const int d = static_cast<int>(aux.size());
  for (int q : aux) e.prep(q);
  e.h(aux[0]);
  for (int i = 0; i + 1 < d; ++i) e.cx(aux[i], aux[i + 1]);
  if (flag >= 0) {
    e.prep(flag);
    e.cx(aux[1], flag);
    e.cx(aux[3], flag);
    e.measure(flag, tag + "ghz_flag", DiscardReason::ghz_flag);
    e.reset(flag);
  }
  if (basis == GhzBasis::zero_L_dual) {
    for (int q : aux) e.h(q);
  }
}

void check_ghz(int d, bool with_flag) {
  if (d != 3 && d != 5) throw std::invalid_argument("GHZ preparation supports d = 3 or 5, got " + std::to_string(d));
  if (d == 5 && !with_flag) {
    throw FaultToleranceError("a d=5 GHZ state without its verification flag is not fault tolerant");
  }
}

SteaneHalf natural_half(const StabilizerCode& code, SteaneHalf half) {
  if (code.kind == CodeKind::bit_flip && half != SteaneHalf::detect_X) {
    throw std::invalid_argument("the bit-flip code only supports the detect_X half-cycle");
  }
  if (code.kind == CodeKind::phase_flip && half != SteaneHalf::detect_Z) {
    throw std::invalid_argument("the phase-flip code only supports the detect_Z half-cycle");
  }
  return half;
}

SteaneHalfRecords emit_steane_half(Emitter& e, const StabilizerCode& code, SteaneHalf half,
                                   const std::vector<int>& data, const std::vector<int>& aux, int flag,
                                   const std::string& tag) {
  natural_half(code, half);
  const bool detect_x = half == SteaneHalf::detect_X;
  if (code.kind == CodeKind::color) {
    emit_color_zero(e, aux, flag, tag + "aux_");
    if (detect_x) {
      for (int q : aux) e.h(q);
    }
  } else {
    check_ghz(code.n, flag >= 0);
    emit_ghz(e, aux, flag, detect_x ? GhzBasis::plus_L : GhzBasis::zero_L_dual, tag);
  }
  for (int i = 0; i < code.n; ++i) {
    if (detect_x) e.cx(data[i], aux[i]);
    else e.cx(aux[i], data[i]);
  }
  if (!detect_x) {
    for (int q : aux) e.h(q);
  }
  SteaneHalfRecords rec;
  rec.family = detect_x ? StabilizerType::Z : StabilizerType::X;
  e.mid(mask_of(data));
  for (int i = 0; i < code.n; ++i) rec.aux_records.push_back(e.measure(aux[i], tag + "aux" + std::to_string(i)));
  for (int q : aux) e.reset(q);
  return rec;
}

// One part of the flagged readout. `x_first` selects which checks ancilla 0
// measures: X-type (part 1) or Z-type (part 2); ancillas 1 and 2 get the other type.
std::array<int, 3> emit_flag_part(Emitter& e, const std::vector<int>& data, const std::array<int, 3>& anc,
                                  bool x_first, const std::string& tag) {
  const std::array<bool, 3> is_x = {x_first, !x_first, !x_first};
  for (int a : anc) e.prep(a);
  for (int i = 0; i < 3; ++i) {
    if (is_x[i]) e.h(anc[i]);
  }
  auto couple = [&](int j) {
    if (is_x[0]) e.cx(anc[0], anc[j]);
    else e.cx(anc[j], anc[0]);
  };
  std::array<int, 3> pos = {0, 0, 0};
  for (int token : kFlagSchedule) {
    if (token < 3) {
      const int q = data[kFlagOrder[token][pos[token]++]];
      if (is_x[token]) e.cx(anc[token], q);
      else e.cx(q, anc[token]);
    } else {
      couple(token == 3 || token == 5 ? 1 : 2);
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (is_x[i]) e.h(anc[i]);
  }
  e.mid(mask_of(data));
  std::array<int, 3> rec{};
  for (int i = 0; i < 3; ++i) rec[i] = e.measure(anc[i], tag + "a" + std::to_string(i));
  for (int a : anc) e.reset(a);
  return rec;
}

// Plain single-ancilla measurement of one family of color-code checks.
std::array<int, 3> emit_unflagged_batch(Emitter& e, const StabilizerCode& code, const std::vector<int>& data,
                                        const std::array<int, 3>& anc, StabilizerType type, const std::string& tag) {
  const auto gens = code.family(type);
  const bool x = type == StabilizerType::X;
  for (int a : anc) e.prep(a);
  if (x) {
    for (int a : anc) e.h(a);
  }
  for (int i = 0; i < 3; ++i) {
    const uint64_t support = gens[i].x_mask() | gens[i].z_mask();
    for (int q = 0; q < code.n; ++q) {
      if (!((support >> q) & 1)) continue;
      if (x) e.cx(anc[i], data[q]);
      else e.cx(data[q], anc[i]);
    }
  }
  if (x) {
    for (int a : anc) e.h(a);
  }
  e.mid(mask_of(data));
  std::array<int, 3> rec{};
  for (int i = 0; i < 3; ++i) rec[i] = e.measure(anc[i], tag + to_string(type) + std::to_string(i));
  for (int a : anc) e.reset(a);
  return rec;
}

FlagRoundRecords emit_flag_round(Emitter& e, const StabilizerCode& code, const std::vector<int>& data,
                                 const std::array<int, 3>& anc, FlagMode mode, bool with_unflagged, int round,
                                 const std::string& tag) {
  require_color(code, "flag_cycle");
  FlagRoundRecords rec;
  const auto p1 = emit_flag_part(e, data, anc, true, tag + "f1_");
  const auto p2 = emit_flag_part(e, data, anc, false, tag + "f2_");
  // Generator order: S_X^1, S_X^2, S_X^3, S_Z^1, S_Z^2, S_Z^3.
  rec.flagged = {p1[0], p2[1], p2[2], p2[0], p1[1], p1[2]};
  const bool adaptive = mode == FlagMode::adaptive;
  if (adaptive) {
    Predicate p;
    p.label = tag + "flagged";
    p.round = round;
    p.records.assign(rec.flagged.begin(), rec.flagged.end());
    rec.predicate = e.circuit().add_predicate(std::move(p));
    e.begin_if(rec.predicate);
  }
  if (adaptive || with_unflagged) {
    const auto z = emit_unflagged_batch(e, code, data, anc, StabilizerType::Z, tag + "u_");
    const auto x = emit_unflagged_batch(e, code, data, anc, StabilizerType::X, tag + "u_");
    rec.unflagged = {x[0], x[1], x[2], z[0], z[1], z[2]};
  }
  if (adaptive) e.end_if();
  return rec;
}

std::vector<int> emit_readout(Emitter& e, const std::vector<int>& data, StabilizerType basis) {
  if (basis == StabilizerType::X) {
    for (int q : data) e.h(q);
  }
  std::vector<int> rec;
  for (size_t i = 0; i < data.size(); ++i) rec.push_back(e.measure(data[i], "final" + std::to_string(i)));
  return rec;
}

void set_roles(Circuit& c, const std::vector<int>& aux, int flag) {
  for (int q : aux) c.set_role(q, QubitRole::auxiliary);
  if (flag >= 0) c.set_role(flag, QubitRole::flag);
}

int steane_flag_qubit(const StabilizerCode& code) {
  if (code.kind == CodeKind::color) return 2 * code.n;
  return code.n >= 5 ? 2 * code.n : -1;
}

}  // namespace

Circuit encode_circuit(const StabilizerCode& code, LogicalState state, bool verify) {
  if (code.kind != CodeKind::color && verify) {
    throw std::invalid_argument("repetition-code data encoding is a product state and takes no verification");
  }
  if (code.kind != CodeKind::color && state == LogicalState::plus_L) {
    throw std::invalid_argument("repetition codes are only prepared in zero_L");
  }
  Circuit c(code.n + (verify ? 1 : 0));
  const int flag = verify ? code.n : -1;
  set_roles(c, {}, flag);
  Emitter e(c);
  emit_encode(e, code, state, range(0, code.n), flag);
  return c;
}

Circuit ghz_aux_prep(int d, GhzBasis basis, bool with_flag) {
  check_ghz(d, with_flag);
  Circuit c(d + (with_flag ? 1 : 0));
  const auto aux = range(0, d);
  const int flag = with_flag ? d : -1;
  set_roles(c, aux, flag);
  Emitter e(c);
  emit_ghz(e, aux, flag, basis, "");
  return c;
}

Circuit steane_half_cycle(const StabilizerCode& code, SteaneHalf half) {
  natural_half(code, half);
  const int flag = steane_flag_qubit(code);
  Circuit c(2 * code.n + (flag >= 0 ? 1 : 0));
  const auto data = range(0, code.n);
  const auto aux = range(code.n, code.n);
  set_roles(c, aux, flag);
  Emitter e(c);
  emit_steane_half(e, code, half, data, aux, flag, "");
  return c;
}

Circuit steane_full_cycle(const StabilizerCode& code) {
  if (code.kind != CodeKind::color) {
    throw std::invalid_argument("full Steane cycles are defined for the color code; repetition codes use one half");
  }
  const int flag = steane_flag_qubit(code);
  Circuit c(2 * code.n + 1);
  const auto data = range(0, code.n);
  const auto aux = range(code.n, code.n);
  set_roles(c, aux, flag);
  Emitter e(c);
  emit_steane_half(e, code, SteaneHalf::detect_X, data, aux, flag, "x_");
  emit_steane_half(e, code, SteaneHalf::detect_Z, data, aux, flag, "z_");
  return c;
}

Circuit flag_cycle(const StabilizerCode& code, FlagMode mode, bool with_unflagged) {
  require_color(code, "flag_cycle");
  Circuit c(10);
  const std::array<int, 3> anc = {7, 8, 9};
  set_roles(c, {7, 8, 9}, -1);
  Emitter e(c);
  emit_flag_round(e, code, range(0, 7), anc, mode, with_unflagged, 0, "");
  return c;
}

Circuit final_readout(const StabilizerCode& code, StabilizerType basis) {
  Circuit c(code.n);
  Emitter e(c);
  emit_readout(e, range(0, code.n), basis);
  return c;
}

StabilizerType final_basis(CodeKind code, LogicalState state) {
  if (code == CodeKind::phase_flip) return StabilizerType::X;
  if (code == CodeKind::bit_flip) return StabilizerType::Z;
  return state == LogicalState::zero_L ? StabilizerType::Z : StabilizerType::X;
}

void validate_plan(const ExperimentPlan& plan) {
  if (plan.rounds < 0) throw std::invalid_argument("round count must be non-negative");
  const bool color = plan.code == CodeKind::color;
  if (color && plan.distance != 3) throw std::invalid_argument("the color code has distance 3");
  if (!color) {
    if (plan.distance != 3 && plan.distance != 5) {
      throw std::invalid_argument("repetition-code experiments support d = 3 or 5");
    }
    if (plan.protocol != Protocol::steane_half) {
      throw std::invalid_argument("repetition codes run the steane_half protocol only (got " +
                                  to_string(plan.protocol) + ")");
    }
    if (plan.state != LogicalState::zero_L) {
      throw std::invalid_argument("repetition codes are only prepared in zero_L");
    }
  }
  if (plan.protocol == Protocol::flag_postselect) {
    if (static_cast<int>(plan.branches.size()) != plan.rounds) {
      throw std::invalid_argument("flag_postselect needs one branch choice per round");
    }
  } else if (!plan.branches.empty()) {
    throw std::invalid_argument("branch choices only apply to flag_postselect");
  }
}

Circuit compose_experiment(const ExperimentPlan& plan) {
  validate_plan(plan);
  const StabilizerCode code = make_code(plan.code, plan.distance);
  const bool flag_protocol = plan.protocol == Protocol::flag_adaptive || plan.protocol == Protocol::flag_postselect;
  const bool color = plan.code == CodeKind::color;
  const int n = code.n;
  const auto data = range(0, n);

  int width;
  std::vector<int> aux;
  int flag;
  if (flag_protocol) {
    aux = {n, n + 1, n + 2};
    flag = n + 3;
    width = n + 4;
  } else {
    aux = range(n, n);
    flag = steane_flag_qubit(code);
    width = 2 * n + (flag >= 0 ? 1 : 0);
  }
  if (width > kQubitBudget) {
    throw std::invalid_argument("experiment needs " + std::to_string(width) + " qubits; the register holds " +
                                std::to_string(kQubitBudget));
  }
  Circuit c(width);
  set_roles(c, aux, flag);
  Emitter e(c);

  ProtocolLayout layout;
  layout.code = plan.code;
  layout.distance = plan.distance;
  emit_encode(e, code, plan.state, data, code.kind == CodeKind::color ? flag : -1);

  for (int r = 0; r < plan.rounds; ++r) {
    const std::string tag = "r" + std::to_string(r + 1) + "_";
    RoundLayout round;
    switch (plan.protocol) {
      case Protocol::steane_full:
        round.halves.push_back(emit_steane_half(e, code, SteaneHalf::detect_X, data, aux, flag, tag + "x_"));
        round.halves.push_back(emit_steane_half(e, code, SteaneHalf::detect_Z, data, aux, flag, tag + "z_"));
        break;
      case Protocol::steane_half: {
        SteaneHalf half = SteaneHalf::detect_X;
        if (plan.code == CodeKind::phase_flip || (color && plan.state == LogicalState::plus_L)) half = SteaneHalf::detect_Z;
        round.halves.push_back(emit_steane_half(e, code, half, data, aux, flag, tag));
        break;
      }
      case Protocol::flag_adaptive:
      case Protocol::flag_postselect: {
        const std::array<int, 3> anc = {aux[0], aux[1], aux[2]};
        const bool adaptive = plan.protocol == Protocol::flag_adaptive;
        round.flag = emit_flag_round(e, code, data, anc, adaptive ? FlagMode::adaptive : FlagMode::emulate_postselect,
                                     adaptive ? false : static_cast<bool>(plan.branches[r]), r, tag);
        break;
      }
    }
    layout.rounds.push_back(std::move(round));
  }
  layout.final_family = final_basis(plan.code, plan.state);
  layout.final_records = emit_readout(e, data, layout.final_family);
  c.set_layout(std::move(layout));
  c.validate();
  return c;
}

}  // namespace ftqec
