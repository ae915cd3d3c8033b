#include "ftqec/circuit.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ftqec {

namespace {

struct KindName {
  OpKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {OpKind::prepare_0, "PREPARE_0"}, {OpKind::reset, "RESET"},         {OpKind::hadamard, "H"},
    {OpKind::cnot, "CNOT"},           {OpKind::pauli_x, "X"},           {OpKind::pauli_y, "Y"},
    {OpKind::pauli_z, "Z"},           {OpKind::measure_z, "MEASURE_Z"}, {OpKind::measure_x, "MEASURE_X"},
    {OpKind::mid_circuit, "MID_CIRCUIT"}, {OpKind::if_begin, "IF"},     {OpKind::if_end, "END_IF"},
};

OpKind parse_kind(const std::string& name) {
  for (const auto& k : kKindNames) {
    if (name == k.name) return k.kind;
  }
  throw std::invalid_argument("unknown instruction '" + name + "'");
}

std::string format_duration(double us) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", us);
  return buf;
}

}  // namespace

std::string to_string(OpKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::string to_string(QubitRole role) {
  switch (role) {
    case QubitRole::data: return "data";
    case QubitRole::auxiliary: return "auxiliary";
    case QubitRole::flag: return "flag";
  }
  return "?";
}

std::string to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::none: return "none";
    case DiscardReason::encoding_verification: return "encoding_verification";
    case DiscardReason::ghz_flag: return "ghz_flag";
    case DiscardReason::postselect_branch: return "postselect_branch";
  }
  return "?";
}

DiscardReason parse_discard_reason(const std::string& text) {
  for (auto r : {DiscardReason::none, DiscardReason::encoding_verification, DiscardReason::ghz_flag,
                 DiscardReason::postselect_branch}) {
    if (to_string(r) == text) return r;
  }
  throw std::invalid_argument("unknown discard reason '" + text + "'");
}

namespace {

QubitRole parse_role(const std::string& text) {
  for (auto r : {QubitRole::data, QubitRole::auxiliary, QubitRole::flag}) {
    if (to_string(r) == text) return r;
  }
  throw std::invalid_argument("unknown qubit role '" + text + "'");
}

}  // namespace

bool is_single_qubit_gate(OpKind kind) {
  return kind == OpKind::hadamard || kind == OpKind::pauli_x || kind == OpKind::pauli_y || kind == OpKind::pauli_z;
}

bool is_gate(OpKind kind) { return kind == OpKind::cnot || is_single_qubit_gate(kind); }

bool is_measurement(OpKind kind) { return kind == OpKind::measure_z || kind == OpKind::measure_x; }

double default_duration(OpKind kind) {
  if (kind == OpKind::cnot) return kTwoQubitGateUs;
  if (is_single_qubit_gate(kind)) return kSingleQubitGateUs;
  return 0.0;
}

Circuit::Circuit(int n_qubits) {
  if (n_qubits < 1 || n_qubits > PauliString::kMaxQubits) {
    throw std::invalid_argument("circuit width must be 1..64, got " + std::to_string(n_qubits));
  }
  roles_.assign(n_qubits, QubitRole::data);
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits()) {
    throw std::out_of_range("qubit " + std::to_string(q) + " outside circuit of width " +
                            std::to_string(num_qubits()));
  }
}

void Circuit::set_role(int qubit, QubitRole role) {
  check_qubit(qubit);
  roles_[qubit] = role;
}

uint64_t Circuit::role_mask(QubitRole role) const {
  uint64_t m = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    if (roles_[q] == role) m |= uint64_t{1} << q;
  }
  return m;
}

void Circuit::push(const Instruction& ins) {
  for (int q : ins.qubits) {
    if (q >= 0) check_qubit(q);
  }
  if (ins.kind == OpKind::if_begin) ++open_blocks_;
  if (ins.kind == OpKind::if_end) {
    if (open_blocks_ == 0) throw std::logic_error("END_IF without matching IF");
    --open_blocks_;
  }
  instructions_.push_back(ins);
}

void Circuit::prepare(int q) { push({OpKind::prepare_0, {q, -1}, -1, 0, 0.0}); }
void Circuit::reset(int q) { push({OpKind::reset, {q, -1}, -1, 0, 0.0}); }
void Circuit::h(int q) { push({OpKind::hadamard, {q, -1}, -1, 0, kSingleQubitGateUs}); }
void Circuit::x(int q) { push({OpKind::pauli_x, {q, -1}, -1, 0, kSingleQubitGateUs}); }
void Circuit::y(int q) { push({OpKind::pauli_y, {q, -1}, -1, 0, kSingleQubitGateUs}); }
void Circuit::z(int q) { push({OpKind::pauli_z, {q, -1}, -1, 0, kSingleQubitGateUs}); }

void Circuit::cx(int control, int target) {
  if (control == target) throw std::invalid_argument("CNOT needs two distinct qubits");
  push({OpKind::cnot, {control, target}, -1, 0, kTwoQubitGateUs});
}

int Circuit::add_record(int q, std::string label, DiscardReason discard) {
  check_qubit(q);
  records_.push_back({q, std::move(label), discard});
  return static_cast<int>(records_.size()) - 1;
}

int Circuit::measure_z(int q, std::string label, DiscardReason discard) {
  const int r = add_record(q, std::move(label), discard);
  push({OpKind::measure_z, {q, -1}, r, 0, 0.0});
  return r;
}

int Circuit::measure_x(int q, std::string label, DiscardReason discard) {
  const int r = add_record(q, std::move(label), discard);
  push({OpKind::measure_x, {q, -1}, r, 0, 0.0});
  return r;
}

void Circuit::mid_circuit(uint64_t qubits) {
  if (qubits & ~low_mask(num_qubits())) throw std::out_of_range("mid-circuit mask exceeds circuit width");
  push({OpKind::mid_circuit, {-1, -1}, -1, qubits, 0.0});
}

int Circuit::add_predicate(Predicate p) {
  for (int r : p.records) {
    if (r < 0 || r >= static_cast<int>(records_.size())) {
      throw std::out_of_range("predicate '" + p.label + "' references unknown record " + std::to_string(r));
    }
  }
  predicates_.push_back(std::move(p));
  return static_cast<int>(predicates_.size()) - 1;
}

void Circuit::begin_if(int predicate) {
  if (predicate < 0 || predicate >= static_cast<int>(predicates_.size())) {
    throw std::out_of_range("unknown predicate " + std::to_string(predicate));
  }
  push({OpKind::if_begin, {-1, -1}, predicate, 0, 0.0});
}

void Circuit::end_if() { push({OpKind::if_end, {-1, -1}, -1, 0, 0.0}); }

int Circuit::append(const Circuit& other, const std::vector<int>& qubit_map) {
  if (static_cast<int>(qubit_map.size()) != other.num_qubits()) {
    throw std::invalid_argument("qubit map has " + std::to_string(qubit_map.size()) + " entries for a " +
                                std::to_string(other.num_qubits()) + "-qubit circuit");
  }
  const int record_offset = static_cast<int>(records_.size());
  const int predicate_offset = static_cast<int>(predicates_.size());
  for (const auto& r : other.records_) records_.push_back({qubit_map.at(r.qubit), r.label, r.discard_on_one});
  for (auto p : other.predicates_) {
    for (int& r : p.records) r += record_offset;
    predicates_.push_back(std::move(p));
  }
  for (Instruction ins : other.instructions_) {
    for (int& q : ins.qubits) {
      if (q >= 0) q = qubit_map.at(q);
    }
    if (ins.kind == OpKind::mid_circuit) {
      uint64_t mapped = 0;
      for (uint64_t m = ins.mask; m; m &= m - 1) mapped |= uint64_t{1} << qubit_map.at(std::countr_zero(m));
      ins.mask = mapped;
    }
    if (is_measurement(ins.kind)) ins.index += record_offset;
    if (ins.kind == OpKind::if_begin) ins.index += predicate_offset;
    push(ins);
  }
  return record_offset;
}

size_t Circuit::count(OpKind kind) const {
  size_t n = 0;
  for (const auto& ins : instructions_) n += ins.kind == kind;
  return n;
}

double Circuit::total_duration_us() const {
  double t = 0.0;
  for (const auto& ins : instructions_) t += ins.duration_us;
  return t;
}

void Circuit::validate(int qubit_budget) const {
  auto fail = [](size_t i, const std::string& what) {
    throw std::logic_error("instruction " + std::to_string(i) + ": " + what);
  };
  if (num_qubits() == 0) throw std::logic_error("circuit has no qubits");
  if (num_qubits() > qubit_budget) {
    throw std::logic_error("circuit uses " + std::to_string(num_qubits()) + " qubits, budget is " +
                           std::to_string(qubit_budget));
  }
  std::vector<int> written(records_.size(), -1);
  const uint64_t data = role_mask(QubitRole::data);
  int depth = 0;
  for (size_t i = 0; i < instructions_.size(); ++i) {
    const Instruction& ins = instructions_[i];
    for (int q : ins.qubits) {
      if (q >= num_qubits()) fail(i, "qubit out of range");
    }
    const int operands = ins.num_operands();
    switch (ins.kind) {
      case OpKind::cnot:
        if (operands != 2 || ins.qubits[0] < 0 || ins.qubits[0] == ins.qubits[1]) fail(i, "CNOT needs two distinct qubits");
        break;
      case OpKind::mid_circuit:
        if (operands != 0) fail(i, "MID_CIRCUIT takes no operands");
        if (ins.mask & ~data) fail(i, "mid-circuit channel must act on data qubits only");
        break;
      case OpKind::if_begin:
        if (ins.index < 0 || ins.index >= static_cast<int>(predicates_.size())) fail(i, "unknown predicate");
        for (int r : predicates_[ins.index].records) {
          if (r < 0 || r >= static_cast<int>(written.size()) || written[r] < 0) {
            fail(i, "predicate reads a record that is not measured earlier");
          }
        }
        ++depth;
        break;
      case OpKind::if_end:
        if (--depth < 0) fail(i, "END_IF without IF");
        break;
      default:
        if (operands != 1 || ins.qubits[0] < 0) fail(i, to_string(ins.kind) + " needs exactly one qubit");
        break;
    }
    if (is_measurement(ins.kind)) {
      if (ins.index < 0 || ins.index >= static_cast<int>(records_.size())) fail(i, "undeclared record");
      if (written[ins.index] >= 0) fail(i, "record " + std::to_string(ins.index) + " written twice");
      if (records_[ins.index].qubit != ins.qubits[0]) fail(i, "record declared on a different qubit");
      written[ins.index] = static_cast<int>(i);
    }
  }
  if (depth != 0) throw std::logic_error("unterminated conditional block");
  for (size_t r = 0; r < records_.size(); ++r) {
    if (written[r] < 0) throw std::logic_error("record " + std::to_string(r) + " is never written");
    if (records_[r].discard_on_one != DiscardReason::none && roles_[records_[r].qubit] != QubitRole::flag) {
      throw std::logic_error("verification record " + std::to_string(r) + " must be measured on a flag qubit");
    }
  }
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "QUBITS " << num_qubits() << '\n';
  for (int q = 0; q < num_qubits(); ++q) out << "ROLE " << q << ' ' << to_string(roles_[q]) << '\n';
  for (size_t r = 0; r < records_.size(); ++r) {
    out << "RECORD " << r << ' ' << records_[r].qubit << ' ' << to_string(records_[r].discard_on_one) << ' '
        << (records_[r].label.empty() ? "-" : records_[r].label) << '\n';
  }
  for (size_t p = 0; p < predicates_.size(); ++p) {
    out << "PREDICATE " << p << ' ' << predicates_[p].round << ' '
        << (predicates_[p].label.empty() ? "-" : predicates_[p].label);
    for (int r : predicates_[p].records) out << ' ' << r;
    out << '\n';
  }
  for (const auto& ins : instructions_) {
    out << to_string(ins.kind);
    for (int q : ins.qubits) {
      if (q >= 0) out << ' ' << q;
    }
    if (is_measurement(ins.kind) || ins.kind == OpKind::if_begin) out << " #" << ins.index;
    if (ins.kind == OpKind::mid_circuit) {
      for (uint64_t m = ins.mask; m; m &= m - 1) out << ' ' << std::countr_zero(m);
    }
    out << " @" << format_duration(ins.duration_us) << '\n';
  }
  return out.str();
}

Circuit Circuit::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == ';') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "QUBITS") {
      int n = 0;
      if (!(ls >> n)) fail("bad QUBITS line");
      c = Circuit(n);
    } else if (c.num_qubits() == 0) {
      fail("QUBITS must come first");
    } else if (head == "ROLE") {
      int q;
      std::string role;
      if (!(ls >> q >> role)) fail("bad ROLE line");
      c.set_role(q, parse_role(role));
    } else if (head == "RECORD") {
      int id, q;
      std::string discard, label;
      if (!(ls >> id >> q >> discard >> label) || id != static_cast<int>(c.records_.size())) fail("bad RECORD line");
      c.records_.push_back({q, label == "-" ? "" : label, parse_discard_reason(discard)});
    } else if (head == "PREDICATE") {
      int id;
      Predicate p;
      if (!(ls >> id >> p.round >> p.label) || id != static_cast<int>(c.predicates_.size())) fail("bad PREDICATE line");
      if (p.label == "-") p.label.clear();
      for (int r; ls >> r;) p.records.push_back(r);
      c.predicates_.push_back(std::move(p));
    } else {
      Instruction ins;
      ins.kind = parse_kind(head);
      int slot = 0;
      std::string tok;
      bool have_duration = false;
      while (ls >> tok) {
        if (tok[0] == '@') {
          ins.duration_us = std::stod(tok.substr(1));
          have_duration = true;
        } else if (tok[0] == '#') {
          ins.index = std::stoi(tok.substr(1));
        } else if (ins.kind == OpKind::mid_circuit) {
          ins.mask |= uint64_t{1} << std::stoi(tok);
        } else {
          if (slot >= 2) fail("too many operands");
          ins.qubits[slot++] = std::stoi(tok);
        }
      }
      if (!have_duration) fail("missing @duration");
      c.push(ins);
    }
  }
  if (c.num_qubits() == 0) throw std::invalid_argument("empty circuit text");
  return c;
}

}  // namespace ftqec
