#include "ftqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace ftqec {

std::string to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::bit_flip: return "bit_flip";
    case CodeKind::phase_flip: return "phase_flip";
    case CodeKind::color: return "color";
  }
  return "?";
}

std::string to_string(StabilizerType type) { return type == StabilizerType::X ? "X" : "Z"; }

CodeKind parse_code_kind(const std::string& text) {
  if (text == "bit_flip") return CodeKind::bit_flip;
  if (text == "phase_flip") return CodeKind::phase_flip;
  if (text == "color") return CodeKind::color;
  throw std::invalid_argument("unknown code '" + text + "' (expected bit_flip, phase_flip or color)");
}

namespace {

bool is_type(const PauliString& p, StabilizerType type) {
  return type == StabilizerType::X ? (p.z_mask() == 0 && p.x_mask() != 0)
                                   : (p.x_mask() == 0 && p.z_mask() != 0);
}

}  // namespace

std::vector<PauliString> StabilizerCode::family(StabilizerType type) const {
  std::vector<PauliString> out;
  for (const auto& g : generators) {
    if (is_type(g, type)) out.push_back(g);
  }
  return out;
}

Syndrome Syndrome::from_values(StabilizerType type, const std::vector<int>& values) {
  Syndrome s;
  s.type = type;
  s.length = static_cast<int>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == -1) {
      s.bits |= uint32_t{1} << i;
    } else if (values[i] != 1) {
      throw std::invalid_argument("syndrome entries must be +1 or -1");
    }
  }
  return s;
}

Syndrome Syndrome::parse(StabilizerType type, const std::string& signs) {
  std::vector<int> values;
  for (char c : signs) {
    if (c == '+') values.push_back(1);
    else if (c == '-') values.push_back(-1);
    else throw std::invalid_argument("bad syndrome string '" + signs + "'");
  }
  return from_values(type, values);
}

std::vector<int> Syndrome::values() const {
  std::vector<int> out(length);
  for (int i = 0; i < length; ++i) out[i] = ((bits >> i) & 1) ? -1 : 1;
  return out;
}

std::string Syndrome::str() const {
  std::string out;
  for (int i = 0; i < length; ++i) out += ((bits >> i) & 1) ? '-' : '+';
  return out;
}

Syndrome combine(const Syndrome& a, const Syndrome& b) {
  if (a.type != b.type || a.length != b.length) {
    throw DimensionError("cannot combine syndromes of different families");
  }
  Syndrome out = a;
  out.bits ^= b.bits;
  return out;
}

DecodeTable::DecodeTable(StabilizerType type, int syndrome_length, int n, TableScope scope)
    : type_(type), scope_(scope), length_(syndrome_length), n_(n) {}

void DecodeTable::insert(const Syndrome& s, const PauliString& recovery) {
  if (s.type != type_ || s.length != length_) throw DimensionError("syndrome does not match table");
  if (recovery.num_qubits() != n_) throw DimensionError("recovery does not match table width");
  entries_.emplace(s.bits, recovery);
}

std::optional<PauliString> DecodeTable::lookup(const Syndrome& s) const {
  if (s.type != type_ || s.length != length_) throw DimensionError("syndrome does not match table");
  if (const PauliString* p = find_bits(s.bits)) return *p;
  return std::nullopt;
}

const PauliString* DecodeTable::find_bits(uint32_t bits) const {
  auto it = entries_.find(bits);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

void require_odd_distance(int d) {
  if (d < 3 || d % 2 == 0) {
    throw std::invalid_argument("repetition code distance must be odd and >= 3, got " + std::to_string(d));
  }
}

void validate(const StabilizerCode& code) {
  for (size_t i = 0; i < code.generators.size(); ++i) {
    for (size_t j = i + 1; j < code.generators.size(); ++j) {
      if (!code.generators[i].commutes_with(code.generators[j])) {
        throw std::logic_error(code.name + ": generators do not commute");
      }
    }
    if (!code.generators[i].commutes_with(code.logical_x) ||
        !code.generators[i].commutes_with(code.logical_z)) {
      throw std::logic_error(code.name + ": logical operator fails to commute with a generator");
    }
  }
  if (code.logical_x.commutes_with(code.logical_z)) {
    throw std::logic_error(code.name + ": logical operators commute");
  }
}

}  // namespace

StabilizerCode make_bit_flip_code(int d) {
  require_odd_distance(d);
  StabilizerCode code;
  code.name = "bit_flip_d" + std::to_string(d);
  code.kind = CodeKind::bit_flip;
  code.n = d;
  code.distance = d;
  for (int i = 0; i + 1 < d; ++i) code.generators.push_back(PauliString::on(d, Pauli::Z, {i, i + 1}));
  code.logical_x = PauliString::all(d, Pauli::X);
  code.logical_z = PauliString::on(d, Pauli::Z, {0});
  validate(code);
  return code;
}

StabilizerCode make_phase_flip_code(int d) {
  require_odd_distance(d);
  StabilizerCode code;
  code.name = "phase_flip_d" + std::to_string(d);
  code.kind = CodeKind::phase_flip;
  code.n = d;
  code.distance = d;
  for (int i = 0; i + 1 < d; ++i) code.generators.push_back(PauliString::on(d, Pauli::X, {i, i + 1}));
  code.logical_x = PauliString::all(d, Pauli::Z);
  code.logical_z = PauliString::on(d, Pauli::X, {0});
  validate(code);
  return code;
}

StabilizerCode make_color_code() {
  StabilizerCode code;
  code.name = "color_7";
  code.kind = CodeKind::color;
  code.n = 7;
  code.distance = 3;
  const std::vector<std::vector<int>> supports = {{0, 2, 4, 6}, {3, 4, 5, 6}, {1, 2, 5, 6}};
  for (const auto& s : supports) code.generators.push_back(PauliString::on(7, Pauli::X, s));
  for (const auto& s : supports) code.generators.push_back(PauliString::on(7, Pauli::Z, s));
  code.logical_x = PauliString::all(7, Pauli::X);
  code.logical_z = PauliString::all(7, Pauli::Z);
  validate(code);
  return code;
}

StabilizerCode make_code(CodeKind kind, int distance) {
  switch (kind) {
    case CodeKind::bit_flip: return make_bit_flip_code(distance);
    case CodeKind::phase_flip: return make_phase_flip_code(distance);
    case CodeKind::color:
      if (distance != 3) throw std::invalid_argument("the color code has distance 3");
      return make_color_code();
  }
  throw std::invalid_argument("unknown code kind");
}

Syndrome syndrome_of(const StabilizerCode& code, const PauliString& error, StabilizerType family) {
  if (error.num_qubits() != code.n) {
    throw DimensionError("error acts on " + std::to_string(error.num_qubits()) + " qubits, code has " +
                         std::to_string(code.n));
  }
  const auto gens = code.family(family);
  Syndrome s;
  s.type = family;
  s.length = static_cast<int>(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].commutes_with(error)) s.bits |= uint32_t{1} << i;
  }
  return s;
}

Syndrome syndrome_of_bits(const StabilizerCode& code, uint64_t bits, StabilizerType family) {
  const auto gens = code.family(family);
  Syndrome s;
  s.type = family;
  s.length = static_cast<int>(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    const uint64_t support = gens[i].x_mask() | gens[i].z_mask();
    if (std::popcount(support & bits) & 1) s.bits |= uint32_t{1} << i;
  }
  return s;
}

DecodeTable build_lookup_table(const StabilizerCode& code, StabilizerType family) {
  if (code.distance % 2 == 0) throw std::invalid_argument("lookup tables need an odd distance");
  const auto gens = code.family(family);
  if (gens.empty()) {
    throw std::invalid_argument(code.name + " has no " + to_string(family) + "-type generators");
  }
  // Z-type checks are answered with X recoveries and vice versa.
  const Pauli recovery_pauli = family == StabilizerType::Z ? Pauli::X : Pauli::Z;
  DecodeTable table(family, static_cast<int>(gens.size()), code.n, TableScope::standard);
  table.insert(Syndrome{family, static_cast<int>(gens.size()), 0}, PauliString::identity(code.n));

  const int max_weight = code.correctable_weight();
  for (int w = 1; w <= max_weight; ++w) {
    // Lexicographic enumeration of w-subsets; the first hit for a syndrome wins.
    std::vector<int> pick(w);
    for (int i = 0; i < w; ++i) pick[i] = i;
    while (true) {
      const PauliString error = PauliString::on(code.n, recovery_pauli, pick);
      const Syndrome s = syndrome_of(code, error, family);
      if (!table.find_bits(s.bits)) table.insert(s, error);
      int i = w - 1;
      while (i >= 0 && pick[i] == code.n - w + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < w; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return table;
}

DecodeTable flag_lookup_table(StabilizerType family) {
  const Pauli p = family == StabilizerType::Z ? Pauli::X : Pauli::Z;
  DecodeTable table(family, 3, 7, TableScope::flag);
  table.insert(Syndrome::parse(family, "+-+"), PauliString::on(7, p, {2, 6}));
  table.insert(Syndrome::parse(family, "++-"), PauliString::on(7, p, {3, 5}));
  return table;
}

std::string render_table(const DecodeTable& table) {
  std::vector<std::pair<uint32_t, PauliString>> rows(table.entries().begin(), table.entries().end());
  // Rows ordered by recovery: identity first, then by weight and qubit labels.
  auto key = [](const PauliString& p) {
    std::vector<int> qubits;
    const uint64_t support = p.x_mask() | p.z_mask();
    for (int q = 0; q < p.num_qubits(); ++q) {
      if ((support >> q) & 1) qubits.push_back(q);
    }
    return std::make_pair(static_cast<int>(qubits.size()), qubits);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const auto& a, const auto& b) { return key(a.second) < key(b.second); });
  std::ostringstream out;
  for (const auto& [bits, recovery] : rows) {
    Syndrome s{table.type(), table.syndrome_length(), bits};
    out << s.str() << " | " << recovery.str() << '\n';
  }
  return out.str();
}

}  // namespace ftqec
