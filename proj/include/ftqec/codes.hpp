#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftqec/pauli.hpp"

namespace ftqec {

enum class CodeKind { bit_flip, phase_flip, color };

/// Which stabilizer family a syndrome reports. Z-type checks detect X errors.
enum class StabilizerType { X, Z };

std::string to_string(CodeKind kind);
std::string to_string(StabilizerType type);
CodeKind parse_code_kind(const std::string& text);

struct StabilizerCode {
  std::string name;
  CodeKind kind = CodeKind::color;
  int n = 0;
  int distance = 0;
  /// X-type generators first, then Z-type, each in the conventional index order.
  std::vector<PauliString> generators;
  PauliString logical_x;
  PauliString logical_z;

  /// Generators of one family, in syndrome-bit order.
  std::vector<PauliString> family(StabilizerType type) const;
  bool has_family(StabilizerType type) const { return !family(type).empty(); }
  int correctable_weight() const { return (distance - 1) / 2; }
};

/// Syndrome of one stabilizer family: bit i set means generator i reads -1.
struct Syndrome {
  StabilizerType type = StabilizerType::Z;
  int length = 0;
  uint32_t bits = 0;

  static Syndrome from_values(StabilizerType type, const std::vector<int>& values);
  /// Parses a sign string such as "+-+".
  static Syndrome parse(StabilizerType type, const std::string& signs);

  std::vector<int> values() const;
  bool trivial() const { return bits == 0; }
  /// Renders as a sign tuple, e.g. "+-+".
  std::string str() const;

  friend bool operator==(const Syndrome& a, const Syndrome& b) {
    return a.type == b.type && a.length == b.length && a.bits == b.bits;
  }
};

Syndrome combine(const Syndrome& a, const Syndrome& b);

enum class TableScope { standard, flag };

class DecodeTable {
 public:
  DecodeTable() = default;
  DecodeTable(StabilizerType type, int syndrome_length, int n, TableScope scope);

  StabilizerType type() const { return type_; }
  TableScope scope() const { return scope_; }
  int syndrome_length() const { return length_; }
  int num_qubits() const { return n_; }
  size_t size() const { return entries_.size(); }

  void insert(const Syndrome& s, const PauliString& recovery);
  std::optional<PauliString> lookup(const Syndrome& s) const;
  const PauliString* find_bits(uint32_t bits) const;
  const std::map<uint32_t, PauliString>& entries() const { return entries_; }

 private:
  StabilizerType type_ = StabilizerType::Z;
  TableScope scope_ = TableScope::standard;
  int length_ = 0;
  int n_ = 0;
  std::map<uint32_t, PauliString> entries_;
};

StabilizerCode make_bit_flip_code(int d);
StabilizerCode make_phase_flip_code(int d);
StabilizerCode make_color_code();
StabilizerCode make_code(CodeKind kind, int distance);

Syndrome syndrome_of(const StabilizerCode& code, const PauliString& error, StabilizerType family);
/// Syndrome of a classical bit string measured in the basis of `family`'s checks.
Syndrome syndrome_of_bits(const StabilizerCode& code, uint64_t bits, StabilizerType family);

/// Minimum-weight lookup decoder for one family, built by enumerating errors up
/// to the correctable weight; equal-weight ties go to the lexicographically
/// smallest qubit set.
DecodeTable build_lookup_table(const StabilizerCode& code, StabilizerType family);

/// The two weight-2 corrections used when flagged and unflagged color-code
/// readouts disagree.
DecodeTable flag_lookup_table(StabilizerType family = StabilizerType::Z);

/// Table rendered one row per line: "<signs> | <recovery>".
std::string render_table(const DecodeTable& table);

}  // namespace ftqec
