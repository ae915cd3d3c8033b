#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftqec {

/// Thrown when two operands disagree on qubit count.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// An n-qubit Pauli operator in symplectic form, tracked up to a sign.
///
/// Qubit i is stored in bit i of the x and z masks, so at most 64 qubits are
/// supported. A qubit carries Y when both of its bits are set. Imaginary
/// phases are dropped: every operator stored here is Hermitian and only the
/// +1/-1 sign of products is ever observed.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(int n);
  PauliString(int n, uint64_t x_mask, uint64_t z_mask, bool negative = false);

  static PauliString identity(int n) { return PauliString(n); }
  /// Pauli `p` on each listed 0-based qubit.
  static PauliString on(int n, Pauli p, std::initializer_list<int> qubits);
  static PauliString on(int n, Pauli p, const std::vector<int>& qubits);
  /// Pauli `p` on every qubit.
  static PauliString all(int n, Pauli p);
  /// Parses "X1 Z3 Y5" (1-indexed labels) or "I". A leading '-' negates.
  static PauliString parse(int n, std::string_view text);

  int num_qubits() const { return n_; }
  uint64_t x_mask() const { return x_; }
  uint64_t z_mask() const { return z_; }
  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }

  Pauli at(int q) const;
  void set(int q, Pauli p);

  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int weight() const;

  /// Product a*b with the sign of the Hermitian part; supports are XORed.
  PauliString operator*(const PauliString& other) const;
  PauliString& operator*=(const PauliString& other);

  bool commutes_with(const PauliString& other) const;

  /// Restriction to X-type or Z-type support.
  PauliString x_part() const { return PauliString(n_, x_, 0); }
  PauliString z_part() const { return PauliString(n_, 0, z_); }

  /// Same operator acting on qubits `offset .. offset + n - 1` of a larger register.
  PauliString embedded(int total_qubits, int offset) const;
  /// Operator restricted to qubits `offset .. offset + count - 1`, re-indexed from 0.
  PauliString slice(int offset, int count) const;

  /// Exchanges X and Z on every qubit.
  PauliString dual() const { return PauliString(n_, z_, x_, negative_); }

  /// Renders as "X1 Z3 Y5"; identity renders as "I"; a minus sign prefixes "-".
  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_ && a.negative_ == b.negative_;
  }
  /// Equality of supports, ignoring the sign.
  bool same_support(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

 private:
  void check_qubit(int q) const;

  int n_ = 0;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  bool negative_ = false;
};

PauliString compose(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);
int weight(const PauliString& a);

/// Mask with the low n bits set.
constexpr uint64_t low_mask(int n) { return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1); }

}  // namespace ftqec
