#pragma once

#include <cstdint>
#include <vector>

#include "ftqec/pauli.hpp"

namespace ftqec {

/// Stabilizer state on up to 64 qubits: n destabilizer rows followed by n
/// stabilizer rows, each a Pauli in x/z bit masks with a sign bit.
class Tableau {
 public:
  explicit Tableau(int n);

  int num_qubits() const { return n_; }

  void h(int q);
  void cx(int control, int target);
  void x(int q) { flip_signs(z_, q); }
  void z(int q) { flip_signs(x_, q); }
  void y(int q);
  /// Applies a Pauli given as masks (sign ignored).
  void apply_pauli(uint64_t x_mask, uint64_t z_mask);

  /// True when the Z_q outcome is fixed; then `value` receives it.
  bool is_deterministic_z(int q, int& value) const;
  /// Measures Z_q. `random_bit` supplies the outcome when it is not fixed.
  template <class Bit>
  int measure_z(int q, Bit&& random_bit) {
    int value;
    if (is_deterministic_z(q, value)) return value;
    const int outcome = random_bit() ? 1 : 0;
    collapse_z(q, outcome);
    return outcome;
  }
  /// Expectation sign of a Pauli if it is in the stabilizer group (up to sign):
  /// +1/-1, or 0 when its outcome would be random.
  int expectation(const PauliString& p) const;

  /// Stabilizer generators (rows n..2n-1) as Pauli strings.
  std::vector<PauliString> stabilizers() const;

 private:
  void flip_signs(const std::vector<uint64_t>& cols, int q);
  void collapse_z(int q, int outcome);
  // row h <- row i * row h
  void rowmult(int h, int i);

  int n_;
  std::vector<uint64_t> x_, z_;
  std::vector<uint8_t> r_;
};

}  // namespace ftqec
