#include "ftqec/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace ftqec {

namespace {

// Exponent of i picked up by multiplying Pauli (x1, z1) into (x2, z2), mod 4.
int mult_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
  const uint64_t y1 = x1 & z1;
  const uint64_t xo1 = x1 & ~z1;
  const uint64_t zo1 = ~x1 & z1;
  const uint64_t plus = (y1 & z2 & ~x2) | (xo1 & z2 & x2) | (zo1 & x2 & ~z2);
  const uint64_t minus = (y1 & x2 & ~z2) | (xo1 & z2 & ~x2) | (zo1 & x2 & z2);
  return (std::popcount(plus) - std::popcount(minus)) & 3;
}

}  // namespace

Tableau::Tableau(int n) : n_(n), x_(2 * n, 0), z_(2 * n, 0), r_(2 * n, 0) {
  if (n < 1 || n > 64) throw std::invalid_argument("tableau supports 1..64 qubits");
  for (int i = 0; i < n; ++i) {
    x_[i] = uint64_t{1} << i;
    z_[n + i] = uint64_t{1} << i;
  }
}

void Tableau::h(int q) {
  const uint64_t m = uint64_t{1} << q;
  for (int i = 0; i < 2 * n_; ++i) {
    const uint64_t xi = x_[i] & m, zi = z_[i] & m;
    r_[i] ^= (xi && zi);
    x_[i] = (x_[i] & ~m) | zi;
    z_[i] = (z_[i] & ~m) | xi;
  }
}

void Tableau::cx(int control, int target) {
  const int c = control, t = target;
  for (int i = 0; i < 2 * n_; ++i) {
    const int xc = (x_[i] >> c) & 1, zc = (z_[i] >> c) & 1;
    const int xt = (x_[i] >> t) & 1, zt = (z_[i] >> t) & 1;
    r_[i] ^= xc & zt & (xt ^ zc ^ 1);
    x_[i] ^= static_cast<uint64_t>(xc) << t;
    z_[i] ^= static_cast<uint64_t>(zt) << c;
  }
}

void Tableau::flip_signs(const std::vector<uint64_t>& cols, int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= (cols[i] >> q) & 1;
}

void Tableau::y(int q) {
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= ((x_[i] ^ z_[i]) >> q) & 1;
}

void Tableau::apply_pauli(uint64_t x_mask, uint64_t z_mask) {
  // A row picks up -1 when it anticommutes with the applied Pauli.
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= std::popcount((x_[i] & z_mask) ^ (z_[i] & x_mask)) & 1;
}

void Tableau::rowmult(int h, int i) {
  const int phase = (2 * r_[h] + 2 * r_[i] + mult_phase(x_[i], z_[i], x_[h], z_[h])) & 3;
  r_[h] = phase >= 2;
  x_[h] ^= x_[i];
  z_[h] ^= z_[i];
}

bool Tableau::is_deterministic_z(int q, int& value) const {
  const uint64_t m = uint64_t{1} << q;
  for (int p = n_; p < 2 * n_; ++p) {
    if (x_[p] & m) return false;
  }
  // Z_q is the product of the stabilizers whose destabilizer partners have X on q.
  uint64_t sx = 0, sz = 0;
  int sr = 0;
  for (int i = 0; i < n_; ++i) {
    if (!(x_[i] & m)) continue;
    const int k = n_ + i;
    sr = (sr + 2 * r_[k] + mult_phase(x_[k], z_[k], sx, sz)) & 3;
    sx ^= x_[k];
    sz ^= z_[k];
  }
  value = sr >= 2;
  return true;
}

void Tableau::collapse_z(int q, int outcome) {
  const uint64_t m = uint64_t{1} << q;
  int p = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (x_[i] & m) {
      p = i;
      break;
    }
  }
  for (int i = 0; i < 2 * n_; ++i) {
    if (i != p && (x_[i] & m)) rowmult(i, p);
  }
  x_[p - n_] = x_[p];
  z_[p - n_] = z_[p];
  r_[p - n_] = r_[p];
  x_[p] = 0;
  z_[p] = m;
  r_[p] = static_cast<uint8_t>(outcome);
}

int Tableau::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width does not match tableau");
  const uint64_t px = p.x_mask(), pz = p.z_mask();
  for (int k = n_; k < 2 * n_; ++k) {
    if (std::popcount((x_[k] & pz) ^ (z_[k] & px)) & 1) return 0;
  }
  // p commutes with every stabilizer, so it is +-(product of stabilizers whose
  // destabilizer partner anticommutes with p).
  uint64_t sx = 0, sz = 0;
  int sr = 0;
  for (int i = 0; i < n_; ++i) {
    if (!(std::popcount((x_[i] & pz) ^ (z_[i] & px)) & 1)) continue;
    const int k = n_ + i;
    sr = (sr + 2 * r_[k] + mult_phase(x_[k], z_[k], sx, sz)) & 3;
    sx ^= x_[k];
    sz ^= z_[k];
  }
  const int sign = ((sr >= 2) ? -1 : 1) * (p.negative() ? -1 : 1);
  return sign;
}

std::vector<PauliString> Tableau::stabilizers() const {
  std::vector<PauliString> out;
  for (int k = n_; k < 2 * n_; ++k) out.emplace_back(n_, x_[k], z_[k], r_[k] != 0);
  return out;
}

}  // namespace ftqec
