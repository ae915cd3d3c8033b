#include "ftqec/pauli.hpp"

#include <bit>
#include <cctype>
#include <sstream>

namespace ftqec {

namespace {

// Exponent k (mod 4) in P1 * P2 = i^k * P3, summed over all qubits.
int product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
  const uint64_t y1 = x1 & z1;
  const uint64_t xo1 = x1 & ~z1;
  const uint64_t zo1 = ~x1 & z1;
  const uint64_t plus = (y1 & z2 & ~x2) | (xo1 & z2 & x2) | (zo1 & x2 & ~z2);
  const uint64_t minus = (y1 & x2 & ~z2) | (xo1 & z2 & ~x2) | (zo1 & x2 & z2);
  return (std::popcount(plus) - std::popcount(minus)) & 3;
}

}  // namespace

PauliString::PauliString(int n) : n_(n) {
  if (n < 0 || n > kMaxQubits) {
    throw DimensionError("PauliString supports 0.." + std::to_string(kMaxQubits) + " qubits, got " +
                         std::to_string(n));
  }
}

PauliString::PauliString(int n, uint64_t x_mask, uint64_t z_mask, bool negative) : PauliString(n) {
  if ((x_mask | z_mask) & ~low_mask(n)) {
    throw DimensionError("Pauli support exceeds qubit count " + std::to_string(n));
  }
  x_ = x_mask;
  z_ = z_mask;
  negative_ = negative;
}

PauliString PauliString::on(int n, Pauli p, std::initializer_list<int> qubits) {
  return on(n, p, std::vector<int>(qubits));
}

PauliString PauliString::on(int n, Pauli p, const std::vector<int>& qubits) {
  PauliString out(n);
  for (int q : qubits) out.set(q, p);
  return out;
}

PauliString PauliString::all(int n, Pauli p) {
  PauliString out(n);
  for (int q = 0; q < n; ++q) out.set(q, p);
  return out;
}

PauliString PauliString::parse(int n, std::string_view text) {
  PauliString out(n);
  size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    out.negative_ = text[i] == '-';
    ++i;
  }
  skip_space();
  if (text.substr(i) == "I") return out;
  while (i < text.size()) {
    skip_space();
    if (i >= text.size()) break;
    Pauli p;
    switch (text[i]) {
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw std::invalid_argument("bad Pauli token in '" + std::string(text) + "'");
    }
    ++i;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw std::invalid_argument("missing qubit label in '" + std::string(text) + "'");
    int label = std::stoi(std::string(text.substr(start, i - start)));
    if (out.at(label - 1) != Pauli::I) {
      throw std::invalid_argument("qubit listed twice in '" + std::string(text) + "'");
    }
    out.set(label - 1, p);
  }
  return out;
}

void PauliString::check_qubit(int q) const {
  if (q < 0 || q >= n_) {
    throw DimensionError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                         "-qubit Pauli");
  }
}

Pauli PauliString::at(int q) const {
  check_qubit(q);
  return static_cast<Pauli>(((x_ >> q) & 1) | (((z_ >> q) & 1) << 1));
}

void PauliString::set(int q, Pauli p) {
  check_qubit(q);
  const uint64_t bit = uint64_t{1} << q;
  const auto v = static_cast<uint8_t>(p);
  x_ = (v & 1) ? (x_ | bit) : (x_ & ~bit);
  z_ = (v & 2) ? (z_ | bit) : (z_ & ~bit);
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

PauliString PauliString::operator*(const PauliString& other) const {
  PauliString out = *this;
  out *= other;
  return out;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (n_ != other.n_) {
    throw DimensionError("cannot compose " + std::to_string(n_) + "-qubit and " +
                         std::to_string(other.n_) + "-qubit Paulis");
  }
  // Odd exponents (anticommuting factors) are folded onto the nearest sign.
  const int k = (product_phase(x_, z_, other.x_, other.z_) + 2 * negative_ + 2 * other.negative_) & 3;
  x_ ^= other.x_;
  z_ ^= other.z_;
  negative_ = k >= 2;
  return *this;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_) {
    throw DimensionError("cannot compare " + std::to_string(n_) + "-qubit and " +
                         std::to_string(other.n_) + "-qubit Paulis");
  }
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

PauliString PauliString::embedded(int total_qubits, int offset) const {
  if (offset < 0 || offset + n_ > total_qubits) {
    throw DimensionError("embedding does not fit in register");
  }
  return PauliString(total_qubits, x_ << offset, z_ << offset, negative_);
}

PauliString PauliString::slice(int offset, int count) const {
  if (offset < 0 || count < 0 || offset + count > n_) {
    throw DimensionError("slice out of range");
  }
  const uint64_t m = low_mask(count);
  return PauliString(count, (x_ >> offset) & m, (z_ >> offset) & m, negative_);
}

std::string PauliString::str() const {
  std::ostringstream out;
  if (negative_) out << '-';
  if (is_identity()) {
    out << 'I';
    return out.str();
  }
  bool first = true;
  for (int q = 0; q < n_; ++q) {
    const Pauli p = at(q);
    if (p == Pauli::I) continue;
    if (!first) out << ' ';
    first = false;
    out << (p == Pauli::X ? 'X' : p == Pauli::Y ? 'Y' : 'Z') << (q + 1);
  }
  return out.str();
}

PauliString compose(const PauliString& a, const PauliString& b) { return a * b; }
bool commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }
int weight(const PauliString& a) { return a.weight(); }

}  // namespace ftqec
