#include <gtest/gtest.h>

#include <array>
#include <complex>
#include <random>

#include "ftqec/pauli.hpp"

using namespace ftqec;

namespace {

using Mat = std::vector<std::complex<double>>;

// Dense matrix of a Pauli string, qubit 0 is the least significant bit.
Mat dense(const PauliString& p) {
  const int n = p.num_qubits();
  const size_t dim = size_t{1} << n;
  Mat m(dim * dim, 0.0);
  for (size_t col = 0; col < dim; ++col) {
    std::complex<double> amp = 1.0;
    size_t row = col;
    for (int q = 0; q < n; ++q) {
      const int bit = (col >> q) & 1;
      switch (p.at(q)) {
        case Pauli::I: break;
        case Pauli::X: row ^= size_t{1} << q; break;
        case Pauli::Z: amp *= bit ? -1.0 : 1.0; break;
        case Pauli::Y:
          row ^= size_t{1} << q;
          amp *= bit ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
          break;
      }
    }
    m[row * dim + col] = amp;
  }
  return m;
}

Mat matmul(const Mat& a, const Mat& b, size_t dim) {
  Mat c(dim * dim, 0.0);
  for (size_t i = 0; i < dim; ++i)
    for (size_t k = 0; k < dim; ++k)
      for (size_t j = 0; j < dim; ++j) c[i * dim + j] += a[i * dim + k] * b[k * dim + j];
  return c;
}

PauliString random_pauli(int n, std::mt19937_64& rng) {
  const uint64_t m = low_mask(n);
  return PauliString(n, rng() & m, rng() & m, rng() & 1);
}

}  // namespace

TEST(Pauli, SelfInverse) {
  const auto x1 = PauliString::parse(7, "X1");
  EXPECT_TRUE((x1 * x1).is_identity());
  EXPECT_FALSE((x1 * x1).negative());
}

TEST(Pauli, LogicalTimesStabilizerGivesWeightThree) {
  const auto xl = PauliString::all(7, Pauli::X);
  const auto s1 = PauliString::parse(7, "X1 X3 X5 X7");
  EXPECT_EQ((xl * s1), PauliString::parse(7, "X2 X4 X6"));
}

TEST(Pauli, XTimesZIsYUpToSign) {
  const auto y = PauliString::parse(1, "X1") * PauliString::parse(1, "Z1");
  EXPECT_TRUE(y.same_support(PauliString::parse(1, "Y1")));
}

TEST(Pauli, CommutationExamples) {
  const auto x5 = PauliString::parse(7, "X5");
  EXPECT_FALSE(commutes(x5, PauliString::parse(7, "Z1 Z3 Z5 Z7")));
  EXPECT_TRUE(commutes(PauliString::identity(7), x5));
  EXPECT_TRUE(commutes(PauliString::parse(2, "X1 X2"), PauliString::parse(2, "Z1 Z2")));
}

TEST(Pauli, WeightExamples) {
  EXPECT_EQ(weight(PauliString::identity(7)), 0);
  EXPECT_EQ(weight(PauliString::parse(7, "X1 X4 X5")), 3);
  EXPECT_EQ(weight(PauliString::parse(7, "Y3")), 1);
}

TEST(Pauli, ParseAndRenderRoundTrip) {
  for (const char* s : {"I", "X1", "Y3 Z7", "-X1 Z2", "X2 X4 X6"}) {
    EXPECT_EQ(PauliString::parse(7, s).str(), s);
  }
  EXPECT_THROW(PauliString::parse(3, "X4"), std::invalid_argument);
  EXPECT_THROW(PauliString::parse(3, "Q1"), std::invalid_argument);
}

TEST(Pauli, DimensionMismatchRejected) {
  EXPECT_THROW(PauliString(3) * PauliString(4), DimensionError);
  EXPECT_THROW(commutes(PauliString(3), PauliString(4)), DimensionError);
}

TEST(PauliProperty, CommutesMatchesDenseCommutator) {
  // Exhaustive over all pairs for n = 2, sampled for n = 3.
  for (int n : {1, 2, 3}) {
    const size_t dim = size_t{1} << n;
    const uint64_t count = uint64_t{1} << (2 * n);
    for (uint64_t a = 0; a < count; ++a) {
      for (uint64_t b = 0; b < count; b += (n == 3 ? 7 : 1)) {
        const PauliString pa(n, a & low_mask(n), a >> n), pb(n, b & low_mask(n), b >> n);
        const Mat ab = matmul(dense(pa), dense(pb), dim), ba = matmul(dense(pb), dense(pa), dim);
        bool equal = true;
        for (size_t i = 0; i < ab.size(); ++i) equal &= std::abs(ab[i] - ba[i]) < 1e-12;
        EXPECT_EQ(commutes(pa, pb), equal) << pa.str() << " vs " << pb.str();
      }
    }
  }
}

TEST(PauliProperty, ProductMatchesDenseUpToPhase) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const size_t dim = size_t{1} << n;
    const auto a = random_pauli(n, rng), b = random_pauli(n, rng);
    const auto c = a * b;
    const Mat prod = matmul(dense(a), dense(b), dim), want = dense(c);
    // prod must be a unit-modulus multiple of dense(c).
    std::complex<double> ratio = 0.0;
    for (size_t i = 0; i < prod.size(); ++i) {
      if (std::abs(want[i]) > 0.5) {
        ratio = prod[i] / want[i];
        break;
      }
    }
    ASSERT_NEAR(std::abs(ratio), 1.0, 1e-12);
    for (size_t i = 0; i < prod.size(); ++i) EXPECT_LT(std::abs(prod[i] - ratio * want[i]), 1e-12);
  }
}

TEST(PauliProperty, AssociativeWithNeutralIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 16;
    const auto a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
    EXPECT_TRUE(((a * b) * c).same_support(a * (b * c)));
    EXPECT_EQ(a * PauliString::identity(n), a);
    EXPECT_EQ(PauliString::identity(n) * a, a);
    EXPECT_LE(weight(a * b), weight(a) + weight(b));
    EXPECT_EQ(commutes(a, b), commutes(b, a));
  }
}

TEST(PauliProperty, DualSwapsTypes) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_pauli(7, rng);
    EXPECT_EQ(a.dual().x_mask(), a.z_mask());
    EXPECT_EQ(a.dual().dual(), a);
  }
}
