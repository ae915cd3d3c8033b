#include <gtest/gtest.h>

#include <random>

#include "ftqec/tableau.hpp"

using namespace ftqec;

namespace {

auto zero_bit = [] { return false; };

}  // namespace

TEST(Tableau, StartsInAllZero) {
  Tableau t(4);
  for (int q = 0; q < 4; ++q) {
    int v = -1;
    EXPECT_TRUE(t.is_deterministic_z(q, v));
    EXPECT_EQ(v, 0);
    EXPECT_EQ(t.expectation(PauliString::on(4, Pauli::Z, {q})), 1);
    EXPECT_EQ(t.expectation(PauliString::on(4, Pauli::X, {q})), 0);
  }
}

TEST(Tableau, BellStateStabilizers) {
  Tableau t(2);
  t.h(0);
  t.cx(0, 1);
  EXPECT_EQ(t.expectation(PauliString::parse(2, "X1 X2")), 1);
  EXPECT_EQ(t.expectation(PauliString::parse(2, "Z1 Z2")), 1);
  EXPECT_EQ(t.expectation(PauliString::parse(2, "Y1 Y2")), -1);
  EXPECT_EQ(t.expectation(PauliString::parse(2, "Z1")), 0);
  t.z(0);
  EXPECT_EQ(t.expectation(PauliString::parse(2, "X1 X2")), -1);
}

TEST(Tableau, MeasurementCollapses) {
  Tableau t(2);
  t.h(0);
  t.cx(0, 1);
  const int first = t.measure_z(0, [] { return true; });
  EXPECT_EQ(first, 1);
  int v = -1;
  ASSERT_TRUE(t.is_deterministic_z(1, v));
  EXPECT_EQ(v, 1);
  EXPECT_EQ(t.measure_z(0, zero_bit), 1);
}

TEST(Tableau, PauliFlipsAnticommutingStabilizers) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Tableau t(5);
    for (int g = 0; g < 30; ++g) {
      const int a = static_cast<int>(rng() % 5), b = static_cast<int>((a + 1 + rng() % 4) % 5);
      if (rng() & 1) t.h(a);
      else t.cx(a, b);
    }
    const auto stabs = t.stabilizers();
    const PauliString fault(5, rng() & 31, rng() & 31);
    t.apply_pauli(fault.x_mask(), fault.z_mask());
    for (const auto& s : stabs) EXPECT_EQ(t.expectation(s), commutes(s, fault) ? 1 : -1);
  }
}

TEST(Tableau, StabilizersCommuteAndAreIndependent) {
  std::mt19937_64 rng(8);
  Tableau t(6);
  for (int g = 0; g < 60; ++g) {
    const int a = static_cast<int>(rng() % 6), b = static_cast<int>((a + 1 + rng() % 5) % 6);
    switch (rng() % 4) {
      case 0: t.h(a); break;
      case 1: t.cx(a, b); break;
      case 2: t.y(a); break;
      default: t.measure_z(a, [&] { return (rng() & 1) != 0; });
    }
  }
  const auto stabs = t.stabilizers();
  ASSERT_EQ(stabs.size(), 6u);
  for (const auto& a : stabs) {
    for (const auto& b : stabs) EXPECT_TRUE(commutes(a, b));
    EXPECT_EQ(t.expectation(a), 1);
    PauliString flipped(a.num_qubits(), a.x_mask(), a.z_mask(), !a.negative());
    EXPECT_EQ(t.expectation(flipped), -1);
  }
}
