#include <gtest/gtest.h>

#include <bit>
#include <map>

#include "ftqec/codes.hpp"

using namespace ftqec;

namespace {

// Syndrome bit i is the parity of the error's X support on Z check i.
uint32_t brute_syndrome(const std::vector<std::vector<int>>& checks, uint64_t x_support) {
  uint32_t s = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    int parity = 0;
    for (int q : checks[i]) parity ^= (x_support >> q) & 1;
    s |= static_cast<uint32_t>(parity) << i;
  }
  return s;
}

const std::vector<std::vector<int>> kColorChecks = {{0, 2, 4, 6}, {3, 4, 5, 6}, {1, 2, 5, 6}};

}  // namespace

TEST(Codes, RepetitionGenerators) {
  const auto b3 = make_bit_flip_code(3);
  ASSERT_EQ(b3.generators.size(), 2u);
  EXPECT_EQ(b3.generators[0], PauliString::parse(3, "Z1 Z2"));
  EXPECT_EQ(b3.generators[1], PauliString::parse(3, "Z2 Z3"));
  EXPECT_EQ(b3.logical_z, PauliString::parse(3, "Z1"));
  EXPECT_EQ(b3.logical_x, PauliString::all(3, Pauli::X));
  const auto b5 = make_bit_flip_code(5);
  ASSERT_EQ(b5.generators.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(b5.generators[i], PauliString::on(5, Pauli::Z, {i, i + 1}));

  const auto p3 = make_phase_flip_code(3);
  EXPECT_EQ(p3.generators[0], PauliString::parse(3, "X1 X2"));
  EXPECT_EQ(p3.generators[1], PauliString::parse(3, "X2 X3"));
  EXPECT_EQ(make_phase_flip_code(5).logical_x, PauliString::all(5, Pauli::Z));
  EXPECT_EQ(make_phase_flip_code(5).logical_z, PauliString::parse(5, "X1"));
  for (int d : {3, 5}) {
    const auto b = make_bit_flip_code(d), p = make_phase_flip_code(d);
    for (size_t i = 0; i < b.generators.size(); ++i) EXPECT_EQ(b.generators[i].dual(), p.generators[i]);
  }
  EXPECT_THROW(make_bit_flip_code(4), std::invalid_argument);
}

TEST(Codes, ColorCodeStructure) {
  const auto c = make_color_code();
  ASSERT_EQ(c.generators.size(), 6u);
  EXPECT_EQ(c.generators[0], PauliString::parse(7, "X1 X3 X5 X7"));
  EXPECT_EQ(c.generators[1], PauliString::parse(7, "X4 X5 X6 X7"));
  EXPECT_EQ(c.generators[2], PauliString::parse(7, "X2 X3 X6 X7"));
  EXPECT_EQ(c.generators[4], PauliString::parse(7, "Z4 Z5 Z6 Z7"));
  for (const auto& a : c.generators) {
    for (const auto& b : c.generators) EXPECT_TRUE(commutes(a, b));
    EXPECT_TRUE(commutes(a, c.logical_x));
    EXPECT_TRUE(commutes(a, c.logical_z));
  }
  EXPECT_FALSE(commutes(c.logical_x, c.logical_z));
  EXPECT_EQ(c.logical_x * c.generators[0], PauliString::parse(7, "X2 X4 X6"));
}

TEST(Codes, SyndromeExamples) {
  const auto c = make_color_code();
  EXPECT_EQ(syndrome_of(c, PauliString::parse(7, "X5"), StabilizerType::Z).str(), "--+");
  EXPECT_EQ(syndrome_of(c, PauliString::parse(7, "X1 X4"), StabilizerType::Z).str(), "--+");
  EXPECT_TRUE(syndrome_of(c, PauliString::identity(7), StabilizerType::Z).trivial());
  EXPECT_TRUE(syndrome_of(c, PauliString::identity(7), StabilizerType::X).trivial());
  EXPECT_EQ(syndrome_of(c, PauliString::parse(7, "Z5"), StabilizerType::X).str(), "--+");
}

TEST(Codes, SyndromeMatchesBruteForce) {
  const auto c = make_color_code();
  for (uint64_t e = 0; e < 128; ++e) {
    const PauliString err(7, e, 0);
    EXPECT_EQ(syndrome_of(c, err, StabilizerType::Z).bits, brute_syndrome(kColorChecks, e));
    EXPECT_EQ(syndrome_of_bits(c, e, StabilizerType::Z).bits, brute_syndrome(kColorChecks, e));
  }
}

TEST(Codes, SyndromeIsHomomorphism) {
  for (CodeKind k : {CodeKind::bit_flip, CodeKind::phase_flip, CodeKind::color}) {
    for (int d : {3, 5}) {
      if (k == CodeKind::color && d == 5) continue;
      const auto code = make_code(k, d);
      const uint64_t m = low_mask(code.n);
      for (uint64_t a = 1; a < 40; ++a) {
        const PauliString e1(code.n, (a * 37) & m, (a * 11) & m), e2(code.n, (a * 5) & m, (a * 91) & m);
        for (StabilizerType f : {StabilizerType::X, StabilizerType::Z}) {
          if (!code.has_family(f)) continue;
          EXPECT_EQ(syndrome_of(code, e1 * e2, f),
                    combine(syndrome_of(code, e1, f), syndrome_of(code, e2, f)));
        }
      }
    }
  }
}

TEST(Codes, ColorLookupTableGolden) {
  // Rows as printed in the reference table: signs of S_Z^(1..3) -> X recovery.
  const std::vector<std::pair<std::string, std::string>> golden = {
      {"+++", "I"}, {"-++", "X1"}, {"++-", "X2"}, {"-+-", "X3"},
      {"+-+", "X4"}, {"--+", "X5"}, {"+--", "X6"}, {"---", "X7"}};
  const auto c = make_color_code();
  const auto tz = build_lookup_table(c, StabilizerType::Z);
  const auto tx = build_lookup_table(c, StabilizerType::X);
  ASSERT_EQ(tz.size(), 8u);
  ASSERT_EQ(tx.size(), 8u);
  std::string rendered;
  for (const auto& [signs, rec] : golden) {
    EXPECT_EQ(tz.lookup(Syndrome::parse(StabilizerType::Z, signs))->str(), rec);
    EXPECT_EQ(*tx.lookup(Syndrome::parse(StabilizerType::X, signs)), PauliString::parse(7, rec).dual());
    rendered += signs + " | " + rec + "\n";
  }
  EXPECT_EQ(render_table(tz), rendered);
}

TEST(Codes, FlagTableGolden) {
  const auto t = flag_lookup_table(StabilizerType::Z);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.lookup(Syndrome::parse(StabilizerType::Z, "+-+"))->str(), "X3 X7");
  EXPECT_EQ(t.lookup(Syndrome::parse(StabilizerType::Z, "++-"))->str(), "X4 X6");
  EXPECT_FALSE(t.lookup(Syndrome::parse(StabilizerType::Z, "-++")).has_value());
  EXPECT_FALSE(t.lookup(Syndrome::parse(StabilizerType::Z, "+++")).has_value());
  const auto tx = flag_lookup_table(StabilizerType::X);
  EXPECT_EQ(tx.lookup(Syndrome::parse(StabilizerType::X, "+-+"))->str(), "Z3 Z7");
  EXPECT_EQ(render_table(t), "+-+ | X3 X7\n++- | X4 X6\n");
  // Each flag recovery reproduces its own syndrome.
  const auto c = make_color_code();
  for (const auto& [bits, rec] : t.entries()) EXPECT_EQ(syndrome_of(c, rec, StabilizerType::Z).bits, bits);
}

TEST(Codes, BitFlipFiveTableMatchesExhaustiveMinimumWeight) {
  const auto code = make_bit_flip_code(5);
  const auto table = build_lookup_table(code, StabilizerType::Z);
  std::vector<std::vector<int>> checks = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  // Minimum weight representative of each syndrome, ties to the smaller mask.
  std::map<uint32_t, uint64_t> best;
  for (uint64_t e = 0; e < 32; ++e) {
    const uint32_t s = brute_syndrome(checks, e);
    auto it = best.find(s);
    if (it == best.end() || std::popcount(e) < std::popcount(it->second)) best[s] = e;
  }
  ASSERT_EQ(best.size(), 16u);
  EXPECT_EQ(table.size(), 16u);
  for (const auto& [s, e] : best) {
    const PauliString* rec = table.find_bits(s);
    ASSERT_NE(rec, nullptr);
    EXPECT_EQ(std::popcount(rec->x_mask()), std::popcount(e));
    EXPECT_LE(rec->weight(), 2);
    EXPECT_EQ(syndrome_of(code, *rec, StabilizerType::Z).bits, s);
  }
}

TEST(Codes, CorrectableErrorsAreRestored) {
  for (CodeKind k : {CodeKind::bit_flip, CodeKind::phase_flip, CodeKind::color}) {
    for (int d : {3, 5}) {
      if (k == CodeKind::color && d == 5) continue;
      const auto code = make_code(k, d);
      for (StabilizerType f : {StabilizerType::X, StabilizerType::Z}) {
        if (!code.has_family(f)) continue;
        const auto table = build_lookup_table(code, f);
        const Pauli p = f == StabilizerType::Z ? Pauli::X : Pauli::Z;
        for (uint64_t e = 0; e < (uint64_t{1} << code.n); ++e) {
          if (std::popcount(e) > code.correctable_weight()) continue;
          PauliString err(code.n);
          for (int q = 0; q < code.n; ++q)
            if ((e >> q) & 1) err.set(q, p);
          const auto residual = err * *table.lookup(syndrome_of(code, err, f));
          for (const auto& g : code.generators) EXPECT_TRUE(commutes(residual, g));
          EXPECT_TRUE(commutes(residual, code.logical_x));
          EXPECT_TRUE(commutes(residual, code.logical_z));
        }
      }
    }
  }
}

TEST(Codes, SyndromeParsing) {
  const auto s = Syndrome::parse(StabilizerType::Z, "-+-");
  EXPECT_EQ(s.values(), (std::vector<int>{-1, 1, -1}));
  EXPECT_EQ(Syndrome::from_values(StabilizerType::Z, {-1, 1, -1}), s);
  EXPECT_THROW(Syndrome::parse(StabilizerType::Z, "+x-"), std::invalid_argument);
  EXPECT_THROW(Syndrome::from_values(StabilizerType::Z, {0, 1}), std::invalid_argument);
}
