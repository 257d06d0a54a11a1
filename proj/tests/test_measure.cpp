#include <gtest/gtest.h>

#include <sstream>

#include "meanset/measure.hpp"
#include "meanset/random.hpp"
#include "meanset/random_instances.hpp"
#include "meanset/rational.hpp"
#include "oracles.hpp"

using namespace meanset;

TEST(ExactNumbers, Parse) {
  EXPECT_EQ(parse_exact_number("12"), Rational(12));
  EXPECT_EQ(parse_exact_number("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_exact_number("3/8"), Rational(3, 8));
  EXPECT_EQ(parse_exact_number("6/8"), Rational(3, 4));
  for (const char* bad : {"", "1e3", "inf", "-1", "1/0", "0.", ".5", "1/2/3", "0x10"}) {
    EXPECT_THROW(parse_exact_number(bad), Error) << bad;
  }
  EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
  EXPECT_EQ(to_fraction_string(Rational(-2, 6)), "-1/3");
}

TEST(AtomicMeasure, CanonicalForm) {
  auto a = AtomicMeasure<IntVertex>::from_masses({{2, Integer(4)}, {0, Integer(2)}, {2, Integer(2)}});
  ASSERT_EQ(a.support_size(), 2u);
  EXPECT_EQ(a.total_mass(), 4);
  EXPECT_EQ(a.atoms()[0].vertex, 0);
  EXPECT_EQ(a.probability(2), Rational(3, 4));
  EXPECT_EQ(a.probability(9), 0);
  auto b = AtomicMeasure<IntVertex>::from_probabilities({{0, Rational(1, 4)}, {2, Rational(3, 4)}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.heaviest_atom(), 2);
}

TEST(AtomicMeasure, Rejects) {
  EXPECT_THROW(AtomicMeasure<IntVertex>::from_masses({}), Error);
  EXPECT_THROW(AtomicMeasure<IntVertex>::from_masses({{0, Integer(0)}}), Error);
  EXPECT_THROW(AtomicMeasure<IntVertex>::from_probabilities({{0, Rational(1, 2)}}), Error);
  EXPECT_THROW(AtomicMeasure<IntVertex>::from_probabilities({{0, Rational(3, 2)}, {1, Rational(-1, 2)}}), Error);
}

TEST(AtomicMeasure, HeaviestAtomTieGoesToSmallestVertex) {
  auto mu = AtomicMeasure<IntVertex>::from_masses({{5, Integer(2)}, {3, Integer(2)}, {9, Integer(1)}});
  EXPECT_EQ(mu.heaviest_atom(), 3);
}

TEST(AtomicMeasure, ProbabilitiesSumToOne) {
  RandomStream rng(1);
  std::vector<IntVertex> candidates{0, 1, 2, 3, 4, 5, 6, 7};
  for (int trial = 0; trial < 100; ++trial) {
    auto mu = random_measure(rng, candidates, 8, 1000);
    Rational total = 0;
    for (const auto& a : mu.atoms()) total += mu.probability(a.vertex);
    EXPECT_EQ(total, 1);
  }
}

TEST(Sample, CountsAndEmpirical) {
  Sample<IntVertex> s;
  s.add(3);
  s.add(1, 2);
  s.add(3);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.counts(), (std::vector<std::pair<IntVertex, std::uint64_t>>{{1, 2}, {3, 2}}));
  EXPECT_EQ(empirical(s), AtomicMeasure<IntVertex>::uniform({1, 3}));
  EXPECT_THROW(empirical(Sample<IntVertex>{}), Error);
  EXPECT_THROW(s.add(1, 0), Error);
}

TEST(Sampler, FrequenciesMatchMasses) {
  // Masses 1:2:3:4 over 100000 draws; chi-square against the exact expectation.
  auto mu = AtomicMeasure<IntVertex>::from_masses({{0, Integer(1)}, {1, Integer(2)}, {2, Integer(3)}, {3, Integer(4)}});
  RandomStream rng(99);
  const std::uint64_t n = 100000;
  auto s = draw(mu, n, rng);
  ASSERT_EQ(s.size(), n);
  double chi = 0;
  for (const auto& [v, c] : s.counts()) {
    const double expected = n * static_cast<double>(v + 1) / 10.0;
    chi += (c - expected) * (c - expected) / expected;
  }
  EXPECT_LT(chi, oracle::chi_square_upper(3, 3.0));
}

TEST(Sampler, HugeMassesFallBackToExactBigIntegers) {
  // Total mass above 2^64 forces the multiprecision path.
  Integer big = Integer(1) << 70;
  auto mu = AtomicMeasure<IntVertex>::from_masses({{0, big}, {1, big + 1}});
  RandomStream rng(5);
  auto s = draw(mu, 20000, rng);
  for (const auto& [v, c] : s.counts()) EXPECT_NEAR(static_cast<double>(c), 10000.0, 400.0);
}

TEST(Sampler, Deterministic) {
  auto mu = AtomicMeasure<IntVertex>::uniform({0, 1, 2, 3, 4});
  auto a = make_stream(42, {1, 2});
  auto b = make_stream(42, {1, 2});
  auto c = make_stream(42, {2, 1});
  auto sa = draw(mu, 50, a), sb = draw(mu, 50, b), sc = draw(mu, 50, c);
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa, sc);
}

TEST(Shift, TranslatesEveryAtom) {
  auto mu = AtomicMeasure<ReducedWord>::from_masses({{parse_word("a", 2), Integer(1)}, {parse_word("bA", 2), Integer(2)}});
  auto g = parse_word("A", 2);
  auto shifted = shift(mu, g);
  EXPECT_EQ(shifted.mass(parse_word("e", 2)), 1);
  EXPECT_EQ(shifted.mass(parse_word("AbA", 2)), 2);
  EXPECT_EQ(shift(shifted, g.inverse()), mu);
}

TEST(MeasureFile, Parse) {
  std::istringstream in("# weights\n0 1/4\n-3 0.5\n 7 1/4 # tail\n");
  auto mu = parse_measure<IntVertex>(in, parse_int_vertex);
  EXPECT_EQ(mu.probability(-3), Rational(1, 2));
  EXPECT_EQ(mu.probability(7), Rational(1, 4));

  std::istringstream words("g1 G2 2\nab 1\ne 1\n");
  auto wmu = parse_measure<ReducedWord>(words, [](const std::string& s) { return parse_word(s, 2); });
  EXPECT_EQ(wmu.probability(parse_word("aB", 2)), Rational(1, 2));
  EXPECT_EQ(wmu.probability(parse_word("e", 2)), Rational(1, 4));
}

TEST(MeasureFile, Rejects) {
  for (const char* text : {"0\n", "0 0\n", "x 1\n", "0 -1\n", "", "0 1e2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_measure<IntVertex>(in, parse_int_vertex), Error) << text;
  }
  EXPECT_THROW(load_measure<IntVertex>("/nonexistent", parse_int_vertex), Error);
}

TEST(Seeds, DerivationSeparatesPaths) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(42, {a, b}));
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(derive_seed(42, {1, 2}), derive_seed(42, {1, 2}));
  EXPECT_NE(derive_seed(42, {1}), derive_seed(43, {1}));
}
