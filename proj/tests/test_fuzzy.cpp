#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fuzzy_oracle.hpp"
#include "fuzzymark/error.hpp"
#include "fuzzymark/fuzzy.hpp"

using namespace fuzzymark;

TEST(TextureSensitivity, HandEvaluatedWindow) {
  const std::vector<double> t{0.4, 3.2, -7.1};
  const auto s = texture_sensitivity(t, 2.0);
  EXPECT_EQ(s.raw, 2u);
  EXPECT_DOUBLE_EQ(s.normalized, 2.0 / 3.0);
}

TEST(TextureSensitivity, HalfwayRoundsAwayFromZero) {
  const std::vector<double> t{5, 5, 5, 5};
  const auto s = texture_sensitivity(t, 2.0);
  EXPECT_EQ(s.raw, 4u);
  EXPECT_DOUBLE_EQ(s.normalized, 1.0);
}

TEST(TextureSensitivity, ZeroWindow) {
  const std::vector<double> t(8, 0.0);
  EXPECT_EQ(texture_sensitivity(t, 3.0).raw, 0u);
  EXPECT_EQ(texture_sensitivity(t, 0.001).raw, 0u);
}

TEST(TextureSensitivity, KeyOffsetShiftsBeforeRounding) {
  const std::vector<double> t{0.0, -3.0};
  EXPECT_EQ(texture_sensitivity(t, 4.0, 0).raw, 1u);  // round(-0.75) = -1
  EXPECT_EQ(texture_sensitivity(t, 4.0, 3).raw, 1u);  // round(0.75) = 1, round(0) = 0
  EXPECT_EQ(texture_sensitivity(t, 4.0, -2).raw, 2u);  // round(-0.5) = -1, round(-1.25) = -1
}

TEST(TextureSensitivity, Errors) {
  const std::vector<double> t{1.0};
  EXPECT_THROW(texture_sensitivity(t, 0.0), ParameterError);
  EXPECT_THROW(texture_sensitivity(t, -1.0), ParameterError);
  EXPECT_THROW(texture_sensitivity({}, 1.0), ParameterError);
}

TEST(TextureSensitivity, MatchesIndicatorOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> value(-80, 80);
  std::uniform_real_distribution<double> step(0.5, 40);
  std::uniform_int_distribution<int> len(1, 16);
  std::uniform_int_distribution<std::int64_t> key(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> t(static_cast<std::size_t>(len(rng)));
    for (double& v : t) v = value(rng);
    const double q = step(rng);
    const std::int64_t k = key(rng);
    const auto s = texture_sensitivity(t, q, k);
    ASSERT_EQ(s.raw, oracle::indicator_count(t, q, k));
    ASSERT_GE(s.normalized, 0.0);
    ASSERT_LE(s.normalized, 1.0);
  }
}

TEST(Membership, TriangleShape) {
  const MembershipFunction mf{0.0, 0.5, 1.0};
  EXPECT_DOUBLE_EQ(mf(-0.1), 0.0);
  EXPECT_DOUBLE_EQ(mf(0.5), 1.0);
  EXPECT_DOUBLE_EQ(mf(0.25), 0.5);
  EXPECT_DOUBLE_EQ(mf(0.75), 0.5);
  EXPECT_DOUBLE_EQ(mf(1.1), 0.0);
  const MembershipFunction shoulder{0.0, 0.0, 0.5};
  EXPECT_DOUBLE_EQ(shoulder(0.0), 1.0);
  EXPECT_DOUBLE_EQ(shoulder(0.25), 0.5);
}

TEST(Fuzzify, DefaultPartition) {
  const auto sys = FuzzySystem::standard(0.5, 2.5);
  EXPECT_EQ(fuzzify(sys, 0.0), (std::array<double, 3>{1, 0, 0}));
  EXPECT_EQ(fuzzify(sys, 0.5), (std::array<double, 3>{0, 1, 0}));
  EXPECT_EQ(fuzzify(sys, 0.25), (std::array<double, 3>{0.5, 0.5, 0}));
  EXPECT_EQ(fuzzify(sys, 1.0), (std::array<double, 3>{0, 0, 1}));
  EXPECT_EQ(fuzzify(sys, -3.0), fuzzify(sys, 0.0));
  EXPECT_EQ(fuzzify(sys, 7.0), fuzzify(sys, 1.0));
}

TEST(Fuzzify, PartitionOfUnity) {
  const auto sys = FuzzySystem::standard(1, 2);
  for (int i = 0; i <= 1000; ++i) {
    const auto mu = fuzzify(sys, i / 1000.0);
    ASSERT_NEAR(mu[0] + mu[1] + mu[2], 1.0, 1e-12);
    for (double m : mu) {
      ASSERT_GE(m, 0.0);
      ASSERT_LE(m, 1.0);
    }
  }
}

TEST(Infer, HandEvaluated) {
  const auto sys = FuzzySystem::standard(0.5, 2.5);
  EXPECT_DOUBLE_EQ(infer(sys, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(infer(sys, 0.25), 1.0);
  EXPECT_DOUBLE_EQ(infer(sys, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(infer(sys, 1.0), 2.5);
}

TEST(Infer, NothingFiresReturnsAlphaMin) {
  const TermSet input{{{0.9, 0.95, 1.0}, {0.9, 0.95, 1.0}, {0.9, 0.95, 1.0}}};
  const TermSet output{{{1, 1, 2}, {1, 2, 3}, {2, 3, 3}}};
  const FuzzySystem sys(input, output, {{Term::kLow, Term::kMedium}, {Term::kHigh, Term::kHigh}});
  EXPECT_DOUBLE_EQ(sys.alpha_min(), 2.0);
  EXPECT_DOUBLE_EQ(infer(sys, 0.1), 2.0);
}

TEST(Infer, MonotoneAndConvexOnDefaultSystem) {
  const auto sys = FuzzySystem::for_step(16.0);
  double previous = -1;
  for (int i = 0; i <= 1000; ++i) {
    const double a = infer(sys, i / 1000.0);
    ASSERT_GE(a, previous);
    ASSERT_GE(a, sys.alpha_min());
    ASSERT_LE(a, sys.alpha_max());
    previous = a;
  }
  EXPECT_DOUBLE_EQ(sys.alpha_min(), 2.0);
  EXPECT_DOUBLE_EQ(sys.alpha_max(), 7.2);
}

TEST(Infer, MatchesWeightedAverageOracle) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_real_distribution<double> peak(-10, 10);
  std::uniform_int_distribution<int> term(0, 2);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    TermSet in{};
    TermSet out{};
    for (auto* set : {&in, &out}) {
      for (auto& mf : *set) {
        double v[3] = {unit(rng), unit(rng), unit(rng)};
        std::sort(v, v + 3);
        mf = {v[0], v[1], v[2]};
      }
    }
    for (auto& mf : out) {
      const double shift = peak(rng);
      mf = {mf.a + shift, mf.b + shift, mf.c + shift};
    }
    std::vector<FuzzyRule> rules(static_cast<std::size_t>(count(rng)));
    for (auto& r : rules) r = {static_cast<Term>(term(rng)), static_cast<Term>(term(rng))};
    const FuzzySystem sys(in, out, rules);
    const double x = unit(rng);

    std::vector<double> w;
    std::vector<double> z;
    double lo = 1e300;
    for (const auto& r : rules) {
      const auto& a = in[static_cast<std::size_t>(r.antecedent)];
      const auto& c = out[static_cast<std::size_t>(r.consequent)];
      w.push_back(oracle::triangle(a.a, a.b, a.c, x));
      z.push_back(c.b);
      lo = std::min(lo, c.b);
    }
    ASSERT_NEAR(infer(sys, x), oracle::weighted_average(w, z, lo), 1e-12) << "trial " << trial;
  }
}

TEST(FuzzySystem, Validation) {
  const TermSet ok{{{0, 0, 0.5}, {0, 0.5, 1}, {0.5, 1, 1}}};
  EXPECT_THROW(FuzzySystem(ok, ok, {}), ParameterError);
  TermSet bad = ok;
  bad[1] = {0.6, 0.5, 1};
  EXPECT_THROW(FuzzySystem(bad, ok, {{Term::kLow, Term::kLow}}), ParameterError);
  EXPECT_THROW(FuzzySystem::standard(3, 1), ParameterError);
  EXPECT_THROW(parse_term("huge"), ParameterError);
  EXPECT_EQ(parse_term(term_name(Term::kMedium)), Term::kMedium);
}
