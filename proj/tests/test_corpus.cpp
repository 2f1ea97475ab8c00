#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "katufrac/corpus.hpp"

using namespace katufrac;

namespace {

constexpr double kPi = std::numbers::pi;

// Evaluation ranges [a^rho, b^rho] produced by the sweep grid.
std::vector<Interval> evaluation_ranges() {
  std::vector<Interval> out;
  for (const Interval& iv : {Interval{0.0, 1.0}, Interval{1.0, 2.0}, Interval{0.5, 3.0},
                             Interval{0.0, 0.5 * kPi}, Interval{0.0, kPi / 3.0}}) {
    for (double rho : {0.5, 1.0, 2.0}) out.push_back(iv.powered(rho));
  }
  return out;
}

std::vector<std::string> all_names() {
  auto names = default_corpus_names();
  for (const char* extra : {"ln", "id", "pow7", "a_pow_x:0.5", "a_pow_x:3", "const-2"}) {
    names.emplace_back(extra);
  }
  return names;
}

template <class Fn>
void for_each_entry(Fn&& fn) {
  for (const auto& name : all_names()) {
    for (const auto& range : evaluation_ranges()) {
      CorpusEntry e;
      try {
        e = get(name, range);
      } catch (const DomainError&) {
        continue;
      }
      fn(name, range, e);
    }
  }
}

}  // namespace

TEST(Corpus, Examples) {
  EXPECT_EQ(*get("sin", {0.0, 1.0}).spec.lip_df, 1.0);
  EXPECT_EQ(*get("tan", {0.0, kPi / 3.0}).spec.lip_f, 4.0);
  const auto sq = get("pow2", {1.0, 2.0}).spec;
  EXPECT_EQ(*sq.lip_f, 4.0);
  EXPECT_EQ(*sq.lip_df, 2.0);
  EXPECT_TRUE(sq.convex_f);
}

TEST(Corpus, TangentConstantBeyondTheThirdOfPi) {
  const auto e = get("tan", {0.0, 1.2});
  const double sec2 = 1.0 + std::tan(1.2) * std::tan(1.2);
  EXPECT_DOUBLE_EQ(*e.spec.lip_f, sec2);
  EXPECT_DOUBLE_EQ(*get("tan", {0.0, 0.5}).lip_f_tight, 1.0 + std::tan(0.5) * std::tan(0.5));
  EXPECT_EQ(*get("tan", {0.0, 0.5}).spec.lip_f, 4.0);
}

TEST(Corpus, DomainAndNameErrors) {
  EXPECT_THROW(get("nope", {0.0, 1.0}), UnknownFunction);
  EXPECT_THROW(get("pow", {0.0, 1.0}), UnknownFunction);
  EXPECT_THROW(get("constx", {0.0, 1.0}), UnknownFunction);
  EXPECT_THROW(get("pow1", {0.0, 1.0}), DomainError);
  EXPECT_THROW(get("pow21", {0.0, 1.0}), DomainError);
  EXPECT_THROW(get("ln", {0.0, 1.0}), DomainError);
  EXPECT_THROW(get("recip", {0.0, 1.0}), DomainError);
  EXPECT_THROW(get("tan", {0.0, 0.5 * kPi}), DomainError);
  EXPECT_THROW(get("a_pow_x:-2", {0.0, 1.0}), DomainError);
  EXPECT_THROW(get("sin", {1.0, 1.0}), DomainError);
}

TEST(Corpus, SineFlagsFollowTheRange) {
  EXPECT_FALSE(get("sin", {0.0, 1.0}).spec.convex_f);
  EXPECT_TRUE(get("sin", {3.5, 6.0}).spec.convex_f);
  EXPECT_NEAR(*get("sin", {0.1, 0.2}).spec.lip_f, std::cos(0.1), 1e-15);
  EXPECT_EQ(*get("sin", {3.0, 3.5}).spec.lip_f, 1.0);
  // |cos| is concave between its zeros, so the flag stays off
  auto abs_cos = [](double x) { return std::abs(std::cos(x)); };
  EXPECT_FALSE(sampled_midpoint_convex(abs_cos, {0.0, 1.0}));
  EXPECT_FALSE(get("sin", {0.0, 1.0}).spec.convex_abs_df);
}

TEST(Corpus, FiniteDifferenceConsistency) {
  for_each_entry([](const std::string& name, const Interval& range, const CorpusEntry& e) {
    ASSERT_TRUE(e.spec.deriv.has_value()) << name;
    EXPECT_LE(derivative_mismatch(e.spec, range), 1e-5) << name << " on [" << range.a() << ", " << range.b() << "]";
  });
}

TEST(Corpus, LipschitzConstantsDominateEstimates) {
  for_each_entry([](const std::string& name, const Interval& range, const CorpusEntry& e) {
    if (e.spec.lip_f) {
      EXPECT_LE(estimate_lipschitz(e.spec.eval, range, 2000), *e.spec.lip_f * (1.0 + 1e-6)) << name;
      EXPECT_LE(sampled_lipschitz(e.spec.eval, range), *e.spec.lip_f * (1.0 + 1e-6)) << name;
    }
    if (e.spec.lip_df && e.spec.deriv) {
      EXPECT_LE(estimate_lipschitz(*e.spec.deriv, range, 2000), *e.spec.lip_df * (1.0 + 1e-6)) << name;
    }
  });
}

TEST(Corpus, ConvexityFlagsSurviveSampling) {
  for_each_entry([](const std::string& name, const Interval& range, const CorpusEntry& e) {
    if (e.spec.convex_f) {
      EXPECT_TRUE(sampled_midpoint_convex(e.spec.eval, range)) << name;
    }
    if (e.spec.convex_abs_df) {
      const auto& d = *e.spec.deriv;
      EXPECT_TRUE(sampled_midpoint_convex([&](double x) { return std::abs(d(x)); }, range)) << name;
    }
  });
}

TEST(Corpus, EntriesCarryDescriptions) {
  for_each_entry([](const std::string& name, const Interval&, const CorpusEntry& e) {
    EXPECT_FALSE(e.domain_constraint.empty()) << name;
    EXPECT_FALSE(e.provenance.empty()) << name;
    EXPECT_EQ(e.spec.name, name);
  });
}

TEST(EstimateLipschitz, Examples) {
  const double sine = estimate_lipschitz([](double x) { return std::sin(x); }, {0.0, 1.0}, 10000);
  EXPECT_LE(sine, 1.0);
  EXPECT_GT(sine, 0.9999);
  EXPECT_NEAR(estimate_lipschitz([](double x) { return 3.0 * x - 1.0; }, {0.0, 2.0}, 100), 3.0, 1e-12);
  EXPECT_EQ(estimate_lipschitz([](double) { return 5.0; }, {0.0, 2.0}, 100), 0.0);
}

TEST(EstimateLipschitz, RejectsBadInput) {
  EXPECT_THROW(estimate_lipschitz([](double x) { return x; }, {0.0, 1.0}, 1), DomainError);
  EXPECT_THROW(estimate_lipschitz([](double x) { return std::log(x - 0.5); }, {0.0, 1.0}, 10),
               NumericError);
}
