#include "uavcache/catalog.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

namespace uavcache {
namespace {

TEST(ZipfPmf, UniformWhenAlphaIsZero) {
  const auto p = zipf_pmf(0.0, 4);
  for (double v : p) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(ZipfPmf, SingleContentGetsAllMass) {
  const auto p = zipf_pmf(0.4, 1);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
}

TEST(ZipfPmf, TwoContentsAtAlphaOne) {
  const auto p = zipf_pmf(1.0, 2);
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p[1], 1.0 / 3.0, 1e-12);
}

TEST(ZipfPmf, MatchesDirectSummation) {
  for (double alpha : {0.0, 0.4, 0.8, 1.0, 1.7}) {
    for (std::size_t n : {1u, 10u, 257u, 2000u}) {
      const auto got = zipf_pmf(alpha, n);
      const auto want = oracle::zipf(alpha, n);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], want[i], 1e-13) << alpha << " " << n << " " << i;
    }
  }
}

TEST(ZipfPmf, SumsToOneAndNeverIncreases) {
  for (double alpha : {0.0, 0.4, 1.0, 2.5}) {
    const auto p = zipf_pmf(alpha, 2000);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LE(p[i], p[i - 1]);
  }
}

TEST(ZipfPmf, RejectsBadArguments) {
  EXPECT_THROW(zipf_pmf(0.4, 0), std::invalid_argument);
  EXPECT_THROW(zipf_pmf(-0.1, 5), std::invalid_argument);
}

TEST(MakeProfile, PmfFollowsRanking) {
  const auto p = make_profile(3, 1.0, {2, 0, 1});
  EXPECT_EQ(p.community_id, 3u);
  EXPECT_NEAR(p.probability(2), 6.0 / 11.0, 1e-12);
  EXPECT_NEAR(p.probability(0), 3.0 / 11.0, 1e-12);
  EXPECT_NEAR(p.probability(1), 2.0 / 11.0, 1e-12);
  EXPECT_EQ(p.rank_of[2], 0u);
  EXPECT_EQ(p.rank_of[1], 2u);
  EXPECT_DOUBLE_EQ(p.max_probability(), p.probability(2));
}

TEST(MakeProfile, RejectsNonPermutation) {
  EXPECT_THROW(make_profile(0, 0.4, {0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(make_profile(0, 0.4, {0, 3}), std::invalid_argument);
}

TEST(BuildProfiles, ZeroSwapProbabilityCopiesBase) {
  const auto base = identity_ranking(50);
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto profiles = build_profiles(base, 0.4, 4, 0.0, seed);
    for (const auto& p : profiles) EXPECT_EQ(p.ranking, base);
  }
}

TEST(BuildProfiles, CertainSwapWalksFirstElementToTheEnd) {
  const std::vector<ContentId> base{0, 1, 2};
  const auto profiles = build_profiles(base, 0.4, 2, 1.0, 5);
  EXPECT_EQ(profiles[0].ranking, base);
  EXPECT_EQ(profiles[1].ranking, (std::vector<ContentId>{1, 2, 0}));
}

TEST(BuildProfiles, SingleCommunityKeepsBase) {
  const std::vector<ContentId> base{4, 2, 0, 1, 3};
  const auto profiles = build_profiles(base, 0.4, 1, 0.7, 11);
  ASSERT_EQ(profiles.size(), 1u);
  EXPECT_EQ(profiles[0].ranking, base);
}

TEST(BuildProfiles, SameSeedSameProfiles) {
  const auto base = identity_ranking(200);
  const auto a = build_profiles(base, 0.4, 3, 0.5, 42, 3);
  const auto b = build_profiles(base, 0.4, 3, 0.5, 42, 3);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(a[c].ranking, b[c].ranking);
}

TEST(BuildProfiles, AddingCommunitiesLeavesEarlierOnesAlone) {
  const auto base = identity_ranking(100);
  const auto two = build_profiles(base, 0.4, 2, 0.5, 3);
  const auto five = build_profiles(base, 0.4, 5, 0.5, 3);
  EXPECT_EQ(two[1].ranking, five[1].ranking);
}

// Similarity to the base falls as the swap probability grows over [0, 0.5].
// Beyond 0.5 a single pass starts to behave like a rotation, so only this
// half of the range is monotone.
TEST(BuildProfiles, HeterogeneityGrowsWithSwapProbability) {
  const auto base = identity_ranking(300);
  double last = 1e9;
  for (double s : {0.0, 0.1, 0.25, 0.5}) {
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto p = build_profiles(base, 0.4, 2, s, seed);
      mean += smith_waterman(base, p[1].ranking);
    }
    mean /= 8.0;
    EXPECT_LT(mean, last + 1e-9) << "swap_prob " << s;
    last = mean;
  }
}

TEST(BuildProfiles, RejectsBadProbability) {
  const auto base = identity_ranking(5);
  EXPECT_THROW(build_profiles(base, 0.4, 2, 1.5, 1), std::invalid_argument);
}

TEST(SmithWaterman, PerfectSelfAlignment) {
  const std::vector<ContentId> s{9, 8, 7, 6, 5};
  EXPECT_EQ(smith_waterman(s, s), 10);
}

TEST(SmithWaterman, DisjointSymbolsScoreZero) {
  const std::vector<ContentId> a{1, 2, 3}, b{4, 5, 6, 7};
  EXPECT_EQ(smith_waterman(a, b), 0);
}

TEST(SmithWaterman, GappedAlignmentScoresFive) {
  const std::vector<ContentId> a{1, 2, 3, 4}, b{1, 2, 4};
  EXPECT_EQ(smith_waterman(a, b), 5);
}

TEST(SmithWaterman, CustomScoringIsHonoured) {
  const std::vector<ContentId> a{1, 2, 3, 4}, b{1, 2, 4};
  EXPECT_EQ(smith_waterman(a, b, ScoringScheme{3, -2, -2}), 7);
  EXPECT_EQ(oracle::smith_waterman(a, b, 3, -2, -2), 7);
}

TEST(SmithWaterman, AgreesWithFullTableOnRandomSequences) {
  std::mt19937 gen(2024);
  std::uniform_int_distribution<ContentId> sym(0, 5);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ContentId> a(len(gen)), b(len(gen));
    for (auto& x : a) x = sym(gen);
    for (auto& x : b) x = sym(gen);
    ASSERT_EQ(smith_waterman(a, b), oracle::smith_waterman(a, b)) << "trial " << trial;
    ASSERT_EQ(smith_waterman(a, b), smith_waterman(b, a));
  }
}

TEST(SmithWaterman, RejectsEmptyInput) {
  const std::vector<ContentId> a{1}, empty;
  EXPECT_THROW(smith_waterman(a, empty), std::invalid_argument);
}

TEST(ContentValue, ReferencePoints) {
  EXPECT_DOUBLE_EQ(content_value(0.2, 0.2, 75.0, 75.0), 1.0);
  EXPECT_DOUBLE_EQ(content_value(0.1, 0.2, 75.0, 75.0), 0.5);
  EXPECT_DOUBLE_EQ(content_value(0.2, 0.2, 150.0, 75.0), 0.5);
  EXPECT_DOUBLE_EQ(content_value(0.2, 0.2, 75.0, 75.0, 0.3), 0.3);
}

TEST(ContentValue, RejectsInconsistentInputs) {
  EXPECT_THROW(content_value(0.1, 0.2, 50.0, 75.0), std::invalid_argument);
  EXPECT_THROW(content_value(0.1, 0.2, 75.0, 0.0), std::invalid_argument);
  EXPECT_THROW(content_value(0.1, 0.0, 75.0, 75.0), std::invalid_argument);
}

TEST(ValueRanking, UniformTadsKeepPopularityOrder) {
  const auto p = make_profile(0, 0.4, {3, 1, 4, 0, 2});
  const std::vector<Seconds> tads(5, 150.0);
  EXPECT_EQ(value_ranking(p, tads), p.ranking);
}

TEST(ValueRanking, UrgentContentOvertakesMorePopularSlackOne) {
  // p(rank 1)/p(rank 2) = 2^0.4 < 4, so the urgent rank-2 content wins.
  const auto p = make_profile(0, 0.4, identity_ranking(4));
  const std::vector<Seconds> tads{400.0, 100.0, 400.0, 400.0};
  const auto order = value_ranking(p, tads);
  EXPECT_EQ(order.front(), 1u);
  EXPECT_EQ(order[1], 0u);
}

TEST(ValueRanking, KappaReceivesRank) {
  const auto p = make_profile(0, 0.0, {2, 1, 0});
  const std::vector<Seconds> tads(3, 100.0);
  // Reverse the order by boosting deeper ranks.
  const auto order = value_ranking(p, tads, [](std::size_t r) { return 1.0 + static_cast<double>(r); });
  EXPECT_EQ(order, (std::vector<ContentId>{0, 1, 2}));
}

TEST(AssignTads, DefaultRatio) {
  const auto t = assign_tads(10, 1.0 / 8.0, {}, 1200.0);
  for (Seconds v : t) EXPECT_DOUBLE_EQ(v, 150.0);
  for (Seconds v : assign_tads(3, 1.0, {}, 1200.0)) EXPECT_DOUBLE_EQ(v, 1200.0);
}

TEST(AssignTads, OverrideRangeIsInclusive) {
  const std::vector<TadOverride> o{{51, 75, 1.0 / 16.0}};
  const auto t = assign_tads(100, 1.0 / 8.0, o, 1200.0);
  EXPECT_DOUBLE_EQ(t[50], 150.0);
  EXPECT_DOUBLE_EQ(t[51], 75.0);
  EXPECT_DOUBLE_EQ(t[75], 75.0);
  EXPECT_DOUBLE_EQ(t[76], 150.0);
}

TEST(AssignTads, LaterOverrideWins) {
  const std::vector<TadOverride> o{{0, 9, 0.5}, {5, 5, 0.25}};
  const auto t = assign_tads(10, 1.0, o, 100.0);
  EXPECT_DOUBLE_EQ(t[4], 50.0);
  EXPECT_DOUBLE_EQ(t[5], 25.0);
}

TEST(AssignTads, RejectsOutOfRangeOverride) {
  const std::vector<TadOverride> o{{5, 10, 0.5}};
  EXPECT_THROW(assign_tads(10, 1.0, o, 100.0), std::invalid_argument);
}

}  // namespace
}  // namespace uavcache
