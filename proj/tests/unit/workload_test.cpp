#include "uavcache/workload.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uavcache {
namespace {

struct Fixture {
  CommunityProfile profile;
  std::vector<Seconds> tads;
};

Fixture make(std::size_t n, double alpha, AnchorId community = 0) {
  Fixture f{make_profile(community, alpha, identity_ranking(n)), std::vector<Seconds>(n, 150.0)};
  return f;
}

TEST(GenerateStream, ZeroHorizonIsEmpty) {
  const auto f = make(10, 0.4);
  EXPECT_TRUE(generate_stream(f.profile, 1.0, 0.0, f.tads, 1).empty());
}

TEST(GenerateStream, CountWithinThreeSigmaOfPoissonMean) {
  const auto f = make(100, 0.4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = generate_stream(f.profile, 1.0, 10000.0, f.tads, seed);
    EXPECT_NEAR(static_cast<double>(s.size()), 10000.0, 300.0) << "seed " << seed;
  }
}

TEST(GenerateStream, TimesIncreaseAndStayInsideHorizon) {
  const auto f = make(50, 0.8);
  const auto s = generate_stream(f.profile, 2.5, 500.0, f.tads, 3);
  ASSERT_FALSE(s.empty());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].id, i);
    EXPECT_LT(s[i].time, 500.0);
    EXPECT_DOUBLE_EQ(s[i].deadline, s[i].time + f.tads[s[i].content]);
    EXPECT_EQ(s[i].outcome, Outcome::kPending);
    if (i > 0) {
      EXPECT_GT(s[i].time, s[i - 1].time);
    }
  }
}

TEST(GenerateStream, RankOneFrequencyMatchesPmf) {
  const auto f = make(2000, 0.4);
  const double p = f.profile.pmf[0];
  std::size_t total = 0, hits = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const auto& r : generate_stream(f.profile, 1.0, 40000.0, f.tads, seed)) {
      ++total;
      hits += r.content == 0;
    }
  }
  const double n = static_cast<double>(total);
  EXPECT_NEAR(static_cast<double>(hits), n * p, 3.0 * std::sqrt(n * p * (1.0 - p)));
}

TEST(GenerateStream, SameSeedSameStreamDifferentCommunityDifferentStream) {
  const auto a = make(50, 0.4, 0);
  const auto b = make(50, 0.4, 1);
  const auto s1 = generate_stream(a.profile, 1.0, 1000.0, a.tads, 9);
  const auto s2 = generate_stream(a.profile, 1.0, 1000.0, a.tads, 9);
  const auto s3 = generate_stream(b.profile, 1.0, 1000.0, b.tads, 9);
  ASSERT_EQ(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].time, s2[i].time);
    EXPECT_EQ(s1[i].content, s2[i].content);
  }
  EXPECT_TRUE(s1.size() != s3.size() || s1.front().time != s3.front().time);
}

TEST(RequestGenerator, MatchesBatchStream) {
  const auto f = make(30, 0.4, 2);
  const auto batch = generate_stream(f.profile, 0.7, 800.0, f.tads, 4);
  RequestGenerator gen(f.profile, 0.7, 800.0, f.tads, 4);
  Request r;
  std::size_t i = 0;
  while (gen.next(r)) {
    ASSERT_LT(i, batch.size());
    EXPECT_EQ(r.time, batch[i].time);
    EXPECT_EQ(r.content, batch[i].content);
    EXPECT_EQ(r.community, 2u);
    ++i;
  }
  EXPECT_EQ(i, batch.size());
  EXPECT_FALSE(gen.next(r));
}

TEST(GenerateStream, RejectsBadArguments) {
  const auto f = make(10, 0.4);
  EXPECT_THROW(generate_stream(f.profile, 0.0, 10.0, f.tads, 1), std::invalid_argument);
  const std::vector<Seconds> short_tads(3, 1.0);
  EXPECT_THROW(generate_stream(f.profile, 1.0, 10.0, short_tads, 1), std::invalid_argument);
}

TEST(WriteTraceCsv, HeaderAndFixedPrecision) {
  const std::vector<Request> reqs{{0, 1.5, 2, 7, 151.5, Outcome::kPending, 0.0}};
  std::ostringstream out;
  write_trace_csv(out, reqs);
  EXPECT_EQ(out.str(), "id,time,community,content,deadline\n0,1.500000,2,7,151.500000\n");
}

}  // namespace
}  // namespace uavcache
