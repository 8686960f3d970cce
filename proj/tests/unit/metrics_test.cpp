#include "uavcache/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"

namespace uavcache {
namespace {

std::vector<ContentId> ids(const std::string& s) {
  std::vector<ContentId> out;
  for (unsigned c : oracle::symbols(s)) out.push_back(c);
  return out;
}

TEST(Availability, Ratios) {
  EXPECT_DOUBLE_EQ(*availability(87, 100), 0.87);
  EXPECT_FALSE(availability(0, 0).has_value());
  EXPECT_DOUBLE_EQ(*availability(0, 50), 0.0);
  EXPECT_THROW(availability(3, 2), std::invalid_argument);
}

TEST(Quantize, RoundsToSixDecimals) {
  EXPECT_DOUBLE_EQ(quantize(0.1234564), 0.123456);
  EXPECT_DOUBLE_EQ(quantize(0.1234566), 0.123457);
  EXPECT_DOUBLE_EQ(quantize(-2.5), -2.5);
}

TEST(JaroWinkler, Martha) {
  EXPECT_NEAR(jaro_winkler(ids("MARTHA"), ids("MARHTA")), 0.9611, 1e-4);
  EXPECT_NEAR(jaro(ids("MARTHA"), ids("MARHTA")), 0.9444, 1e-4);
}

TEST(JaroWinkler, ClassicPairs) {
  EXPECT_NEAR(jaro_winkler(ids("DWAYNE"), ids("DUANE")), 0.84, 1e-4);
  EXPECT_NEAR(jaro_winkler(ids("DIXON"), ids("DICKSONX")), 0.8133, 1e-4);
}

TEST(JaroWinkler, IdenticalAndDisjoint) {
  const std::vector<ContentId> a{4, 8, 15, 16, 23, 42};
  const std::vector<ContentId> b{1, 2, 3};
  EXPECT_DOUBLE_EQ(jaro_winkler(a, a), 1.0);
  EXPECT_DOUBLE_EQ(jaro_winkler(a, b), 0.0);
}

TEST(JaroWinkler, RejectsEmpty) {
  const std::vector<ContentId> a{1}, empty;
  EXPECT_THROW(jaro_winkler(a, empty), std::invalid_argument);
  EXPECT_THROW(jaro(empty, a), std::invalid_argument);
}

TEST(JaroWinkler, AgreesWithReferenceOnRandomSequences) {
  std::mt19937 gen(31);
  std::uniform_int_distribution<ContentId> sym(0, 7);
  std::uniform_int_distribution<std::size_t> len(1, 25);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ContentId> a(len(gen)), b(len(gen));
    for (auto& x : a) x = sym(gen);
    for (auto& x : b) x = sym(gen);
    const double got = jaro_winkler(a, b);
    ASSERT_NEAR(got, oracle::jaro_winkler(a, b), 1e-12) << "trial " << trial;
    ASSERT_NEAR(got, jaro_winkler(b, a), 1e-12);
    ASSERT_GE(got, 0.0);
    ASSERT_LE(got, 1.0);
  }
}

TEST(Cdo, ReversedBenchmarkScoresBelowOne) {
  const std::vector<ContentId> bench{0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<ContentId> rev(bench.rbegin(), bench.rend());
  EXPECT_DOUBLE_EQ(cdo(bench, bench), 1.0);
  const double v = cdo(rev, bench);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, oracle::jaro_winkler(rev, bench), 1e-12);
}

MetricsLog sample_log() {
  MetricsLog log{"abc123", 7, {}};
  log.rows.push_back({0, 1200.0, 0, 10, 8, 2, 0.8, 35.5, 0.91, 0.25});
  log.rows.push_back({0, 1200.0, 1, 0, 0, 0, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  log.rows.push_back({1, 2400.0, 0, 4, 4, 0, 1.0, 0.0, 1.0, 0.0});
  log.rows.push_back({1, 2400.0, 1, 5, 1, 4, 0.2, 100.25, 0.5, 1.5});
  return log;
}

TEST(ExportCsv, EmptyLogIsHeaderOnly) {
  std::ostringstream out;
  export_csv(out, MetricsLog{"h", 3, {}});
  EXPECT_EQ(out.str(), std::string("# config_hash=h,seed=3\n") + kMetricsHeader + "\n");
}

TEST(ExportCsv, FixedPrecisionAndEmptyNoData) {
  std::ostringstream out;
  export_csv(out, sample_log());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "0,1200.000000,0,10,8,2,0.800000,35.500000,0.910000,0.250000");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1200.000000,1,0,0,0,,,,");
  EXPECT_EQ(out.str().back(), '\n');
}

TEST(ExportCsv, OneEpochHasAnchorsPlusHeaderLines) {
  MetricsLog log{"h", 1, {}};
  for (AnchorId a = 0; a < 4; ++a) log.rows.push_back({0, 60.0, a, 1, 1, 0, 1.0, 0.0, 1.0, 0.0});
  std::ostringstream out;
  export_csv(out, log);
  const std::string s = out.str();
  // One comment line precedes the column header.
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4 + 1 + 1);
}

TEST(ExportCsv, RoundTrips) {
  const auto log = sample_log();
  std::ostringstream out;
  export_csv(out, log);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_csv(in), log);
}

TEST(ExportCsv, FileRoundTripAndUnwritablePath) {
  const auto dir = std::filesystem::temp_directory_path() / "uavcache_metrics_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "m.csv";
  export_csv(path, sample_log());
  std::ifstream in(path);
  EXPECT_EQ(parse_csv(in), sample_log());
  std::filesystem::remove_all(dir);
  try {
    export_csv(dir / "missing" / "m.csv", sample_log());
    FAIL() << "expected an I/O error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("m.csv"), std::string::npos);
  }
}

TEST(ParseCsv, RejectsMalformedInput) {
  std::istringstream no_header("epoch\n");
  EXPECT_THROW(parse_csv(no_header), std::runtime_error);
  std::istringstream bad_cols(std::string("# config_hash=x,seed=1\n") + kMetricsHeader + "\n1,2,3\n");
  EXPECT_THROW(parse_csv(bad_cols), std::runtime_error);
  std::istringstream bad_num(std::string("# config_hash=x,seed=1\n") + kMetricsHeader + "\n0,x,0,0,0,0,,,,\n");
  EXPECT_THROW(parse_csv(bad_num), std::runtime_error);
}

TEST(AccessDelayStats, HitWeightedMeanAcrossAnchors) {
  const auto s = access_delay_stats(sample_log());
  ASSERT_EQ(s.epochs.size(), 2u);
  EXPECT_NEAR(*s.mean_delay_s[0], 35.5, 1e-12);
  EXPECT_NEAR(*s.mean_delay_s[1], (4 * 0.0 + 1 * 100.25) / 5.0, 1e-12);
  EXPECT_EQ(s.downloads[1], 4u);
  MetricsLog empty{"h", 1, {{0, 1.0, 0, 3, 0, 3, 0.0, std::nullopt, std::nullopt, std::nullopt}}};
  EXPECT_FALSE(access_delay_stats(empty).mean_delay_s[0].has_value());
}

TEST(AccessDelayStats, AllLocalHitsHaveZeroDelay) {
  MetricsLog log{"h", 1, {{0, 1.0, 0, 3, 3, 0, 1.0, 0.0, std::nullopt, std::nullopt}}};
  EXPECT_DOUBLE_EQ(*access_delay_stats(log).mean_delay_s[0], 0.0);
}

TEST(Spearman, PerfectAndTiedCases) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> down{9, 7, 5, 3, 1};
  const std::vector<double> sq{1, 4, 9, 16, 25};
  EXPECT_DOUBLE_EQ(spearman(x, down), -1.0);
  EXPECT_DOUBLE_EQ(spearman(x, sq), 1.0);
  // Average ranks: y ranks (1.5, 1.5, 3) against (1, 2, 3).
  const std::vector<double> a{1, 2, 3}, b{5, 5, 7};
  EXPECT_NEAR(spearman(a, b), 0.8660254037844386, 1e-12);
  const std::vector<double> flat{2, 2, 2};
  EXPECT_TRUE(std::isnan(spearman(a, flat)));
  const std::vector<double> two{1, 2};
  EXPECT_THROW(spearman(a, two), std::invalid_argument);
}

TEST(Summaries, TailWindowsAndRegret) {
  const auto log = sample_log();
  EXPECT_EQ(epoch_count(log), 2u);
  // Tail of 20% of two epochs rounds up to the final epoch.
  EXPECT_NEAR(*converged_availability(log), 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(*converged_availability(log, 1.0), 13.0 / 19.0, 1e-12);
  EXPECT_NEAR(*converged_availability(log, 1.0, AnchorId{1}), 0.2, 1e-12);
  EXPECT_NEAR(*tail_mean_cdo(log), 0.75, 1e-12);
  EXPECT_NEAR(*tail_mean_cdo(log, 1.0, AnchorId{0}), 0.955, 1e-12);
  EXPECT_NEAR(*mean_regret(log, 0, 2), (0.25 + 0.0 + 1.5) / 3.0, 1e-12);
  EXPECT_FALSE(mean_regret(log, 5, 9).has_value());
}

}  // namespace
}  // namespace uavcache
