#include "uavcache/experiment.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace uavcache {
namespace {

namespace fs = std::filesystem;

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("uavcache_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static ScenarioConfig small() {
    ScenarioConfig c;
    c.n_contents = 300;
    c.cache_anchor = 30;
    c.cache_ferry = 5;
    c.epochs = 20;
    return c;
  }

  fs::path dir_;
};

TEST_F(ExperimentTest, TableOneFiftyEpochsWritesFourFiles) {
  ScenarioConfig cfg;
  cfg.epochs = 50;
  std::ostringstream diag;
  ASSERT_EQ(run_experiment(cfg, dir_, diag), kExitOk) << diag.str();
  for (const char* f : {kMetricsFile, kQTableFile, kFerryLogFile, kConfigEchoFile}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  std::ifstream in(dir_ / kMetricsFile);
  const auto log = parse_csv(in);
  EXPECT_EQ(log.rows.size(), 50u * 4u);
  EXPECT_EQ(log.config_hash, config_hash(cfg));
  EXPECT_EQ(parse_config(slurp(dir_ / kConfigEchoFile)).n_contents, 2000u);
}

TEST_F(ExperimentTest, SameSeedGivesByteIdenticalOutputs) {
  const auto cfg = small();
  std::ostringstream diag;
  ASSERT_EQ(run_experiment(cfg, dir_ / "a", diag), kExitOk);
  ASSERT_EQ(run_experiment(cfg, dir_ / "b", diag), kExitOk);
  for (const char* f : {kMetricsFile, kQTableFile, kFerryLogFile, kConfigEchoFile}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(ExperimentTest, InvalidConfigWritesNothing) {
  auto cfg = small();
  cfg.cache_anchor = 5000;
  std::ostringstream diag;
  EXPECT_EQ(run_experiment(cfg, dir_, diag), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_));
  EXPECT_NE(diag.str().find("cache_anchor"), std::string::npos);
}

TEST_F(ExperimentTest, SingleValueSweepMatchesItsRunDirectory) {
  const auto cells = run_sweep(small(), "group_size", {"2"}, dir_, 1);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].status, "ok");
  std::ifstream in(dir_ / "group_size=2" / kMetricsFile);
  const auto log = parse_csv(in);
  EXPECT_EQ(cells[0].converged_availability, converged_availability(log));
  EXPECT_EQ(cells[0].mean_cdo, tail_mean_cdo(log));
  const auto summary = slurp(dir_ / "summary.csv");
  EXPECT_EQ(summary.rfind("value,converged_availability,mean_cdo,mean_delay_s,status\n2,", 0), 0u) << summary;
}

TEST_F(ExperimentTest, SweepCellsDoNotDependOnPosition) {
  const auto base = small();
  const auto fwd = run_sweep(base, "r_tad", {"0.125", "0.0625", "0.25"}, {}, 3);
  const auto rev = run_sweep(base, "r_tad", {"0.25", "0.125", "0.0625"}, {}, 1);
  const auto same = [](const SweepCell& a, const SweepCell& b) {
    return a.value == b.value && a.converged_availability == b.converged_availability && a.mean_cdo == b.mean_cdo &&
           a.mean_delay_s == b.mean_delay_s && a.status == b.status;
  };
  EXPECT_TRUE(same(fwd[0], rev[1]));
  EXPECT_TRUE(same(fwd[1], rev[2]));
  EXPECT_TRUE(same(fwd[2], rev[0]));
}

TEST_F(ExperimentTest, FailedCellsAreMarked) {
  const auto cells = run_sweep(small(), "group_size", {"1", "99"}, {}, 2);
  EXPECT_EQ(cells[0].status, "ok");
  EXPECT_EQ(cells[1].status.rfind("failed: ", 0), 0u);
  EXPECT_THROW(run_sweep(small(), "n_contents", {"5"}, {}), ConfigError);
}

TEST(SweepSummary, EmptyFieldsForNoData) {
  std::ostringstream out;
  write_sweep_summary(out, {SweepCell{"4", 0.5, std::nullopt, 12.0, "ok"}});
  EXPECT_EQ(out.str(), "value,converged_availability,mean_cdo,mean_delay_s,status\n4,0.500000,,12.000000,ok\n");
}

}  // namespace
}  // namespace uavcache
