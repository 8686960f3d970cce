#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavcache/bandit.hpp"
#include "uavcache/catalog.hpp"

namespace uavcache {

enum class Policy { kFd, kSec, kPbc, kVbc, kMabEps, kMabUcb };
enum class GapMode { kAnalytic, kEmpirical };

const char* to_string(Policy p);
Policy policy_from_string(const std::string& name);
bool is_learning(Policy p);

// Every tunable of one simulated scenario. Defaults reproduce the paper's Table I.
struct ScenarioConfig {
  std::size_t n_contents = 2000;
  std::size_t n_anchors = 4;
  std::size_t n_ferries = 8;
  std::size_t group_size = 1;
  std::size_t cache_anchor = 200;
  std::size_t cache_ferry = 25;
  double request_rate = 1.0;
  double hover_ratio = 1.0 / 6.0;
  double transit_ratio = 1.0 / 12.0;
  double zipf_alpha = 0.4;
  std::string trajectory = "round-robin";
  double trajectory_time = 1200.0;

  Policy policy = Policy::kMabUcb;
  bool selective_caching = true;
  double lambda = 0.5;
  double kappa = 1.0;
  double learning_rate = 0.1;
  LearningSchedule learning_rate_schedule = LearningSchedule::kConstant;
  double alpha_u = 2.0;
  double epsilon_initial = 1.0;
  double epsilon_decay = 0.995;
  double epsilon_floor = 0.05;

  double r_tad = 1.0 / 8.0;
  std::vector<TadOverride> r_tad_overrides;
  std::size_t n_profiles = 2;  // community c follows profile c mod n_profiles
  double swap_prob = 0.5;
  std::size_t swap_passes = 1;

  std::uint64_t epochs = 200;
  double epoch_period = 0.0;  // 0 = one ferry-visit gap
  std::uint64_t seed = 1;
  GapMode inter_request_estimate = GapMode::kAnalytic;
  std::uint64_t qtable_dump_interval = 0;  // epochs between Q dumps; 0 = final only

  std::size_t n_groups() const { return n_ferries == 0 ? 0 : (n_ferries + group_size - 1) / group_size; }
  // Seconds covered by one metrics epoch.
  double resolved_epoch_period() const;
  double horizon() const { return static_cast<double>(epochs) * resolved_epoch_period(); }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses flat `key = value` text (`#` starts a comment). Unset keys keep their
/// defaults. Throws ConfigError listing every unknown key, bad value and range
/// violation found.
ScenarioConfig parse_config(const std::string& document);

// Applies one key/value on top of `cfg`; same errors as parse_config.
void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Throws ConfigError when any field is out of range.
void validate(const ScenarioConfig& cfg);

/// Canonical, re-parseable rendering of every key.
std::string echo_config(const ScenarioConfig& cfg);

// Hex FNV-1a digest of echo_config(cfg).
std::string config_hash(const ScenarioConfig& cfg);

// TAD by global popularity rank (position 0 = most popular content).
std::vector<Seconds> resolved_tads(const ScenarioConfig& cfg);

}  // namespace uavcache
