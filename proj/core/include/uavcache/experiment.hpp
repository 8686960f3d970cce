#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavcache/config.hpp"
#include "uavcache/metrics.hpp"

namespace uavcache {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitRuntime = 3 };

inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kQTableFile = "qtable.csv";
inline constexpr const char* kFerryLogFile = "ferry_log.csv";
inline constexpr const char* kConfigEchoFile = "config.echo";

/// Runs one scenario and writes the four output files into `output_dir`.
/// On failure, writes a diagnostic to `diag`, removes partial outputs and
/// returns kExitConfig or kExitRuntime.
int run_experiment(const ScenarioConfig& cfg, const std::filesystem::path& output_dir, std::ostream& diag);

// Parameters run_sweep accepts.
const std::vector<std::string>& sweepable_parameters();

struct SweepCell {
  std::string value;
  std::optional<double> converged_availability;
  std::optional<double> mean_cdo;
  std::optional<double> mean_delay_s;
  std::string status = "ok";  // or the failure message
};

/// One run per value, each with a seed derived from (base seed, value text)
/// so the cell result does not depend on its position in `values`. Cells run
/// on up to `threads` workers (0 = hardware concurrency). When `output_dir`
/// is non-empty each cell writes its run files into `<output_dir>/<param>=<value>`
/// and the summary goes to `<output_dir>/summary.csv`.
std::vector<SweepCell> run_sweep(const ScenarioConfig& base, const std::string& parameter,
                                 const std::vector<std::string>& values, const std::filesystem::path& output_dir,
                                 unsigned threads = 0);

// Header `value,converged_availability,mean_cdo,mean_delay_s,status`.
void write_sweep_summary(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace uavcache
