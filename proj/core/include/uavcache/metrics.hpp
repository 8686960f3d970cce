#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavcache/types.hpp"

namespace uavcache {

// One (epoch, anchor) record. Optional fields are "no data" and export as empty cells.
struct MetricsRow {
  std::uint64_t epoch = 0;
  Seconds time_s = 0.0;
  AnchorId anchor = 0;
  std::uint64_t requests = 0;
  std::uint64_t hits = 0;
  std::uint64_t downloads = 0;
  std::optional<double> availability;
  std::optional<double> mean_delay_s;
  std::optional<double> cdo;
  std::optional<double> regret;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsLog {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;

  friend bool operator==(const MetricsLog&, const MetricsLog&) = default;
};

/// hits/requests, or nullopt when requests == 0. Throws if hits > requests.
std::optional<double> availability(std::uint64_t hits, std::uint64_t requests);

// Rounds to the six-decimal grid the CSV uses, so in-memory logs round-trip exactly.
double quantize(double value);

double jaro(std::span<const ContentId> a, std::span<const ContentId> b);

/// Jaro similarity with the Winkler common-prefix boost (scale 0.1, prefix <= 4).
/// Throws std::invalid_argument on empty input.
double jaro_winkler(std::span<const ContentId> a, std::span<const ContentId> b);

// Similarity of a learned cache sequence to its benchmark sequence.
double cdo(std::span<const ContentId> learned, std::span<const ContentId> benchmark);

struct DelayStats {
  std::vector<std::uint64_t> epochs;
  std::vector<std::optional<double>> mean_delay_s;  // over hits only, all anchors pooled
  std::vector<std::uint64_t> hits;
  std::vector<std::uint64_t> downloads;
};

DelayStats access_delay_stats(const MetricsLog& log);

// Rank correlation with average ranks for ties. NaN if either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

std::uint64_t epoch_count(const MetricsLog& log);

/// Pooled hits/requests over the last `tail_fraction` of epochs (at least one),
/// optionally restricted to one anchor.
std::optional<double> converged_availability(const MetricsLog& log, double tail_fraction = 0.2,
                                             std::optional<AnchorId> anchor = std::nullopt);

// Mean of the non-empty CDO cells over the last `tail_fraction` of epochs.
std::optional<double> tail_mean_cdo(const MetricsLog& log, double tail_fraction = 0.2,
                                    std::optional<AnchorId> anchor = std::nullopt);

/// Mean of regret cells for epochs in [first, last).
std::optional<double> mean_regret(const MetricsLog& log, std::uint64_t first, std::uint64_t last);

inline constexpr const char* kMetricsHeader =
    "epoch,time_s,anchor,requests,hits,downloads,availability,mean_delay_s,cdo,regret";

void export_csv(std::ostream& out, const MetricsLog& log);

/// Throws std::runtime_error naming `path` when it cannot be written.
void export_csv(const std::filesystem::path& path, const MetricsLog& log);

/// Inverse of export_csv. Throws std::runtime_error on malformed input.
MetricsLog parse_csv(std::istream& in);

}  // namespace uavcache
