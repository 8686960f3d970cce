#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uavcache/catalog.hpp"
#include "uavcache/types.hpp"

namespace uavcache {

struct Roster {
  std::size_t index = 0;
  std::vector<ContentId> contents;
};

// What a departing ferry knows when choosing its payload for the next leg.
struct FerryKnowledge {
  std::vector<ContentId> ferryable;  // ranked, none cached at the next anchor
  std::span<const Seconds> tads;
  Seconds visit_gap = 0.0;
  std::optional<std::size_t> previous_roster;
  std::size_t co_flyers = 1;
};

std::vector<Roster> build_rosters(std::span<const ContentId> ferryable, std::size_t c_mf);

// Expected seconds between requests for a content at the next anchor.
using GapEstimator = std::function<double(ContentId)>;

GapEstimator analytic_gap(const CommunityProfile& next_profile, double mu);

/// Keeps the previous roster while its least-requested member is expected to
/// be asked for within min(TAD, visit_gap); otherwise moves to the next roster
/// (cyclically). Starts from roster 0. Throws on an empty roster list.
const Roster& select_roster(const FerryKnowledge& knowledge, std::span<const Roster> rosters,
                            const GapEstimator& gap);

const Roster& select_roster(const FerryKnowledge& knowledge, std::span<const Roster> rosters, double mu,
                            const CommunityProfile& next_profile);

struct DiversifiedPayload {
  std::vector<ContentId> contents;
  std::size_t empty_slots = 0;
};

/// Replaces, in place, every entry of `selected` that a co-flyer already carries
/// or the next anchor already caches, using the best unused content of
/// `replacement_pool`. Slots with no replacement left are dropped and counted.
DiversifiedPayload diversify_group(std::span<const ContentId> selected,
                                   std::span<const std::vector<ContentId>> co_flyer_payloads,
                                   const ContentSet& next_cache, std::span<const ContentId> replacement_pool);

struct FerryDecision {
  Seconds time = 0.0;
  std::size_t ferry = 0;
  AnchorId anchor_from = 0;
  AnchorId anchor_to = 0;
  std::optional<std::size_t> roster_index;
  std::size_t empty_slots = 0;
  std::vector<ContentId> carried;
};

// Header `time,ferry,anchor_from,anchor_to,roster_index,empty_slots,carried`;
// carried ids are space separated.
void write_ferry_log_header(std::ostream& out);
void append_ferry_decision(std::ostream& out, const FerryDecision& decision);

}  // namespace uavcache
