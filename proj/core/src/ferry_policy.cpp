#include "uavcache/ferry_policy.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "format.hpp"

namespace uavcache {

std::vector<Roster> build_rosters(std::span<const ContentId> ferryable, std::size_t c_mf) {
  if (c_mf == 0) throw std::invalid_argument("build_rosters: ferry capacity must be >= 1");
  std::vector<Roster> out;
  out.reserve((ferryable.size() + c_mf - 1) / c_mf);
  for (std::size_t first = 0; first < ferryable.size(); first += c_mf) {
    const std::size_t last = std::min(ferryable.size(), first + c_mf);
    out.push_back(Roster{out.size(), {ferryable.begin() + static_cast<std::ptrdiff_t>(first),
                                      ferryable.begin() + static_cast<std::ptrdiff_t>(last)}});
  }
  return out;
}

GapEstimator analytic_gap(const CommunityProfile& next_profile, double mu) {
  return [&next_profile, mu](ContentId c) {
    const double rate = mu * next_profile.probability(c);
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  };
}

const Roster& select_roster(const FerryKnowledge& knowledge, std::span<const Roster> rosters,
                            const GapEstimator& gap) {
  if (rosters.empty()) throw std::invalid_argument("select_roster: no rosters");
  if (!knowledge.previous_roster) return rosters.front();
  const std::size_t r = *knowledge.previous_roster % rosters.size();
  const Roster& current = rosters[r];
  if (current.contents.empty()) return rosters[(r + 1) % rosters.size()];

  // Least requested member = longest expected gap; earlier slot wins ties.
  ContentId least = current.contents.front();
  double worst = gap(least);
  for (ContentId c : current.contents) {
    const double g = gap(c);
    if (g > worst) {
      worst = g;
      least = c;
    }
  }
  const double tad = least < knowledge.tads.size() ? knowledge.tads[least] : std::numeric_limits<double>::infinity();
  if (worst <= std::min(tad, knowledge.visit_gap)) return current;
  return rosters[(r + 1) % rosters.size()];
}

const Roster& select_roster(const FerryKnowledge& knowledge, std::span<const Roster> rosters, double mu,
                            const CommunityProfile& next_profile) {
  return select_roster(knowledge, rosters, analytic_gap(next_profile, mu));
}

DiversifiedPayload diversify_group(std::span<const ContentId> selected,
                                   std::span<const std::vector<ContentId>> co_flyer_payloads,
                                   const ContentSet& next_cache, std::span<const ContentId> replacement_pool) {
  std::size_t universe = next_cache.universe();
  for (ContentId c : selected) universe = std::max<std::size_t>(universe, c + 1);
  for (ContentId c : replacement_pool) universe = std::max<std::size_t>(universe, c + 1);
  for (const auto& p : co_flyer_payloads) {
    for (ContentId c : p) universe = std::max<std::size_t>(universe, c + 1);
  }

  ContentSet used(universe);
  for (const auto& p : co_flyer_payloads) {
    for (ContentId c : p) used.insert(c);
  }
  const auto blocked = [&](ContentId c) { return used.contains(c) || next_cache.contains(c); };

  // Entries that survive as-is are reserved first so replacements never repeat them.
  std::vector<bool> keep(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    keep[i] = !blocked(selected[i]);
    if (keep[i]) used.insert(selected[i]);
  }

  DiversifiedPayload out;
  out.contents.reserve(selected.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (keep[i]) {
      out.contents.push_back(selected[i]);
      continue;
    }
    while (cursor < replacement_pool.size() && blocked(replacement_pool[cursor])) ++cursor;
    if (cursor == replacement_pool.size()) {
      ++out.empty_slots;
      continue;
    }
    const ContentId c = replacement_pool[cursor++];
    used.insert(c);
    out.contents.push_back(c);
  }
  return out;
}

void write_ferry_log_header(std::ostream& out) {
  out << "time,ferry,anchor_from,anchor_to,roster_index,empty_slots,carried\n";
}

void append_ferry_decision(std::ostream& out, const FerryDecision& d) {
  out << detail::fixed6(d.time) << ',' << d.ferry << ',' << d.anchor_from << ',' << d.anchor_to << ',';
  if (d.roster_index) out << *d.roster_index;
  out << ',' << d.empty_slots << ',';
  for (std::size_t i = 0; i < d.carried.size(); ++i) {
    if (i) out << ' ';
    out << d.carried[i];
  }
  out << '\n';
}

}  // namespace uavcache
