#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uavcache/types.hpp"

namespace uavcache {

struct Content {
  ContentId id = 0;
  Seconds tad = 0.0;
};

/// Popularity model of one community.
///
/// `ranking[r]` is the content at popularity rank r (rank 0 most popular).
/// `pmf` is indexed by content id and is non-increasing along `ranking`.
struct CommunityProfile {
  AnchorId community_id = 0;
  double alpha = 0.0;
  std::vector<ContentId> ranking;
  std::vector<double> pmf;
  std::vector<std::uint32_t> rank_of;  // content id -> rank position

  std::size_t size() const { return ranking.size(); }
  double probability(ContentId c) const { return pmf[c]; }
  double max_probability() const { return ranking.empty() ? 0.0 : pmf[ranking.front()]; }
};

/// Zipf probabilities by rank: entry r (0-based) is proportional to (1/(r+1))^alpha.
/// Throws std::invalid_argument when n == 0 or alpha < 0.
std::vector<double> zipf_pmf(double alpha, std::size_t n);

/// Profile for `community` whose popularity follows `ranking` under Zipf(alpha).
CommunityProfile make_profile(AnchorId community, double alpha, std::vector<ContentId> ranking);

std::vector<ContentId> identity_ranking(std::size_t n);

/// One profile per community. Community 0 keeps `base_ranking`; community c > 0
/// applies `passes` left-to-right adjacent-transposition passes, swapping
/// positions j and j+1 with probability `swap_prob`, drawn from a stream keyed
/// by (rng_seed, c).
std::vector<CommunityProfile> build_profiles(std::span<const ContentId> base_ranking, double alpha,
                                             std::size_t n_communities, double swap_prob,
                                             std::uint64_t rng_seed, std::size_t passes = 1);

struct ScoringScheme {
  int match = 2;
  int mismatch = -1;
  int gap = -1;
};

/// Best local alignment score (linear gap penalty). 0 when nothing aligns positively.
int smith_waterman(std::span<const ContentId> seq_a, std::span<const ContentId> seq_b,
                   const ScoringScheme& scoring = {});

/// kappa * (tad_min / p_max) * (rank_prob / tad). In [0, 1] for kappa = 1.
double content_value(double rank_prob, double p_max, Seconds tad, Seconds tad_min, double kappa = 1.0);

// Per-rank multiplier applied to content_value; rank is 0-based.
using KappaFn = std::function<double(std::size_t rank)>;

/// Contents ordered by descending content_value for this profile (ties keep popularity order).
std::vector<ContentId> value_ranking(const CommunityProfile& profile, std::span<const Seconds> tads,
                                     const KappaFn& kappa = {});

struct TadOverride {
  ContentId first = 0;  // inclusive
  ContentId last = 0;   // inclusive
  double ratio = 0.0;
};

/// tad(i) = ratio(i) * trajectory_time; later overrides win over earlier ones.
std::vector<Seconds> assign_tads(std::size_t n, double default_ratio, std::span<const TadOverride> overrides,
                                 Seconds trajectory_time);

}  // namespace uavcache
