#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "uavcache/catalog.hpp"
#include "uavcache/types.hpp"

namespace uavcache {

// Static pre-loaded anchor caches. Each cache lists Segment-1 first (in
// preference order) followed by its Segment-2 claims (in claim order).
struct CacheAssignment {
  std::vector<std::vector<ContentId>> caches;
  std::size_t segment1_size = 0;
  std::size_t segment2_size = 0;
  double lambda = 0.0;
  std::size_t c_sys = 0;      // distinct contents across all anchors
  std::size_t c_ne = 0;       // Segment-1 contents held by more than one anchor
  std::size_t c_e_total = 0;  // Segment-1 contents held by exactly one anchor

  std::size_t n_anchors() const { return caches.size(); }
};

// floor(lambda * c_a), guarding against representation error at exact products.
std::size_t segment1_capacity(std::size_t c_a, double lambda);

CacheAssignment fd_policy(const CommunityProfile& profile, std::size_t c_a, std::size_t n_anchors);

// Requires identical rankings across profiles.
CacheAssignment sec_policy(std::span<const CommunityProfile> profiles, std::size_t c_a, double lambda);

CacheAssignment pbc_policy(std::span<const CommunityProfile> profiles, std::size_t c_a, double lambda);

// Segment-1 ranked by content value, Segment-2 by popularity.
CacheAssignment vbc_policy(std::span<const CommunityProfile> profiles, std::span<const Seconds> tads,
                           std::size_t c_a, double lambda, const KappaFn& kappa = {});

/// CDO reference for `anchor`: its own cache ordered by `local_order`, then the
/// first `effective_ferry_capacity` contents (again by `local_order`) held at
/// other anchors but not locally. `local_order` must rank every content.
std::vector<ContentId> benchmark_sequence(const CacheAssignment& assignment, AnchorId anchor,
                                          std::size_t effective_ferry_capacity,
                                          std::span<const ContentId> local_order);

// Debug/golden export: header `anchor,slot,content`.
void write_assignment_csv(std::ostream& out, const CacheAssignment& assignment);

}  // namespace uavcache
