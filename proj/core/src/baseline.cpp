#include "uavcache/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace uavcache {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

void check_profiles(std::span<const CommunityProfile> profiles, std::size_t c_a) {
  if (profiles.empty()) throw std::invalid_argument("at least one community profile is required");
  for (const auto& p : profiles) {
    if (p.size() != profiles.front().size()) throw std::invalid_argument("profiles disagree on catalog size");
  }
  if (c_a > profiles.front().size()) {
    throw std::invalid_argument("cache capacity " + std::to_string(c_a) + " exceeds catalog size " +
                                std::to_string(profiles.front().size()));
  }
}

// Shared two-segment construction. seg1_order[a] and seg2_order[a] are full
// preference orders for anchor a.
CacheAssignment segmented(const std::vector<std::span<const ContentId>>& seg1_order,
                          const std::vector<std::span<const ContentId>>& seg2_order, std::size_t n_contents,
                          std::size_t c_a, double lambda) {
  const std::size_t n_anchors = seg1_order.size();
  CacheAssignment out;
  out.lambda = lambda;
  out.segment1_size = segment1_capacity(c_a, lambda);
  out.segment2_size = c_a - out.segment1_size;
  out.caches.resize(n_anchors);

  std::vector<std::size_t> holders(n_contents, 0);
  ContentSet taken(n_contents);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    for (std::size_t r = 0; r < out.segment1_size; ++r) {
      const ContentId c = seg1_order[a][r];
      out.caches[a].push_back(c);
      ++holders[c];
      taken.insert(c);
    }
  }
  for (std::size_t c = 0; c < n_contents; ++c) {
    if (holders[c] > 1) ++out.c_ne;
    if (holders[c] == 1) ++out.c_e_total;
  }

  // Round-robin claims in ascending anchor id, one content per turn.
  std::vector<std::size_t> cursor(n_anchors, 0);
  for (std::size_t turn = 0; turn < out.segment2_size; ++turn) {
    for (std::size_t a = 0; a < n_anchors; ++a) {
      auto order = seg2_order[a];
      while (cursor[a] < order.size() && taken.contains(order[cursor[a]])) ++cursor[a];
      if (cursor[a] == order.size()) continue;  // catalog exhausted
      const ContentId c = order[cursor[a]++];
      taken.insert(c);
      out.caches[a].push_back(c);
    }
  }
  out.c_sys = taken.size();
  return out;
}

}  // namespace

std::size_t segment1_capacity(std::size_t c_a, double lambda) {
  check_lambda(lambda);
  const double product = lambda * static_cast<double>(c_a);
  return std::min(c_a, static_cast<std::size_t>(std::floor(product + 1e-9)));
}

CacheAssignment fd_policy(const CommunityProfile& profile, std::size_t c_a, std::size_t n_anchors) {
  if (n_anchors == 0) throw std::invalid_argument("fd_policy: need at least one anchor");
  if (c_a > profile.size()) throw std::invalid_argument("fd_policy: capacity exceeds catalog size");
  CacheAssignment out;
  out.lambda = 1.0;
  out.segment1_size = c_a;
  std::vector<ContentId> top(profile.ranking.begin(), profile.ranking.begin() + static_cast<std::ptrdiff_t>(c_a));
  out.caches.assign(n_anchors, top);
  out.c_sys = c_a;
  (n_anchors > 1 ? out.c_ne : out.c_e_total) = c_a;
  return out;
}

CacheAssignment sec_policy(std::span<const CommunityProfile> profiles, std::size_t c_a, double lambda) {
  check_lambda(lambda);
  check_profiles(profiles, c_a);
  for (const auto& p : profiles) {
    if (p.ranking != profiles.front().ranking) {
      throw std::invalid_argument("sec_policy: profiles must share one popularity ranking");
    }
  }
  return pbc_policy(profiles, c_a, lambda);
}

CacheAssignment pbc_policy(std::span<const CommunityProfile> profiles, std::size_t c_a, double lambda) {
  check_lambda(lambda);
  check_profiles(profiles, c_a);
  std::vector<std::span<const ContentId>> order;
  for (const auto& p : profiles) order.emplace_back(p.ranking);
  return segmented(order, order, profiles.front().size(), c_a, lambda);
}

CacheAssignment vbc_policy(std::span<const CommunityProfile> profiles, std::span<const Seconds> tads,
                           std::size_t c_a, double lambda, const KappaFn& kappa) {
  check_lambda(lambda);
  check_profiles(profiles, c_a);
  if (tads.size() != profiles.front().size()) throw std::invalid_argument("vbc_policy: tads size mismatch");
  std::vector<std::vector<ContentId>> by_value;
  by_value.reserve(profiles.size());
  for (const auto& p : profiles) by_value.push_back(value_ranking(p, tads, kappa));
  std::vector<std::span<const ContentId>> seg1, seg2;
  for (std::size_t a = 0; a < profiles.size(); ++a) {
    seg1.emplace_back(by_value[a]);
    seg2.emplace_back(profiles[a].ranking);
  }
  return segmented(seg1, seg2, profiles.front().size(), c_a, lambda);
}

std::vector<ContentId> benchmark_sequence(const CacheAssignment& assignment, AnchorId anchor,
                                          std::size_t effective_ferry_capacity,
                                          std::span<const ContentId> local_order) {
  if (anchor >= assignment.n_anchors()) {
    throw std::invalid_argument("benchmark_sequence: unknown anchor " + std::to_string(anchor));
  }
  const std::size_t n = local_order.size();
  ContentSet own(n, assignment.caches[anchor]);
  ContentSet remote(n);
  for (std::size_t a = 0; a < assignment.n_anchors(); ++a) {
    if (a == anchor) continue;
    for (ContentId c : assignment.caches[a]) {
      if (!own.contains(c)) remote.insert(c);
    }
  }
  std::vector<ContentId> seq;
  seq.reserve(own.size() + std::min(effective_ferry_capacity, remote.size()));
  for (ContentId c : local_order) {
    if (own.contains(c)) seq.push_back(c);
  }
  std::size_t extra = 0;
  for (ContentId c : local_order) {
    if (extra == effective_ferry_capacity) break;
    if (remote.contains(c)) {
      seq.push_back(c);
      ++extra;
    }
  }
  return seq;
}

void write_assignment_csv(std::ostream& out, const CacheAssignment& assignment) {
  out << "anchor,slot,content\n";
  for (std::size_t a = 0; a < assignment.caches.size(); ++a) {
    for (std::size_t s = 0; s < assignment.caches[a].size(); ++s) {
      out << a << ',' << s << ',' << assignment.caches[a][s] << '\n';
    }
  }
}

}  // namespace uavcache
