#include "uavcache/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "uavcache/rng.hpp"

namespace uavcache {

std::vector<double> zipf_pmf(double alpha, std::size_t n) {
  if (n == 0) throw std::invalid_argument("zipf_pmf: n must be >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("zipf_pmf: alpha must be >= 0");
  std::vector<double> pmf(n);
  for (std::size_t i = 0; i < n; ++i) pmf[i] = std::pow(1.0 / static_cast<double>(i + 1), alpha);
  // Sum smallest terms first.
  double total = 0.0;
  for (std::size_t i = n; i-- > 0;) total += pmf[i];
  for (double& p : pmf) p /= total;
  return pmf;
}

std::vector<ContentId> identity_ranking(std::size_t n) {
  std::vector<ContentId> r(n);
  std::iota(r.begin(), r.end(), ContentId{0});
  return r;
}

namespace {

void check_permutation(std::span<const ContentId> ranking) {
  std::vector<bool> seen(ranking.size(), false);
  for (ContentId c : ranking) {
    if (c >= ranking.size() || seen[c]) throw std::invalid_argument("ranking is not a permutation of [0, N)");
    seen[c] = true;
  }
}

}  // namespace

CommunityProfile make_profile(AnchorId community, double alpha, std::vector<ContentId> ranking) {
  check_permutation(ranking);
  CommunityProfile p;
  p.community_id = community;
  p.alpha = alpha;
  const auto by_rank = zipf_pmf(alpha, ranking.size());
  p.pmf.assign(ranking.size(), 0.0);
  p.rank_of.assign(ranking.size(), 0);
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    p.pmf[ranking[r]] = by_rank[r];
    p.rank_of[ranking[r]] = static_cast<std::uint32_t>(r);
  }
  p.ranking = std::move(ranking);
  return p;
}

std::vector<CommunityProfile> build_profiles(std::span<const ContentId> base_ranking, double alpha,
                                             std::size_t n_communities, double swap_prob,
                                             std::uint64_t rng_seed, std::size_t passes) {
  if (!(swap_prob >= 0.0 && swap_prob <= 1.0)) {
    throw std::invalid_argument("build_profiles: swap_prob must lie in [0, 1]");
  }
  check_permutation(base_ranking);
  std::vector<CommunityProfile> out;
  out.reserve(n_communities);
  for (std::size_t c = 0; c < n_communities; ++c) {
    std::vector<ContentId> ranking(base_ranking.begin(), base_ranking.end());
    if (c > 0 && ranking.size() > 1) {
      auto engine = rng::make_engine(rng::derive_seed(rng_seed, rng::Stream::kProfiles, c));
      std::bernoulli_distribution swap(swap_prob);
      for (std::size_t pass = 0; pass < passes; ++pass) {
        for (std::size_t j = 0; j + 1 < ranking.size(); ++j) {
          if (swap(engine)) std::swap(ranking[j], ranking[j + 1]);
        }
      }
    }
    out.push_back(make_profile(static_cast<AnchorId>(c), alpha, std::move(ranking)));
  }
  return out;
}

int smith_waterman(std::span<const ContentId> seq_a, std::span<const ContentId> seq_b, const ScoringScheme& scoring) {
  if (seq_a.empty() || seq_b.empty()) throw std::invalid_argument("smith_waterman: sequences must be non-empty");
  // Two rolling rows of the (|a|+1) x (|b|+1) table.
  std::vector<int> prev(seq_b.size() + 1, 0);
  std::vector<int> cur(seq_b.size() + 1, 0);
  int best = 0;
  for (std::size_t i = 1; i <= seq_a.size(); ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j <= seq_b.size(); ++j) {
      const int diag = prev[j - 1] + (seq_a[i - 1] == seq_b[j - 1] ? scoring.match : scoring.mismatch);
      const int up = prev[j] + scoring.gap;
      const int left = cur[j - 1] + scoring.gap;
      cur[j] = std::max({0, diag, up, left});
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

double content_value(double rank_prob, double p_max, Seconds tad, Seconds tad_min, double kappa) {
  if (!(tad_min > 0.0)) throw std::invalid_argument("content_value: tad_min must be > 0");
  if (tad < tad_min) throw std::invalid_argument("content_value: tad is below tad_min");
  if (!(p_max > 0.0)) throw std::invalid_argument("content_value: p_max must be > 0");
  return kappa * (tad_min / p_max) * (rank_prob / tad);
}

std::vector<ContentId> value_ranking(const CommunityProfile& profile, std::span<const Seconds> tads,
                                     const KappaFn& kappa) {
  if (tads.size() != profile.size()) throw std::invalid_argument("value_ranking: one TAD per content required");
  const Seconds tad_min = *std::min_element(tads.begin(), tads.end());
  const double p_max = profile.max_probability();
  std::vector<double> value(profile.size());
  for (std::size_t r = 0; r < profile.size(); ++r) {
    const ContentId c = profile.ranking[r];
    const double k = kappa ? kappa(r) : 1.0;
    value[c] = content_value(profile.pmf[c], p_max, tads[c], tad_min, k);
  }
  std::vector<ContentId> order = profile.ranking;
  std::stable_sort(order.begin(), order.end(), [&](ContentId a, ContentId b) { return value[a] > value[b]; });
  return order;
}

std::vector<Seconds> assign_tads(std::size_t n, double default_ratio, std::span<const TadOverride> overrides,
                                 Seconds trajectory_time) {
  if (!(default_ratio > 0.0)) throw std::invalid_argument("assign_tads: default ratio must be > 0");
  std::vector<double> ratio(n, default_ratio);
  for (const auto& o : overrides) {
    if (!(o.ratio > 0.0)) throw std::invalid_argument("assign_tads: override ratio must be > 0");
    if (o.first > o.last || o.last >= n) {
      throw std::invalid_argument("assign_tads: override range " + std::to_string(o.first) + "-" +
                                  std::to_string(o.last) + " outside [0, " + std::to_string(n) + ")");
    }
    for (std::size_t i = o.first; i <= o.last; ++i) ratio[i] = o.ratio;
  }
  std::vector<Seconds> tads(n);
  for (std::size_t i = 0; i < n; ++i) tads[i] = ratio[i] * trajectory_time;
  return tads;
}

}  // namespace uavcache
