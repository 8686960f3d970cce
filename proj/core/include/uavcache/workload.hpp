#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "uavcache/catalog.hpp"
#include "uavcache/rng.hpp"
#include "uavcache/types.hpp"

namespace uavcache {

enum class Outcome { kPending, kHit, kDownloaded };

struct Request {
  std::uint64_t id = 0;
  Seconds time = 0.0;
  AnchorId community = 0;
  ContentId content = 0;
  Seconds deadline = 0.0;
  Outcome outcome = Outcome::kPending;
  Seconds delay = 0.0;  // meaningful only for hits
};

// Incremental form of generate_stream: yields the same requests one at a time.
class RequestGenerator {
 public:
  RequestGenerator(const CommunityProfile& profile, double mu, Seconds horizon, std::span<const Seconds> tads,
                   std::uint64_t rng_seed);

  // Next request, or false once the horizon is reached.
  bool next(Request& out);

 private:
  const CommunityProfile* profile_;
  std::span<const Seconds> tads_;
  Seconds horizon_;
  rng::Engine engine_;
  std::exponential_distribution<double> gap_;
  std::discrete_distribution<ContentId> pick_;
  Seconds clock_ = 0.0;
  std::uint64_t next_id_ = 0;
  bool done_ = false;
};

// Poisson stream for one community. Gaps ~ Exp(mu), contents ~ profile.pmf.
// The sub-seed is derived from (rng_seed, profile.community_id), so streams of
// different communities are independent and adding one never shifts another.
std::vector<Request> generate_stream(const CommunityProfile& profile, double mu, Seconds horizon,
                                     std::span<const Seconds> tads, std::uint64_t rng_seed);

// Trace export: header `id,time,community,content,deadline`.
void write_trace_csv(std::ostream& out, std::span<const Request> requests);

}  // namespace uavcache
