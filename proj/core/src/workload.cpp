#include "uavcache/workload.hpp"

#include <ostream>
#include <random>
#include <stdexcept>

#include "uavcache/rng.hpp"
#include "format.hpp"

namespace uavcache {

RequestGenerator::RequestGenerator(const CommunityProfile& profile, double mu, Seconds horizon,
                                   std::span<const Seconds> tads, std::uint64_t rng_seed)
    : profile_(&profile),
      tads_(tads),
      horizon_(horizon),
      engine_(rng::make_engine(rng::derive_seed(rng_seed, rng::Stream::kWorkload, profile.community_id))) {
  if (!(mu > 0.0)) throw std::invalid_argument("generate_stream: mu must be > 0");
  if (tads.size() != profile.size()) throw std::invalid_argument("generate_stream: tads size mismatch");
  gap_ = std::exponential_distribution<double>(mu);
  pick_ = std::discrete_distribution<ContentId>(profile.pmf.begin(), profile.pmf.end());
  done_ = !(horizon > 0.0);
}

bool RequestGenerator::next(Request& out) {
  if (done_) return false;
  clock_ += gap_(engine_);
  if (clock_ >= horizon_) {
    done_ = true;
    return false;
  }
  const ContentId c = pick_(engine_);
  out = Request{next_id_++, clock_, profile_->community_id, c, clock_ + tads_[c], Outcome::kPending, 0.0};
  return true;
}

std::vector<Request> generate_stream(const CommunityProfile& profile, double mu, Seconds horizon,
                                     std::span<const Seconds> tads, std::uint64_t rng_seed) {
  RequestGenerator gen(profile, mu, horizon, tads, rng_seed);
  std::vector<Request> out;
  if (horizon > 0.0) out.reserve(static_cast<std::size_t>(mu * horizon * 1.05) + 16);
  Request r;
  while (gen.next(r)) out.push_back(r);
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const Request> requests) {
  out << "id,time,community,content,deadline\n";
  for (const auto& r : requests) {
    out << r.id << ',' << detail::fixed6(r.time) << ',' << r.community << ',' << r.content << ','
        << detail::fixed6(r.deadline) << '\n';
  }
}

}  // namespace uavcache
