#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <queue>
#include <vector>

#include "uavcache/bandit.hpp"
#include "uavcache/baseline.hpp"
#include "uavcache/catalog.hpp"
#include "uavcache/config.hpp"
#include "uavcache/ferry_policy.hpp"
#include "uavcache/metrics.hpp"
#include "uavcache/network.hpp"
#include "uavcache/rng.hpp"
#include "uavcache/workload.hpp"

namespace uavcache {

// Same-instant ordering: lower value first.
enum class EventKind : int {
  kFerryArrival = 0,
  kRequest = 1,
  kDeadlineExpiry = 2,
  kFerryDeparture = 3,
  kLearningTick = 4,  // epoch trigger when the fleet is empty
  kHorizonEnd = 5,
};

struct Event {
  Seconds time = 0.0;
  EventKind kind = EventKind::kRequest;
  std::uint64_t seq = 0;
  std::uint64_t ref = 0;  // request slot, group id, or anchor id depending on kind
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
    return a.seq > b.seq;
  }
};

struct EngineSinks {
  std::ostream* qtable = nullptr;     // Q-table dump rows
  std::ostream* ferry_log = nullptr;  // per-departure decisions
};

struct EngineOptions {
  bool generate_requests = true;   // false: only injected requests are simulated
  bool keep_request_log = false;   // retain resolved requests for inspection
};

struct Totals {
  std::uint64_t requests = 0;
  std::uint64_t hits = 0;
  std::uint64_t downloads = 0;
  std::uint64_t pending = 0;
};

// One deterministic run of a scenario. run() is the normal entry point; the
// handle_* members and state accessors exist so tests can drive single events.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg, EngineSinks sinks = {}, EngineOptions options = {});
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  MetricsLog run();

  // Processes queued events with time < t (or up to the horizon).
  void process_until(Seconds t);
  void finish();  // drains to the horizon and resolves leftovers as downloads
  MetricsLog metrics() const;

  void inject_request(Request r);
  void handle_request(const Request& r);
  void handle_ferry_arrival(const ContactEvent& contact);
  void handle_ferry_departure(const ContactEvent& contact);

  const ScenarioConfig& config() const { return cfg_; }
  const TrajectorySchedule& schedule() const { return schedule_; }
  const std::vector<CommunityProfile>& profiles() const { return profiles_; }
  const std::vector<Seconds>& tads() const { return tads_; }
  const CacheAssignment& benchmark() const { return benchmark_; }
  const std::vector<ContentId>& benchmark_sequence_of(AnchorId a) const { return bench_seq_[a]; }

  const std::vector<ContentId>& cache(AnchorId a) const { return anchors_[a].cache_list; }
  void set_cache(AnchorId a, std::vector<ContentId> contents);
  const std::vector<std::vector<ContentId>>& payloads(std::size_t group) const { return groups_[group].payloads; }
  void set_payload(std::size_t group, std::size_t slot, std::vector<ContentId> contents);
  std::optional<AnchorId> hovering_at(std::size_t group) const { return groups_[group].hovering; }
  const QTable& qtable(AnchorId a) const { return anchors_[a].q; }
  std::uint64_t learning_epochs(AnchorId a) const { return anchors_[a].learning_epochs; }

  Totals totals() const { return totals_; }
  const std::vector<Request>& resolved_requests() const { return resolved_; }
  Seconds now() const { return clock_; }

 private:
  struct Window {
    std::vector<ContentTally> per_content;
    std::uint64_t requests = 0;
    std::uint64_t hits = 0;
  };

  struct AnchorState {
    ContentSet cache;
    std::vector<ContentId> cache_list;
    QTable q;
    rng::Engine explore;
    Window current;
    Window previous;
    bool have_previous = false;
    Seconds window_start = 0.0;
    std::uint64_t learning_epochs = 0;
    std::vector<std::vector<std::uint64_t>> pending;  // by content: request slots
    std::vector<std::size_t> hovering_groups;
  };

  struct GroupState {
    std::vector<std::vector<ContentId>> payloads;  // one per ferry
    std::optional<AnchorId> hovering;
    ContentSet carried;  // union of payloads
    std::vector<std::optional<AvailabilitySnapshot>> mailbox;  // by origin anchor
    long long next_contact = 0;                                // contact counter, see contact_at
  };

  struct EpochCell {
    std::uint64_t requests = 0, hits = 0, downloads = 0;
    double delay_sum = 0.0;
    double cdo_sum = 0.0, regret_sum = 0.0;
    std::uint64_t cdo_n = 0, regret_n = 0;
  };

  void push(Seconds t, EventKind kind, std::uint64_t ref);
  void dispatch(const Event& e);
  void pull_request(AnchorId community);
  ContactEvent contact_at(std::size_t group, long long n) const;
  void schedule_next_contact(std::size_t group);

  bool locally_available(AnchorId a, ContentId c) const;
  void admit(const Request& r);
  void record_hit(Request& r);
  void serve_pending(AnchorId a, ContentId c);
  void expire(std::uint64_t tagged);
  void download(std::uint64_t slot);  // bookkeeping only; caller owns the pending list
  std::uint64_t tag(std::uint64_t slot) const;  // slot plus its reuse generation
  void release(std::uint64_t slot);

  void learning_epoch(AnchorId a, std::optional<std::size_t> group);
  AvailabilitySnapshot close_window(AnchorId a);
  void reload(AnchorId a);
  std::vector<ContentId> ranked_cache(AnchorId a) const;
  std::vector<ContentId> ferry_candidates(AnchorId a) const;
  std::vector<ContentId> learned_sequence(AnchorId a, std::optional<std::size_t> group) const;
  void plan_payloads(std::size_t group, AnchorId from, AnchorId to);
  void dump_qtable(AnchorId a);

  EpochCell& cell_for(Seconds t, AnchorId a);

  ScenarioConfig cfg_;
  EngineSinks sinks_;
  EngineOptions options_;
  Seconds horizon_ = 0.0;
  Seconds epoch_period_ = 0.0;
  TrajectorySchedule schedule_;
  std::vector<CommunityProfile> profiles_;  // one per anchor
  std::vector<Seconds> tads_;
  std::vector<std::vector<ContentId>> local_order_;  // per anchor preference order
  std::vector<std::vector<std::uint32_t>> local_pos_;  // inverse of local_order_
  CacheAssignment benchmark_;
  std::vector<std::vector<ContentId>> bench_seq_;
  std::vector<ContentSet> bench_sets_;
  EpsilonSchedule epsilon_;

  std::vector<AnchorState> anchors_;
  std::vector<GroupState> groups_;
  std::vector<std::vector<std::optional<std::size_t>>> leg_roster_;  // [next anchor][slot in group]
  std::vector<RequestGenerator> generators_;
  std::vector<Request> upcoming_;  // next generated request per community
  std::vector<Request> injected_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t seq_ = 0;
  Seconds clock_ = 0.0;
  bool finished_ = false;

  std::vector<Request> slab_;
  std::vector<std::uint32_t> slab_gen_;
  std::vector<std::uint64_t> free_slots_;
  std::vector<Request> resolved_;
  Totals totals_;
  std::vector<EpochCell> cells_;  // epoch * n_anchors + anchor
};

/// Global popularity ranking the engine derives from `seed` (community 0's
/// ranking). TAD override ranges in the config index positions of it.
std::vector<ContentId> shuffled_ranking(std::size_t n, std::uint64_t seed);

// Convenience: construct and run.
MetricsLog run(const ScenarioConfig& cfg, EngineSinks sinks = {});

}  // namespace uavcache
