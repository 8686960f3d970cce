#include "uavcache/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace uavcache {

namespace {

constexpr std::uint64_t kInjected = std::uint64_t{1} << 40;

enum class BenchmarkKind { kSec, kPbc, kVbc };

BenchmarkKind pick_benchmark(const std::vector<CommunityProfile>& profiles, const std::vector<Seconds>& tads) {
  const bool uniform_tad = std::adjacent_find(tads.begin(), tads.end(), std::not_equal_to<>()) == tads.end();
  if (!uniform_tad) return BenchmarkKind::kVbc;
  for (const auto& p : profiles) {
    if (p.ranking != profiles.front().ranking) return BenchmarkKind::kPbc;
  }
  return BenchmarkKind::kSec;
}

// Ranking of the pooled demand of all communities, used by the FD policy.
CommunityProfile pooled_profile(const std::vector<CommunityProfile>& profiles, double alpha) {
  const std::size_t n = profiles.front().size();
  std::vector<double> mass(n, 0.0);
  for (const auto& p : profiles) {
    for (std::size_t c = 0; c < n; ++c) mass[c] += p.pmf[c];
  }
  std::vector<ContentId> ranking = identity_ranking(n);
  std::stable_sort(ranking.begin(), ranking.end(), [&](ContentId a, ContentId b) { return mass[a] > mass[b]; });
  return make_profile(0, alpha, std::move(ranking));
}

}  // namespace

std::vector<ContentId> shuffled_ranking(std::size_t n, std::uint64_t seed) {
  std::vector<ContentId> ranking = identity_ranking(n);
  auto eng = rng::make_engine(rng::derive_seed(seed, rng::Stream::kProfiles, 0));
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(ranking[i - 1], ranking[pick(eng)]);
  }
  return ranking;
}

Simulation::Simulation(const ScenarioConfig& cfg, EngineSinks sinks, EngineOptions options)
    : cfg_(cfg), sinks_(sinks), options_(options) {
  validate(cfg_);
  horizon_ = cfg_.horizon();
  epoch_period_ = cfg_.resolved_epoch_period();
  schedule_ = build_schedule(Topology{cfg_.n_anchors, cfg_.n_ferries, cfg_.group_size}, cfg_.trajectory_time,
                             cfg_.hover_ratio, cfg_.transit_ratio);
  epsilon_ = EpsilonSchedule{cfg_.epsilon_initial, cfg_.epsilon_decay, cfg_.epsilon_floor};

  const std::size_t n = cfg_.n_contents;
  const std::size_t n_anchors = cfg_.n_anchors;
  // Content ids carry no popularity information: the base ranking is a random
  // permutation, and TAD overrides address positions of that ranking.
  const std::vector<ContentId> base_ranking = shuffled_ranking(n, cfg_.seed);
  const std::vector<Seconds> tad_by_rank = resolved_tads(cfg_);
  tads_.resize(n);
  for (std::size_t r = 0; r < n; ++r) tads_[base_ranking[r]] = tad_by_rank[r];
  const auto base = build_profiles(base_ranking, cfg_.zipf_alpha, cfg_.n_profiles, cfg_.swap_prob, cfg_.seed,
                                   cfg_.swap_passes);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    profiles_.push_back(base[a % base.size()]);
    profiles_.back().community_id = static_cast<AnchorId>(a);
  }

  const double kappa = cfg_.kappa;
  const KappaFn kappa_fn = [kappa](std::size_t) { return kappa; };
  const BenchmarkKind kind = pick_benchmark(profiles_, tads_);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    local_order_.push_back(kind == BenchmarkKind::kVbc ? value_ranking(profiles_[a], tads_, kappa_fn)
                                                       : profiles_[a].ranking);
    std::vector<std::uint32_t> pos(n);
    for (std::size_t r = 0; r < n; ++r) pos[local_order_[a][r]] = static_cast<std::uint32_t>(r);
    local_pos_.push_back(std::move(pos));
  }
  switch (kind) {
    case BenchmarkKind::kSec: benchmark_ = sec_policy(profiles_, cfg_.cache_anchor, cfg_.lambda); break;
    case BenchmarkKind::kPbc: benchmark_ = pbc_policy(profiles_, cfg_.cache_anchor, cfg_.lambda); break;
    case BenchmarkKind::kVbc: benchmark_ = vbc_policy(profiles_, tads_, cfg_.cache_anchor, cfg_.lambda, kappa_fn); break;
  }
  const std::size_t effective = cfg_.n_ferries > 0 ? cfg_.group_size * cfg_.cache_ferry : 0;
  for (std::size_t a = 0; a < n_anchors; ++a) {
    bench_seq_.push_back(benchmark_sequence(benchmark_, static_cast<AnchorId>(a), effective, local_order_[a]));
    bench_sets_.emplace_back(n, benchmark_.caches[a]);
  }

  CacheAssignment preload;
  switch (cfg_.policy) {
    case Policy::kFd: preload = fd_policy(pooled_profile(profiles_, cfg_.zipf_alpha), cfg_.cache_anchor, n_anchors); break;
    case Policy::kSec: preload = sec_policy(profiles_, cfg_.cache_anchor, cfg_.lambda); break;
    case Policy::kPbc: preload = pbc_policy(profiles_, cfg_.cache_anchor, cfg_.lambda); break;
    case Policy::kVbc: preload = vbc_policy(profiles_, tads_, cfg_.cache_anchor, cfg_.lambda, kappa_fn); break;
    case Policy::kMabEps:
    case Policy::kMabUcb: break;
  }

  anchors_.resize(n_anchors);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    AnchorState& st = anchors_[a];
    st.cache = ContentSet(n);
    st.q = QTable(n, cfg_.learning_rate, cfg_.alpha_u, cfg_.learning_rate_schedule);
    st.explore = rng::make_engine(rng::derive_seed(cfg_.seed, rng::Stream::kExploration, a));
    st.current.per_content.assign(n, {});
    st.previous.per_content.assign(n, {});
    st.pending.resize(n);
    if (is_learning(cfg_.policy)) {
      // Uniformly random initial cache: partial Fisher-Yates over the catalog.
      auto eng = rng::make_engine(rng::derive_seed(cfg_.seed, rng::Stream::kInitialCaches, a));
      std::vector<ContentId> ids = identity_ranking(n);
      for (std::size_t i = 0; i < cfg_.cache_anchor; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(ids[i], ids[pick(eng)]);
      }
      ids.resize(cfg_.cache_anchor);
      set_cache(static_cast<AnchorId>(a), std::move(ids));
    } else {
      set_cache(static_cast<AnchorId>(a), preload.caches[a]);
    }
  }

  const std::size_t n_groups = schedule_.topology.n_groups();
  groups_.resize(n_groups);
  for (std::size_t g = 0; g < n_groups; ++g) {
    groups_[g].payloads.resize(schedule_.topology.ferries_in(g));
    groups_[g].carried = ContentSet(n);
    groups_[g].mailbox.resize(n_anchors);
  }
  leg_roster_.assign(n_anchors, std::vector<std::optional<std::size_t>>(cfg_.group_size));
  cells_.resize(static_cast<std::size_t>(cfg_.epochs) * n_anchors);

  // Groups start wherever their phase puts them at t = 0, carrying what the
  // anchor behind them would have handed over.
  for (std::size_t g = 0; g < n_groups; ++g) {
    long long k = -2 * static_cast<long long>(n_anchors);
    while (contact_at(g, k).time < 0.0) ++k;
    groups_[g].next_contact = k;
    const ContactEvent first = contact_at(g, k);
    plan_payloads(g, schedule_.previous_anchor(first.anchor), first.anchor);
    if (first.kind == ContactKind::kDeparture) {
      groups_[g].hovering = first.anchor;
      anchors_[first.anchor].hovering_groups.push_back(g);
    }
    schedule_next_contact(g);
  }

  if (options_.generate_requests) {
    generators_.reserve(n_anchors);
    upcoming_.resize(n_anchors);
    for (std::size_t a = 0; a < n_anchors; ++a) {
      generators_.emplace_back(profiles_[a], cfg_.request_rate, horizon_, tads_, cfg_.seed);
      pull_request(static_cast<AnchorId>(a));
    }
  }
  if (n_groups == 0 && epoch_period_ < horizon_) {
    for (std::size_t a = 0; a < n_anchors; ++a) push(epoch_period_, EventKind::kLearningTick, a);
  }
  push(horizon_, EventKind::kHorizonEnd, 0);
}

void Simulation::push(Seconds t, EventKind kind, std::uint64_t ref) { queue_.push(Event{t, kind, seq_++, ref}); }

void Simulation::pull_request(AnchorId community) {
  Request r;
  if (generators_[community].next(r)) {
    upcoming_[community] = r;
    push(r.time, EventKind::kRequest, community);
  }
}

ContactEvent Simulation::contact_at(std::size_t group, long long n) const {
  const long long per_cycle = 2 * static_cast<long long>(schedule_.order.size());
  long long cycle = n / per_cycle;
  long long within = n % per_cycle;
  if (within < 0) {
    within += per_cycle;
    --cycle;
  }
  const auto pos = static_cast<std::size_t>(within / 2);
  const bool departure = within % 2 == 1;
  Seconds base = schedule_.phase_offsets[group] + static_cast<double>(pos) * schedule_.slot_time();
  if (departure) base += schedule_.hover_time();
  return ContactEvent{base + static_cast<double>(cycle) * schedule_.trajectory_time, group, schedule_.order[pos],
                      departure ? ContactKind::kDeparture : ContactKind::kArrival};
}

void Simulation::schedule_next_contact(std::size_t group) {
  const ContactEvent c = contact_at(group, groups_[group].next_contact);
  if (c.time < horizon_) {
    push(c.time, c.kind == ContactKind::kArrival ? EventKind::kFerryArrival : EventKind::kFerryDeparture, group);
  }
}

void Simulation::process_until(Seconds t) {
  while (!finished_ && !queue_.empty() && queue_.top().time < t) {
    const Event e = queue_.top();
    queue_.pop();
    clock_ = e.time;
    dispatch(e);
  }
}

void Simulation::finish() { process_until(std::numeric_limits<double>::infinity()); }

void Simulation::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::kRequest: {
      if (e.ref >= kInjected) {
        handle_request(injected_[e.ref - kInjected]);
      } else {
        const auto a = static_cast<AnchorId>(e.ref);
        const Request r = upcoming_[a];
        pull_request(a);
        handle_request(r);
      }
      break;
    }
    case EventKind::kFerryArrival:
    case EventKind::kFerryDeparture: {
      const std::size_t g = e.ref;
      const ContactEvent c = contact_at(g, groups_[g].next_contact);
      ++groups_[g].next_contact;
      if (c.kind == ContactKind::kArrival) handle_ferry_arrival(c);
      else handle_ferry_departure(c);
      schedule_next_contact(g);
      break;
    }
    case EventKind::kDeadlineExpiry: expire(e.ref); break;
    case EventKind::kLearningTick: {
      const auto a = static_cast<AnchorId>(e.ref);
      learning_epoch(a, std::nullopt);
      const double k = std::round(e.time / epoch_period_) + 1.0;
      if (k * epoch_period_ < horizon_) push(k * epoch_period_, EventKind::kLearningTick, a);
      break;
    }
    case EventKind::kHorizonEnd: {
      for (auto& st : anchors_) {
        for (auto& list : st.pending) {
          for (std::uint64_t slot : list) download(slot);
          list.clear();
        }
      }
      if (sinks_.qtable) {
        for (std::size_t a = 0; a < anchors_.size(); ++a) dump_qtable(static_cast<AnchorId>(a));
      }
      finished_ = true;
      break;
    }
  }
}

void Simulation::inject_request(Request r) {
  if (r.community >= anchors_.size()) throw std::invalid_argument("inject_request: unknown community");
  if (r.content >= cfg_.n_contents) throw std::invalid_argument("inject_request: unknown content");
  injected_.push_back(r);
  push(r.time, EventKind::kRequest, kInjected + injected_.size() - 1);
}

Simulation::EpochCell& Simulation::cell_for(Seconds t, AnchorId a) {
  auto e = static_cast<std::uint64_t>(std::max(0.0, std::floor(t / epoch_period_)));
  e = std::min<std::uint64_t>(e, cfg_.epochs > 0 ? cfg_.epochs - 1 : 0);
  return cells_[e * anchors_.size() + a];
}

bool Simulation::locally_available(AnchorId a, ContentId c) const {
  if (anchors_[a].cache.contains(c)) return true;
  for (std::size_t g : anchors_[a].hovering_groups) {
    if (groups_[g].carried.contains(c)) return true;
  }
  return false;
}

void Simulation::handle_request(const Request& in) {
  Request r = in;
  const AnchorId a = r.community;
  AnchorState& st = anchors_[a];
  ++totals_.requests;
  if (!cells_.empty()) ++cell_for(r.time, a).requests;
  ++st.current.per_content[r.content].requests;
  ++st.current.requests;
  st.q.record_request(r.content);
  if (locally_available(a, r.content)) {
    record_hit(r);
    return;
  }
  admit(r);
}

void Simulation::admit(const Request& r) {
  std::uint64_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
    slab_[slot] = r;
  } else {
    slot = slab_.size();
    slab_.push_back(r);
    slab_gen_.push_back(0);
  }
  slab_[slot].outcome = Outcome::kPending;
  anchors_[r.community].pending[r.content].push_back(slot);
  ++totals_.pending;
  if (r.deadline < horizon_) push(r.deadline, EventKind::kDeadlineExpiry, tag(slot));
}

void Simulation::record_hit(Request& r) {
  r.outcome = Outcome::kHit;
  r.delay = clock_ - r.time;
  ++totals_.hits;
  if (!cells_.empty()) {
    EpochCell& cell = cell_for(r.time, r.community);
    ++cell.hits;
    cell.delay_sum += r.delay;
  }
  AnchorState& st = anchors_[r.community];
  if (r.time >= st.window_start) {
    ++st.current.per_content[r.content].hits;
    ++st.current.hits;
  }
  if (options_.keep_request_log) resolved_.push_back(r);
}

void Simulation::serve_pending(AnchorId a, ContentId c) {
  auto& list = anchors_[a].pending[c];
  for (std::uint64_t slot : list) {
    record_hit(slab_[slot]);
    --totals_.pending;
    release(slot);
  }
  list.clear();
}

std::uint64_t Simulation::tag(std::uint64_t slot) const { return (std::uint64_t{slab_gen_[slot]} << 32) | slot; }

void Simulation::release(std::uint64_t slot) {
  ++slab_gen_[slot];
  free_slots_.push_back(slot);
}

void Simulation::expire(std::uint64_t tagged) {
  const std::uint64_t slot = tagged & 0xffffffffULL;
  if (slab_gen_[slot] != (tagged >> 32)) return;  // served earlier; the slot has moved on
  Request& r = slab_[slot];
  if (r.outcome != Outcome::kPending) return;
  auto& list = anchors_[r.community].pending[r.content];
  list.erase(std::find(list.begin(), list.end(), slot));
  download(slot);
}

void Simulation::download(std::uint64_t slot) {
  Request& r = slab_[slot];
  r.outcome = Outcome::kDownloaded;
  ++totals_.downloads;
  --totals_.pending;
  if (!cells_.empty()) ++cell_for(r.time, r.community).downloads;
  if (options_.keep_request_log) resolved_.push_back(r);
  release(slot);
}

void Simulation::handle_ferry_arrival(const ContactEvent& contact) {
  const std::size_t g = contact.ferry_group;
  const AnchorId a = contact.anchor;
  for (const auto& payload : groups_[g].payloads) {
    for (ContentId c : payload) serve_pending(a, c);
  }
  groups_[g].hovering = a;
  anchors_[a].hovering_groups.push_back(g);
  learning_epoch(a, g);
}

void Simulation::handle_ferry_departure(const ContactEvent& contact) {
  const std::size_t g = contact.ferry_group;
  const AnchorId from = contact.anchor;
  groups_[g].hovering.reset();
  auto& hov = anchors_[from].hovering_groups;
  hov.erase(std::remove(hov.begin(), hov.end(), g), hov.end());
  plan_payloads(g, from, schedule_.next_anchor(from));
}

AvailabilitySnapshot Simulation::close_window(AnchorId a) {
  AnchorState& st = anchors_[a];
  AvailabilitySnapshot snap;
  snap.origin = a;
  snap.window_start = st.window_start;
  snap.window_end = clock_;
  snap.per_content = st.current.per_content;
  if (st.have_previous) {
    for (std::size_t c = 0; c < snap.per_content.size(); ++c) {
      const ContentTally& cur = st.current.per_content[c];
      const ContentTally& prev = st.previous.per_content[c];
      if (cur.requests > 0 && prev.requests > 0) {
        snap.per_content[c].delta = static_cast<double>(cur.hits) / cur.requests -
                                    static_cast<double>(prev.hits) / prev.requests;
      }
    }
    if (st.current.requests > 0 && st.previous.requests > 0) {
      snap.aggregate_delta = static_cast<double>(st.current.hits) / static_cast<double>(st.current.requests) -
                             static_cast<double>(st.previous.hits) / static_cast<double>(st.previous.requests);
    }
  }
  std::swap(st.previous, st.current);
  std::fill(st.current.per_content.begin(), st.current.per_content.end(), ContentTally{});
  st.current.requests = st.current.hits = 0;
  st.have_previous = true;
  st.window_start = clock_;
  return snap;
}

void Simulation::learning_epoch(AnchorId a, std::optional<std::size_t> group) {
  AnchorState& st = anchors_[a];
  AvailabilitySnapshot own = close_window(a);

  std::vector<AvailabilitySnapshot> remotes;
  if (group) {
    for (std::size_t o = 0; o < anchors_.size(); ++o) {
      const auto& entry = groups_[*group].mailbox[o];
      if (o != a && entry) remotes.push_back(*entry);
    }
  }
  const bool ferry_in_range = group.has_value();
  const auto rewards = compute_all_rewards(own, remotes, anchors_.size());
  std::vector<double> total(rewards.size());
  for (std::size_t c = 0; c < rewards.size(); ++c) {
    total[c] = rewards[c].local + (ferry_in_range ? rewards[c].ferrying + rewards[c].global : 0.0);
  }

  std::vector<double> chosen, oracle;
  for (ContentId c : st.cache_list) chosen.push_back(total[c]);
  for (ContentId c : benchmark_.caches[a]) oracle.push_back(total[c]);
  chosen.resize(std::max(chosen.size(), oracle.size()), 0.0);
  oracle.resize(chosen.size(), 0.0);
  const double regret = instantaneous_regret(chosen, oracle);

  if (is_learning(cfg_.policy)) {
    st.q.advance_epoch();
    for (std::size_t c = 0; c < rewards.size(); ++c) update_q(st.q, static_cast<ContentId>(c), rewards[c], ferry_in_range);
    reload(a);
    for (ContentId c : st.cache_list) {
      if (!st.pending[c].empty()) serve_pending(a, c);
    }
  }

  const double cdo_value = cdo(learned_sequence(a, group), bench_seq_[a]);
  if (!cells_.empty()) {
    EpochCell& cell = cell_for(clock_, a);
    cell.cdo_sum += cdo_value;
    ++cell.cdo_n;
    cell.regret_sum += regret;
    ++cell.regret_n;
  }
  if (group) groups_[*group].mailbox[a] = std::move(own);
  ++st.learning_epochs;
  if (sinks_.qtable && cfg_.qtable_dump_interval > 0 && st.learning_epochs % cfg_.qtable_dump_interval == 0) {
    dump_qtable(a);
  }
}

void Simulation::reload(AnchorId a) {
  AnchorState& st = anchors_[a];
  std::vector<ContentId> next;
  if (cfg_.policy == Policy::kMabUcb) {
    next = select_top_k(ucb_scores(st.q), cfg_.cache_anchor);
  } else {
    std::vector<double> q(st.q.size());
    for (std::size_t c = 0; c < q.size(); ++c) q[c] = st.q.q(static_cast<ContentId>(c));
    next = epsilon_greedy_select(q, cfg_.cache_anchor, epsilon_.at(st.learning_epochs), st.explore);
  }
  set_cache(a, std::move(next));
}

std::vector<ContentId> Simulation::ranked_cache(AnchorId a) const {
  const AnchorState& st = anchors_[a];
  std::vector<ContentId> out = st.cache_list;
  if (is_learning(cfg_.policy)) {
    std::sort(out.begin(), out.end(), [&](ContentId x, ContentId y) {
      return st.q.q(x) > st.q.q(y) || (st.q.q(x) == st.q.q(y) && x < y);
    });
  } else {
    const auto& pos = local_pos_[a];
    std::sort(out.begin(), out.end(), [&](ContentId x, ContentId y) { return pos[x] < pos[y]; });
  }
  return out;
}

std::vector<ContentId> Simulation::ferry_candidates(AnchorId a) const {
  if (!is_learning(cfg_.policy)) return ranked_cache(a);
  // Learning anchors rank the whole catalog; the next anchor's cache is filtered by the caller.
  const QTable& q = anchors_[a].q;
  std::vector<ContentId> out(cfg_.n_contents);
  std::iota(out.begin(), out.end(), ContentId{0});
  std::sort(out.begin(), out.end(), [&](ContentId x, ContentId y) {
    return q.q(x) > q.q(y) || (q.q(x) == q.q(y) && x < y);
  });
  return out;
}

std::vector<ContentId> Simulation::learned_sequence(AnchorId a, std::optional<std::size_t> group) const {
  const AnchorState& st = anchors_[a];
  std::vector<ContentId> seq;
  if (cfg_.policy == Policy::kMabUcb) {
    std::vector<std::pair<double, ContentId>> scored;
    for (ContentId c : st.cache_list) scored.emplace_back(ucb_score(st.q, c), c);
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
      return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    for (const auto& [score, c] : scored) seq.push_back(c);
  } else {
    seq = ranked_cache(a);
  }
  const std::size_t limit = bench_seq_[a].size();
  if (group) {
    ContentSet seen(cfg_.n_contents, seq);
    for (const auto& payload : groups_[*group].payloads) {
      for (ContentId c : payload) {
        if (seq.size() >= limit) break;
        if (seen.contains(c)) continue;
        seen.insert(c);
        seq.push_back(c);
      }
    }
  }
  if (seq.size() > limit) seq.resize(limit);
  return seq;
}

void Simulation::plan_payloads(std::size_t g, AnchorId from, AnchorId to) {
  GroupState& grp = groups_[g];
  const std::vector<ContentId> ranked = ranked_cache(from);
  const ContentSet& next_cache = anchors_[to].cache;
  const std::size_t first_ferry = schedule_.topology.first_ferry(g);
  std::vector<FerryDecision> decisions;

  if (cfg_.selective_caching) {
    const std::vector<ContentId> candidates = ferry_candidates(from);
    FerryKnowledge know;
    for (ContentId c : candidates) {
      if (!next_cache.contains(c)) know.ferryable.push_back(c);
    }
    know.tads = tads_;
    know.visit_gap = schedule_.visit_gap();
    know.co_flyers = grp.payloads.size();
    const auto rosters = build_rosters(know.ferryable, cfg_.cache_ferry);
    GapEstimator gap;
    if (cfg_.inter_request_estimate == GapMode::kAnalytic) {
      gap = analytic_gap(profiles_[to], cfg_.request_rate);
    } else {
      const QTable& tally = anchors_[to].q;
      const Seconds elapsed = clock_;
      gap = [&tally, elapsed](ContentId c) {
        const auto n = tally.requests(c);
        return n > 0 && elapsed > 0.0 ? elapsed / static_cast<double>(n) : std::numeric_limits<double>::infinity();
      };
    }
    std::vector<std::vector<ContentId>> planned;
    for (std::size_t j = 0; j < grp.payloads.size(); ++j) {
      FerryDecision d{clock_, first_ferry + j, from, to, std::nullopt, 0, {}};
      if (!rosters.empty()) {
        know.previous_roster = leg_roster_[to][j];
        const Roster& roster = select_roster(know, rosters, gap);
        auto div = diversify_group(roster.contents, planned, next_cache, candidates);
        d.roster_index = roster.index;
        d.empty_slots = div.empty_slots;
        d.carried = std::move(div.contents);
        leg_roster_[to][j] = roster.index;
      }
      planned.push_back(d.carried);
      decisions.push_back(std::move(d));
    }
  } else {
    const std::size_t take = std::min(cfg_.cache_ferry, ranked.size());
    const std::vector<ContentId> top(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take));
    for (std::size_t j = 0; j < grp.payloads.size(); ++j) {
      decisions.push_back(FerryDecision{clock_, first_ferry + j, from, to, std::nullopt, 0, top});
    }
  }

  grp.carried.clear();
  for (std::size_t j = 0; j < decisions.size(); ++j) {
    grp.payloads[j] = decisions[j].carried;
    for (ContentId c : grp.payloads[j]) grp.carried.insert(c);
    if (sinks_.ferry_log) append_ferry_decision(*sinks_.ferry_log, decisions[j]);
  }
}

void Simulation::set_cache(AnchorId a, std::vector<ContentId> contents) {
  AnchorState& st = anchors_.at(a);
  if (contents.size() > cfg_.cache_anchor) throw std::invalid_argument("set_cache: exceeds anchor capacity");
  ContentSet next(cfg_.n_contents);
  for (ContentId c : contents) {
    if (c >= cfg_.n_contents || next.contains(c)) throw std::invalid_argument("set_cache: bad or duplicate content");
    next.insert(c);
  }
  st.cache = std::move(next);
  st.cache_list = std::move(contents);
}

void Simulation::set_payload(std::size_t group, std::size_t slot, std::vector<ContentId> contents) {
  GroupState& grp = groups_.at(group);
  if (contents.size() > cfg_.cache_ferry) throw std::invalid_argument("set_payload: exceeds ferry capacity");
  grp.payloads.at(slot) = std::move(contents);
  grp.carried.clear();
  for (const auto& p : grp.payloads) {
    for (ContentId c : p) grp.carried.insert(c);
  }
}

void Simulation::dump_qtable(AnchorId a) { append_qtable_rows(*sinks_.qtable, a, anchors_[a].q); }

MetricsLog Simulation::metrics() const {
  MetricsLog log;
  log.config_hash = config_hash(cfg_);
  log.seed = cfg_.seed;
  const std::size_t n_anchors = anchors_.size();
  for (std::uint64_t e = 0; e < cfg_.epochs; ++e) {
    for (std::size_t a = 0; a < n_anchors; ++a) {
      const EpochCell& cell = cells_[e * n_anchors + a];
      MetricsRow row;
      row.epoch = e;
      row.time_s = quantize(static_cast<double>(e + 1) * epoch_period_);
      row.anchor = static_cast<AnchorId>(a);
      row.requests = cell.requests;
      row.hits = cell.hits;
      row.downloads = cell.downloads;
      if (auto v = availability(cell.hits, cell.requests)) row.availability = quantize(*v);
      if (cell.hits) row.mean_delay_s = quantize(cell.delay_sum / static_cast<double>(cell.hits));
      if (cell.cdo_n) row.cdo = quantize(cell.cdo_sum / static_cast<double>(cell.cdo_n));
      if (cell.regret_n) row.regret = quantize(cell.regret_sum / static_cast<double>(cell.regret_n));
      log.rows.push_back(row);
    }
  }
  return log;
}

MetricsLog Simulation::run() {
  finish();
  return metrics();
}

MetricsLog run(const ScenarioConfig& cfg, EngineSinks sinks) {
  Simulation sim(cfg, sinks);
  return sim.run();
}

}  // namespace uavcache
