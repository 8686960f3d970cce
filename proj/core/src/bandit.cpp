#include "uavcache/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "format.hpp"

namespace uavcache {

namespace {

void check_remotes(const AvailabilitySnapshot& own, std::span<const AvailabilitySnapshot> remotes,
                   std::size_t n_anchors) {
  if (n_anchors < 1) throw std::invalid_argument("compute_rewards: n_anchors must be >= 1");
  if (remotes.size() + 1 > n_anchors) throw std::invalid_argument("compute_rewards: more snapshots than anchors");
  for (std::size_t i = 0; i < remotes.size(); ++i) {
    if (remotes[i].origin == own.origin) {
      throw std::invalid_argument("compute_rewards: remote snapshot from the owning anchor");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (remotes[j].origin == remotes[i].origin) {
        throw std::invalid_argument("compute_rewards: duplicate remote anchor " + std::to_string(remotes[i].origin));
      }
    }
  }
}

RewardVector rewards_unchecked(ContentId content, const AvailabilitySnapshot& own,
                               std::span<const AvailabilitySnapshot> remotes, std::size_t n_anchors) {
  RewardVector r;
  const int mine = reward_indicator(own, content);
  int remote_sum = 0;
  for (const auto& s : remotes) remote_sum += reward_indicator(s, content);
  r.local = mine;
  r.ferrying = n_anchors > 1 ? static_cast<double>(remote_sum) / static_cast<double>(n_anchors - 1) : 0.0;
  r.global = static_cast<double>(mine + remote_sum) / static_cast<double>(n_anchors);
  return r;
}

}  // namespace

int reward_indicator(const AvailabilitySnapshot& snapshot, ContentId content) {
  if (content >= snapshot.per_content.size()) return 0;
  const ContentTally& t = snapshot.per_content[content];
  if (t.requests > 0) return t.delta >= 0.0 ? 1 : 0;
  return snapshot.aggregate_delta < 0.0 ? -1 : 0;
}

RewardVector compute_rewards(ContentId content, const AvailabilitySnapshot& own,
                             std::span<const AvailabilitySnapshot> remotes, std::size_t n_anchors) {
  check_remotes(own, remotes, n_anchors);
  return rewards_unchecked(content, own, remotes, n_anchors);
}

std::vector<RewardVector> compute_all_rewards(const AvailabilitySnapshot& own,
                                              std::span<const AvailabilitySnapshot> remotes,
                                              std::size_t n_anchors) {
  check_remotes(own, remotes, n_anchors);
  std::vector<RewardVector> out(own.per_content.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = rewards_unchecked(static_cast<ContentId>(c), own, remotes, n_anchors);
  }
  return out;
}

QTable::QTable(std::size_t n_contents, double learning_rate, double exploration_degree, LearningSchedule schedule)
    : q_(n_contents, 0.0),
      count_(n_contents, 0),
      updates_(n_contents, 0),
      learning_rate_(learning_rate),
      exploration_degree_(exploration_degree),
      schedule_(schedule) {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("QTable: learning rate must lie in (0, 1]");
  }
  if (!(exploration_degree >= 0.0)) throw std::invalid_argument("QTable: exploration degree must be >= 0");
}

double QTable::step_size(ContentId c) const {
  if (schedule_ == LearningSchedule::kHarmonic) return 1.0 / static_cast<double>(updates_[c] + 1);
  return learning_rate_;
}

void update_q(QTable& table, ContentId content, const RewardVector& rewards, bool ferry_in_range) {
  if (content >= table.size()) throw std::out_of_range("update_q: content out of range");
  const double a = table.step_size(content);
  double target = rewards.local;
  if (ferry_in_range) target += rewards.ferrying + rewards.global;
  table.set_q(content, (1.0 - a) * table.q(content) + a * target);
  table.note_update(content);
}

double ucb_score(const QTable& table, ContentId content) {
  const std::uint64_t n = table.requests(content);
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (table.exploration_degree() == 0.0) return table.q(content);
  const double t = static_cast<double>(std::max<std::uint64_t>(table.epoch(), 1));
  return table.q(content) + std::sqrt(table.exploration_degree() * std::log(t) / static_cast<double>(n));
}

std::vector<double> ucb_scores(const QTable& table) {
  std::vector<double> out(table.size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = ucb_score(table, static_cast<ContentId>(c));
  return out;
}

std::vector<ContentId> select_top_k(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) {
    throw std::invalid_argument("select_top_k: k=" + std::to_string(k) + " exceeds " + std::to_string(scores.size()));
  }
  std::vector<ContentId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), ContentId{0});
  const auto better = [&](ContentId a, ContentId b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), better);
  ids.resize(k);
  return ids;
}

double EpsilonSchedule::at(std::uint64_t epoch) const {
  return std::max(floor, initial * std::pow(decay, static_cast<double>(epoch)));
}

std::vector<ContentId> epsilon_greedy_select(std::span<const double> scores, std::size_t k, double epsilon,
                                             rng::Engine& engine) {
  if (k > scores.size()) {
    throw std::invalid_argument("epsilon_greedy_select: k=" + std::to_string(k) + " exceeds " +
                                std::to_string(scores.size()));
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon_greedy_select: epsilon outside [0,1]");
  const std::size_t n = scores.size();
  std::vector<ContentId> ranked(n);
  std::iota(ranked.begin(), ranked.end(), ContentId{0});
  std::stable_sort(ranked.begin(), ranked.end(), [&](ContentId a, ContentId b) { return scores[a] > scores[b]; });

  // Unchosen pool with O(1) removal: pool[pos[c]] == c while c is unchosen.
  std::vector<ContentId> pool(ranked);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[pool[i]] = i;
  std::vector<bool> chosen(n, false);
  const auto take = [&](ContentId c) {
    chosen[c] = true;
    const std::size_t i = pos[c];
    pool[i] = pool.back();
    pos[pool[i]] = i;
    pool.pop_back();
  };

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<ContentId> out;
  out.reserve(k);
  std::size_t greedy = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    ContentId c;
    if (epsilon > 0.0 && coin(engine) < epsilon) {
      std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
      c = pool[any(engine)];
    } else {
      while (chosen[ranked[greedy]]) ++greedy;
      c = ranked[greedy];
    }
    take(c);
    out.push_back(c);
  }
  return out;
}

double instantaneous_regret(std::span<const double> chosen_rewards, std::span<const double> oracle_rewards) {
  if (chosen_rewards.size() != oracle_rewards.size()) {
    throw std::invalid_argument("instantaneous_regret: chosen and oracle lengths differ");
  }
  const double chosen = std::accumulate(chosen_rewards.begin(), chosen_rewards.end(), 0.0);
  const double oracle = std::accumulate(oracle_rewards.begin(), oracle_rewards.end(), 0.0);
  return std::max(0.0, oracle - chosen);
}

void write_qtable_header(std::ostream& out) { out << "anchor,epoch,content,q,n_t,ucb\n"; }

void append_qtable_rows(std::ostream& out, AnchorId anchor, const QTable& table) {
  for (std::size_t c = 0; c < table.size(); ++c) {
    const auto id = static_cast<ContentId>(c);
    const double u = ucb_score(table, id);
    out << anchor << ',' << table.epoch() << ',' << c << ',' << detail::fixed6(table.q(id)) << ','
        << table.requests(id) << ',' << (std::isinf(u) ? std::string("inf") : detail::fixed6(u)) << '\n';
  }
}

}  // namespace uavcache
