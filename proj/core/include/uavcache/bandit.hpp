#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "uavcache/rng.hpp"
#include "uavcache/types.hpp"

namespace uavcache {

struct ContentTally {
  std::uint32_t requests = 0;
  std::uint32_t hits = 0;  // served within TAD
  double delta = 0.0;      // availability change against the previous window
};

// What one anchor observed over one learning-epoch window.
struct AvailabilitySnapshot {
  AnchorId origin = 0;
  Seconds window_start = 0.0;
  Seconds window_end = 0.0;
  std::vector<ContentTally> per_content;
  double aggregate_delta = 0.0;  // change of the anchor's overall availability
};

struct RewardVector {
  double local = 0.0;
  double ferrying = 0.0;
  double global = 0.0;
};

// +1 when `content` was requested in the window and its availability did not
// drop; -1 when it was not requested and the anchor's availability fell; else 0.
int reward_indicator(const AvailabilitySnapshot& snapshot, ContentId content);

/// Local, ferrying and global rewards of `content` for the agent owning
/// `own`. `remotes` must come from distinct anchors other than own.origin;
/// anchors without a snapshot contribute zero.
RewardVector compute_rewards(ContentId content, const AvailabilitySnapshot& own,
                             std::span<const AvailabilitySnapshot> remotes, std::size_t n_anchors);

// Same as compute_rewards, for every content at once.
std::vector<RewardVector> compute_all_rewards(const AvailabilitySnapshot& own,
                                              std::span<const AvailabilitySnapshot> remotes,
                                              std::size_t n_anchors);

enum class LearningSchedule {
  kConstant,  // fixed alpha
  kHarmonic,  // alpha_n = 1/n over a content's own updates
};

class QTable {
 public:
  QTable() = default;
  QTable(std::size_t n_contents, double learning_rate, double exploration_degree,
         LearningSchedule schedule = LearningSchedule::kConstant);

  std::size_t size() const { return q_.size(); }
  double q(ContentId c) const { return q_[c]; }
  std::uint64_t requests(ContentId c) const { return count_[c]; }
  std::uint64_t updates(ContentId c) const { return updates_[c]; }
  std::uint64_t epoch() const { return epoch_; }
  double learning_rate() const { return learning_rate_; }
  double exploration_degree() const { return exploration_degree_; }
  LearningSchedule schedule() const { return schedule_; }

  void advance_epoch() { ++epoch_; }
  void record_request(ContentId c, std::uint64_t n = 1) { count_[c] += n; }

  // Step size the next update of `c` will use.
  double step_size(ContentId c) const;

  // Raw write used by update_q and by tests that seed a table.
  void set_q(ContentId c, double value) { q_[c] = value; }
  void note_update(ContentId c) { ++updates_[c]; }

 private:
  std::vector<double> q_;
  std::vector<std::uint64_t> count_;
  std::vector<std::uint64_t> updates_;
  std::uint64_t epoch_ = 0;
  double learning_rate_ = 0.1;
  double exploration_degree_ = 2.0;
  LearningSchedule schedule_ = LearningSchedule::kConstant;
};

/// Q <- (1 - a) Q + a (local + [ferry_in_range] (ferrying + global)).
void update_q(QTable& table, ContentId content, const RewardVector& rewards, bool ferry_in_range);

/// Q + sqrt(alpha_u ln t / N_t); +inf for never-requested contents.
double ucb_score(const QTable& table, ContentId content);
std::vector<double> ucb_scores(const QTable& table);

/// The k best contents, best first; equal scores resolve to the lower id.
std::vector<ContentId> select_top_k(std::span<const double> scores, std::size_t k);

struct EpsilonSchedule {
  double initial = 1.0;
  double decay = 0.995;  // multiplicative, per epoch
  double floor = 0.05;

  double at(std::uint64_t epoch) const;
};

/// Fills k slots; each slot is a uniformly random unchosen content with
/// probability epsilon, otherwise the best unchosen one.
std::vector<ContentId> epsilon_greedy_select(std::span<const double> scores, std::size_t k, double epsilon,
                                             rng::Engine& engine);

/// max(0, sum(oracle) - sum(chosen)).
double instantaneous_regret(std::span<const double> chosen_rewards, std::span<const double> oracle_rewards);

// Q-table dump, header `anchor,epoch,content,q,n_t,ucb`.
void write_qtable_header(std::ostream& out);
void append_qtable_rows(std::ostream& out, AnchorId anchor, const QTable& table);

}  // namespace uavcache
