#include "uavcache/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace uavcache {

std::size_t Topology::ferries_in(std::size_t group) const {
  const std::size_t first = first_ferry(group);
  if (first >= n_ferries) return 0;
  return std::min(group_size, n_ferries - first);
}

Seconds TrajectorySchedule::visit_gap() const {
  const std::size_t groups = topology.n_groups();
  if (groups == 0) return std::numeric_limits<Seconds>::infinity();
  return trajectory_time / static_cast<double>(groups);
}

std::size_t TrajectorySchedule::position_of(AnchorId a) const {
  const auto it = std::find(order.begin(), order.end(), a);
  if (it == order.end()) throw std::invalid_argument("unknown anchor " + std::to_string(a));
  return static_cast<std::size_t>(it - order.begin());
}

AnchorId TrajectorySchedule::next_anchor(AnchorId a) const { return order[(position_of(a) + 1) % order.size()]; }

AnchorId TrajectorySchedule::previous_anchor(AnchorId a) const {
  return order[(position_of(a) + order.size() - 1) % order.size()];
}

TrajectorySchedule build_schedule(const Topology& topology, Seconds trajectory_time, double hover_ratio,
                                  double transit_ratio) {
  if (topology.n_anchors == 0) throw std::invalid_argument("build_schedule: need at least one anchor");
  if (topology.group_size == 0) throw std::invalid_argument("build_schedule: group_size must be >= 1");
  if (topology.n_ferries > 0 && topology.group_size > topology.n_ferries) {
    throw std::invalid_argument("build_schedule: group_size exceeds the ferry fleet");
  }
  if (!(trajectory_time > 0.0)) throw std::invalid_argument("build_schedule: trajectory_time must be > 0");
  if (!(hover_ratio > 0.0) || transit_ratio < 0.0) {
    throw std::invalid_argument("build_schedule: hover_ratio must be > 0 and transit_ratio >= 0");
  }
  const double residual = static_cast<double>(topology.n_anchors) * (hover_ratio + transit_ratio) - 1.0;
  if (std::abs(residual) > 1e-9) {
    throw std::invalid_argument("build_schedule: cycle does not close, n_anchors*(hover+transit)-1 = " +
                                std::to_string(residual));
  }
  TrajectorySchedule s;
  s.topology = topology;
  s.trajectory_time = trajectory_time;
  s.hover_ratio = hover_ratio;
  s.transit_ratio = transit_ratio;
  s.order.resize(topology.n_anchors);
  std::iota(s.order.begin(), s.order.end(), AnchorId{0});
  const std::size_t groups = topology.n_groups();
  s.phase_offsets.resize(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    s.phase_offsets[g] = static_cast<double>(g) * trajectory_time / static_cast<double>(groups);
  }
  return s;
}

std::vector<ContactEvent> contacts_in(const TrajectorySchedule& schedule, Seconds start, Seconds end) {
  std::vector<ContactEvent> out;
  if (!(end > start)) return out;
  const Seconds period = schedule.trajectory_time;
  const auto emit = [&](Seconds base, std::size_t g, AnchorId a, ContactKind kind) {
    auto k = static_cast<long long>(std::floor((start - base) / period)) - 1;
    for (;; ++k) {
      const Seconds t = base + static_cast<double>(k) * period;
      if (t >= end) break;
      if (t >= start) out.push_back({t, g, a, kind});
    }
  };
  for (std::size_t g = 0; g < schedule.phase_offsets.size(); ++g) {
    for (std::size_t pos = 0; pos < schedule.order.size(); ++pos) {
      const Seconds arrival = schedule.phase_offsets[g] + static_cast<double>(pos) * schedule.slot_time();
      emit(arrival, g, schedule.order[pos], ContactKind::kArrival);
      emit(arrival + schedule.hover_time(), g, schedule.order[pos], ContactKind::kDeparture);
    }
  }
  std::sort(out.begin(), out.end(), [](const ContactEvent& a, const ContactEvent& b) {
    const int ka = a.kind == ContactKind::kDeparture ? 0 : 1;
    const int kb = b.kind == ContactKind::kDeparture ? 0 : 1;
    return std::tie(a.time, a.ferry_group, ka, a.anchor) < std::tie(b.time, b.ferry_group, kb, b.anchor);
  });
  return out;
}

double visiting_frequency(const TrajectorySchedule& schedule, AnchorId anchor) {
  if (anchor >= schedule.topology.n_anchors) {
    throw std::invalid_argument("visiting_frequency: unknown anchor " + std::to_string(anchor));
  }
  return static_cast<double>(schedule.topology.n_groups()) / schedule.trajectory_time;
}

}  // namespace uavcache
