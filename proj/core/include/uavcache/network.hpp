#pragma once

#include <cstddef>
#include <vector>

#include "uavcache/types.hpp"

namespace uavcache {

struct Topology {
  std::size_t n_anchors = 1;
  std::size_t n_ferries = 0;
  std::size_t group_size = 1;  // co-flying ferries per group

  std::size_t n_groups() const { return n_ferries == 0 ? 0 : (n_ferries + group_size - 1) / group_size; }
  std::size_t group_of(std::size_t ferry) const { return ferry / group_size; }
  std::size_t first_ferry(std::size_t group) const { return group * group_size; }
  std::size_t ferries_in(std::size_t group) const;
};

// Round-robin trajectory shared by all groups; groups differ only by phase.
struct TrajectorySchedule {
  Topology topology;
  Seconds trajectory_time = 0.0;
  double hover_ratio = 0.0;
  double transit_ratio = 0.0;
  std::vector<AnchorId> order;         // cyclic visit order
  std::vector<Seconds> phase_offsets;  // one per group, in [0, trajectory_time)

  Seconds hover_time() const { return hover_ratio * trajectory_time; }
  Seconds transit_time() const { return transit_ratio * trajectory_time; }
  Seconds slot_time() const { return hover_time() + transit_time(); }
  // Time between consecutive group arrivals at any one anchor.
  Seconds visit_gap() const;
  AnchorId next_anchor(AnchorId a) const;
  AnchorId previous_anchor(AnchorId a) const;
  std::size_t position_of(AnchorId a) const;
};

enum class ContactKind { kArrival, kDeparture };

struct ContactEvent {
  Seconds time = 0.0;
  std::size_t ferry_group = 0;
  AnchorId anchor = 0;
  ContactKind kind = ContactKind::kArrival;

  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

/// Evenly phased round-robin schedule. Throws std::invalid_argument when
/// n_anchors * (hover_ratio + transit_ratio) differs from 1 by more than 1e-9.
TrajectorySchedule build_schedule(const Topology& topology, Seconds trajectory_time, double hover_ratio,
                                  double transit_ratio);

/// Contacts with time in [start, end), sorted by time then group; a group's
/// departure precedes its own arrival at the same instant, then anchor id.
std::vector<ContactEvent> contacts_in(const TrajectorySchedule& schedule, Seconds start, Seconds end);

/// Group visits per second at `anchor`.
double visiting_frequency(const TrajectorySchedule& schedule, AnchorId anchor);

}  // namespace uavcache
