#pragma once

#include <cstdint>
#include <set>

#include "railsim/geo.hpp"
#include "railsim/sim_time.hpp"

namespace railsim {

using EventId = std::uint32_t;

struct SocialEvent {
  EventId id = 0;
  GeoPoint location;
  SimTime start;
  SimTime end;
  std::set<int> age_groups;  // intended audience, values 1..6
  SimTime broadcast_from;

  bool valid() const {
    return start < end && broadcast_from <= start && !age_groups.empty();
  }
  bool targets(int age_group) const { return age_groups.count(age_group) > 0; }
  std::int64_t duration_s() const { return end - start; }
};

}  // namespace railsim
