/*
 * Copyright 2026 The pscsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psc/region.hpp"
#include "psc/schedule.hpp"
#include "psc/types.hpp"

namespace psc {

struct TaskCategory {
  CategoryId id = 0;
  std::string name;
  double cat_priority = 0.0;  // [0,1]
  double cat_reward = 1.0;    // > 0, divides in the task priority score
  friend bool operator==(const TaskCategory&, const TaskCategory&) = default;
};

struct TaskOwner {
  OwnerId id = 0;
  double pto_priority = 1.0;      // (0,1]
  double max_reward_raise = 0.0;  // total the owner will add to a reward, >= 0
  double raise_increment = 1.0;   // > 0
  friend bool operator==(const TaskOwner&, const TaskOwner&) = default;
};

struct Task {
  TaskId id = 0;
  OwnerId owner_id = 0;
  CategoryId category_id = 0;
  std::string description;
  std::optional<Minutes> window_start;  // earliest start
  std::optional<Minutes> window_end;    // latest start
  Minutes duration = 0;
  Minutes expiration = 0;
  Region region = Point{};
  double pto_reward = 1.0;
  double entered_priority = 0.0;  // [0,1]
  Minutes submit_time = 0;
  friend bool operator==(const Task&, const Task&) = default;
};

struct TrustCounters {
  std::int64_t assigned = 0;
  std::int64_t accepted = 0;
  std::int64_t completed = 0;
  double initial_score = 0.5;
  friend bool operator==(const TrustCounters&, const TrustCounters&) = default;
};

/// Trust assumed for a category the worker has no record in.
inline constexpr double kDefaultInitialTrust = 0.5;

/// Half-open busy interval on a worker's calendar.
struct Booking {
  Minutes start = 0;
  Minutes end = 0;
  friend bool operator==(const Booking&, const Booking&) = default;
};

struct Worker {
  WorkerId id = 0;
  /// Expected region over the week; the default value is the home region.
  WeeklySchedule<Region> pattern{Region{Point{}}};
  StatusSchedule status{0.0};
  std::map<CategoryId, double> reward_demand;
  std::map<CategoryId, TrustCounters> trust;
  std::vector<Booking> bookings;  // sorted, pairwise disjoint

  const Region& home() const { return pattern.default_value(); }
  TrustCounters trust_for(CategoryId c) const;

  /// True when [start, end) overlaps no booking.
  bool is_free(Minutes start, Minutes end) const;
  /// Inserts keeping order; throws std::logic_error on overlap.
  void book(Booking b);
  /// Removes an exact booking; returns false when absent.
  bool release(Booking b);

  friend bool operator==(const Worker&, const Worker&) = default;
};

struct Violation {
  std::string entity;  // "task", "worker", "owner", "category"
  std::int64_t id = 0;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every invariant breach in the given entities; empty means valid.
std::vector<Violation> validate_scenario(std::span<const Task> tasks,
                                         std::span<const Worker> workers,
                                         std::span<const TaskOwner> owners,
                                         std::span<const TaskCategory> categories);

std::string to_string(const Violation& v);

/// Region the worker is expected to occupy at t (home when no segment covers t).
inline const Region& expected_region_at(const Worker& w, Minutes t) { return w.pattern.value_at(t); }

}  // namespace psc
