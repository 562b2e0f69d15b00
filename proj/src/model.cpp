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

#include "psc/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace psc {

TrustCounters Worker::trust_for(CategoryId c) const {
  auto it = trust.find(c);
  if (it != trust.end()) return it->second;
  return TrustCounters{0, 0, 0, kDefaultInitialTrust};
}

bool Worker::is_free(Minutes start, Minutes end) const {
  // First booking ending after start is the only one that can overlap.
  auto it = std::upper_bound(bookings.begin(), bookings.end(), start,
                             [](Minutes s, const Booking& b) { return s < b.end; });
  return it == bookings.end() || it->start >= end;
}

void Worker::book(Booking b) {
  if (b.end <= b.start) throw std::logic_error("empty booking");
  if (!is_free(b.start, b.end)) {
    throw std::logic_error("booking overlaps worker " + std::to_string(id) + " calendar");
  }
  auto it = std::lower_bound(bookings.begin(), bookings.end(), b,
                             [](const Booking& x, const Booking& y) { return x.start < y.start; });
  bookings.insert(it, b);
}

bool Worker::release(Booking b) {
  auto it = std::find(bookings.begin(), bookings.end(), b);
  if (it == bookings.end()) return false;
  bookings.erase(it);
  return true;
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::vector<Violation> validate_scenario(std::span<const Task> tasks,
                                         std::span<const Worker> workers,
                                         std::span<const TaskOwner> owners,
                                         std::span<const TaskCategory> categories) {
  std::vector<Violation> out;
  auto flag = [&out](const char* entity, std::int64_t id, std::string msg) {
    out.push_back({entity, id, std::move(msg)});
  };

  std::set<CategoryId> category_ids;
  for (const auto& c : categories) {
    if (!category_ids.insert(c.id).second) flag("category", c.id, "duplicate id");
    if (!in_unit(c.cat_priority)) flag("category", c.id, "cat_priority outside [0,1]");
    if (!(c.cat_reward > 0.0)) flag("category", c.id, "cat_reward must be > 0");
  }

  std::set<OwnerId> owner_ids;
  for (const auto& o : owners) {
    if (!owner_ids.insert(o.id).second) flag("owner", o.id, "duplicate id");
    if (!(o.pto_priority > 0.0 && o.pto_priority <= 1.0)) {
      flag("owner", o.id, "pto_priority outside (0,1]");
    }
    if (!(o.max_reward_raise >= 0.0)) flag("owner", o.id, "max_reward_raise must be >= 0");
    if (!(o.raise_increment > 0.0)) flag("owner", o.id, "raise_increment must be > 0");
  }

  std::set<TaskId> task_ids;
  for (const auto& t : tasks) {
    if (!task_ids.insert(t.id).second) flag("task", t.id, "duplicate id");
    if (t.submit_time < 0) flag("task", t.id, "submit_time is negative");
    if (t.expiration < t.submit_time) flag("task", t.id, "expiration precedes submit_time");
    if (t.window_start && t.window_end && *t.window_start > *t.window_end) {
      flag("task", t.id, "start window is inverted");
    }
    if ((t.window_start && *t.window_start > t.expiration) ||
        (t.window_end && *t.window_end > t.expiration)) {
      flag("task", t.id, "start window extends past expiration");
    }
    if (t.duration < 0) flag("task", t.id, "duration is negative");
    if (!(t.pto_reward > 0.0)) flag("task", t.id, "pto_reward must be > 0");
    if (!in_unit(t.entered_priority)) flag("task", t.id, "entered_priority outside [0,1]");
    if (!is_valid(t.region)) flag("task", t.id, "invalid region");
    if (!owner_ids.contains(t.owner_id)) {
      flag("task", t.id, "unknown owner " + std::to_string(t.owner_id));
    }
    if (!category_ids.contains(t.category_id)) {
      flag("task", t.id, "unknown category " + std::to_string(t.category_id));
    }
  }

  std::set<WorkerId> worker_ids;
  for (const auto& w : workers) {
    if (!worker_ids.insert(w.id).second) flag("worker", w.id, "duplicate id");
    bool status_ok = in_unit(w.status.default_value());
    for (const auto& s : w.status.segments()) status_ok = status_ok && in_unit(s.value);
    if (!status_ok) flag("worker", w.id, "status value outside [0,1]");
    bool regions_ok = is_valid(w.pattern.default_value());
    for (const auto& s : w.pattern.segments()) regions_ok = regions_ok && is_valid(s.value);
    if (!regions_ok) flag("worker", w.id, "invalid pattern region");
    for (const auto& [cat, demand] : w.reward_demand) {
      if (!(demand >= 0.0)) flag("worker", w.id, "negative reward demand");
      if (!category_ids.contains(cat)) {
        flag("worker", w.id, "reward demand for unknown category " + std::to_string(cat));
      }
    }
    for (const auto& [cat, c] : w.trust) {
      if (!(c.assigned >= 0 && c.completed >= 0 && c.completed <= c.accepted &&
            c.accepted <= c.assigned)) {
        flag("worker", w.id, "trust counters violate completed <= accepted <= assigned");
      }
      if (!in_unit(c.initial_score)) flag("worker", w.id, "initial trust outside [0,1]");
      if (!category_ids.contains(cat)) {
        flag("worker", w.id, "trust record for unknown category " + std::to_string(cat));
      }
    }
    for (std::size_t i = 0; i < w.bookings.size(); ++i) {
      if (w.bookings[i].end <= w.bookings[i].start) {
        flag("worker", w.id, "empty booking interval");
      }
      if (i > 0 && w.bookings[i].start < w.bookings[i - 1].end) {
        flag("worker", w.id, "bookings overlap or are unsorted");
      }
    }
  }
  return out;
}

std::string to_string(const Violation& v) {
  return v.entity + " " + std::to_string(v.id) + ": " + v.message;
}

}  // namespace psc
