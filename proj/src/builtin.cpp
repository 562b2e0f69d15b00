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

#include <cmath>
#include <numbers>

#include "psc/workload.hpp"

namespace psc {

namespace {

// Worker A: 3 mi away, free all day. Worker B: 1 mi away but gone to work
// ten minutes after the task shows up.
Scenario example1() {
  Scenario s;
  s.units = "km, minutes; miles converted at 1.609 km/mi";
  s.extent_km = Rect{-5.0, -5.0, 25.0, 10.0};
  s.velocity = VelocityProfile{WeeklySchedule<double>(30.0), 5.0};
  s.categories = {{1, "flower-delivery", 0.5, 20.0}};
  s.owners = {{1, 1.0, 0.0, 1.0}};

  Worker a;
  a.id = 1;
  a.pattern = WeeklySchedule<Region>(Region{Point{0.0, 3 * kKmPerMile}});
  a.status = StatusSchedule({{DaySet::all(), 0, 1440, 1.0}}, 0.0);
  a.reward_demand = {{1, 5.0}};
  a.trust = {{1, {0, 0, 0, 0.9}}};

  Worker b;
  b.id = 2;
  const Point work{20.0, 0.0};
  b.pattern = WeeklySchedule<Region>(
      {{DaySet::weekdays(), 430, 480, Region{Rect{kKmPerMile, 0.0, work.x, 1.0}}},
       {DaySet::weekdays(), 480, 1020, Region{work}}},
      Region{Point{kKmPerMile, 0.0}});
  b.status = StatusSchedule({{DaySet::weekdays(), 420, 430, 1.0}}, 0.0);
  b.reward_demand = {{1, 5.0}};
  b.trust = {{1, {0, 0, 0, 0.9}}};
  s.workers = {a, b};

  Task t;
  t.id = 1;
  t.owner_id = 1;
  t.category_id = 1;
  t.description = "deliver a bouquet";
  t.duration = 30;
  t.submit_time = 420;  // Monday 07:00
  t.expiration = 510;
  t.region = Point{0.0, 0.0};
  t.pto_reward = 20.0;
  t.entered_priority = 0.5;
  s.tasks = {t};
  return s;
}

// Twenty office workers clustered at a government building, barely available
// during work hours, and one distant worker who is free.
Scenario example2() {
  Scenario s;
  s.units = "km, minutes; miles converted at 1.609 km/mi";
  s.extent_km = Rect{-1.0, -1.0, 10.0, 10.0};
  s.velocity = VelocityProfile{WeeklySchedule<double>(30.0), 5.0};
  s.categories = {{1, "photo", 0.5, 10.0}};
  s.owners = {{1, 1.0, 0.0, 1.0}};

  for (int k = 0; k < 20; ++k) {
    double angle = 2.0 * std::numbers::pi * k / 20.0;
    Worker w;
    w.id = k + 1;
    w.pattern = WeeklySchedule<Region>(
        Region{Point{0.05 * std::cos(angle), 0.05 * std::sin(angle)}});
    w.status = StatusSchedule({{DaySet::weekdays(), 480, 1020, 0.1}}, 0.5);
    w.reward_demand = {{1, 2.0}};
    w.trust = {{1, {0, 0, 0, 0.9}}};
    s.workers.push_back(w);
  }
  const Point task_at{2 * kKmPerMile, 0.0};

  Worker far;
  far.id = 21;
  far.pattern = WeeklySchedule<Region>(Region{Point{task_at.x, 5.0}});
  far.status = StatusSchedule({{DaySet::all(), 0, 1440, 1.0}}, 0.0);
  far.reward_demand = {{1, 2.0}};
  far.trust = {{1, {0, 0, 0, 0.9}}};
  s.workers.push_back(far);

  Task t;
  t.id = 1;
  t.owner_id = 1;
  t.category_id = 1;
  t.description = "photograph a storefront";
  t.duration = 15;
  t.submit_time = 600;  // Monday 10:00
  t.expiration = 720;
  t.region = task_at;
  t.pto_reward = 10.0;
  t.entered_priority = 0.5;
  s.tasks = {t};
  return s;
}

}  // namespace

std::vector<std::pair<std::string, Scenario>> builtin_scenarios() {
  return {{"example1-flower-delivery", example1()}, {"example2-high-entropy", example2()}};
}

Scenario builtin_scenario(std::string_view name) {
  if (name.starts_with("builtin:")) name.remove_prefix(8);
  for (auto& [n, s] : builtin_scenarios()) {
    if (n == name) return s;
  }
  throw std::out_of_range("no builtin scenario named '" + std::string(name) + "'");
}

}  // namespace psc
