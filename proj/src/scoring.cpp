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

#include "psc/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psc {

double VelocityProfile::speed_at(Minutes t) const {
  return std::max(schedule.value_at(t), floor_speed);
}

ExpiredError::ExpiredError(TaskId task, Minutes t)
    : std::domain_error("task " + std::to_string(task) + " is expired at t=" + std::to_string(t)) {}

double time_to_complete(const Task& task, const Worker& worker, Minutes t,
                        const VelocityProfile& v) {
  double km = distance(task.region, worker.pattern.value_at(t));
  return km / v.speed_at(t) * 60.0 + static_cast<double>(task.duration);
}

double time_score(const Task& task, double ttc, Minutes t) {
  if (t >= task.expiration) throw ExpiredError(task.id, t);
  double window = static_cast<double>(task.expiration - t);
  return (window - ttc) / window;
}

double demand_for(const Worker& worker, const TaskCategory& category) {
  auto it = worker.reward_demand.find(category.id);
  return it != worker.reward_demand.end() ? it->second : category.cat_reward;
}

double reward_score(double pto_reward, double demand) {
  return std::max(pto_reward - demand, 0.0) / pto_reward;
}

double reward_score(const Task& task, const Worker& worker, const TaskCategory& category) {
  return reward_score(task.pto_reward, demand_for(worker, category));
}

double trustworthy_score(const TrustCounters& c, const TrustWeights& w) {
  if (c.assigned == 0) return c.initial_score;
  double accept_ratio = static_cast<double>(c.accepted) / static_cast<double>(c.assigned);
  double complete_ratio = c.accepted == 0
                              ? c.initial_score
                              : static_cast<double>(c.completed) / static_cast<double>(c.accepted);
  return (w.m1 * accept_ratio + w.m2 * complete_ratio) / (w.m1 + w.m2);
}

double priority_weighted_trust(double trust, double pto_priority) {
  double p = std::max(pto_priority, kMinPriorityExponentBase);
  return p == 1.0 ? trust : std::pow(trust, 1.0 / p);
}

double task_priority_score(const Task& task, const TaskOwner& owner, const TaskCategory& category) {
  double raw = owner.pto_priority * category.cat_priority * task.entered_priority *
               (task.pto_reward / category.cat_reward);
  return std::clamp(raw, 0.0, 1.0);
}

ScoreBreakdown combine_score(const Task& task, Minutes t, double travel_km, double speed_kmh,
                             double availability, double reward, double trust_weighted) {
  ScoreBreakdown b;
  b.travel_km = travel_km;
  b.availability = availability;
  b.reward = reward;
  b.trust_weighted = trust_weighted;

  double travel_min = travel_km / speed_kmh * 60.0;
  double start = static_cast<double>(t) + travel_min;
  if (task.window_start) start = std::max(start, static_cast<double>(*task.window_start));
  double completion = start + static_cast<double>(task.duration);
  b.ttc_min = completion - static_cast<double>(t);

  if (task.window_end && start > static_cast<double>(*task.window_end)) {
    if (t >= task.expiration) throw ExpiredError(task.id, t);
    b.time_score = -1.0;
  } else {
    b.time_score = time_score(task, b.ttc_min, t);
  }
  b.time_feasible = b.time_score > 0.0;
  b.total = b.time_score * b.availability * b.reward * b.trust_weighted;
  return b;
}

ScoreBreakdown total_score(const Task& task, const Worker& worker, const TaskOwner& owner,
                           const TaskCategory& category, Minutes t, const VelocityProfile& v,
                           const TrustWeights& w) {
  if (t >= task.expiration) throw ExpiredError(task.id, t);
  double km = distance(task.region, worker.pattern.value_at(t));
  double avail = availability_score(worker.status, t, task.expiration);
  double reward = reward_score(task, worker, category);
  double trust = priority_weighted_trust(trustworthy_score(worker.trust_for(category.id), w),
                                         owner.pto_priority);
  return combine_score(task, t, km, v.speed_at(t), avail, reward, trust);
}

}  // namespace psc
