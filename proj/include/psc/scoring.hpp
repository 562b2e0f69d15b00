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

#include <stdexcept>

#include "psc/model.hpp"
#include "psc/schedule.hpp"

namespace psc {

/// Expected travel speed over the week, km/h, never below the floor.
struct VelocityProfile {
  WeeklySchedule<double> schedule{30.0};
  double floor_speed = 5.0;

  double speed_at(Minutes t) const;
  friend bool operator==(const VelocityProfile&, const VelocityProfile&) = default;
};

/// Weights of the acceptance ratio (m1) and the completion ratio (m2); m1 < m2.
struct TrustWeights {
  double m1 = 1.0;
  double m2 = 2.0;
  bool valid() const { return m1 > 0.0 && m2 > 0.0 && m1 < m2; }
};

/// Owner priorities below this are raised to it before use as 1/priority.
inline constexpr double kMinPriorityExponentBase = 0.05;

struct ScoreBreakdown {
  double time_score = 0.0;
  double availability = 0.0;
  double reward = 0.0;
  double trust_weighted = 0.0;
  double total = 0.0;
  bool time_feasible = false;
  double travel_km = 0.0;
  /// Minutes from t until the task would be done, start window included.
  double ttc_min = 0.0;
};

/// Raised when a score is requested at or after a task's expiration.
class ExpiredError : public std::domain_error {
 public:
  ExpiredError(TaskId task, Minutes t);
};

/// Travel time to the task plus its duration, minutes.
double time_to_complete(const Task& task, const Worker& worker, Minutes t,
                        const VelocityProfile& v);

/// (expiration - ttc - t) / (expiration - t); negative when the deadline is
/// missed. Throws ExpiredError when t >= expiration.
double time_score(const Task& task, double ttc, Minutes t);

/// Worker's minimum reward for the task's category, falling back to the
/// category's reference reward when the worker declared none.
double demand_for(const Worker& worker, const TaskCategory& category);

/// ramp(reward - demand) / reward.
double reward_score(double pto_reward, double demand);
double reward_score(const Task& task, const Worker& worker, const TaskCategory& category);

double trustworthy_score(const TrustCounters& c, const TrustWeights& w);

/// Trust raised to 1 / max(pto_priority, kMinPriorityExponentBase).
double priority_weighted_trust(double trust, double pto_priority);

/// Product of owner, category and entered priorities and the reward ratio,
/// clamped to [0,1].
double task_priority_score(const Task& task, const TaskOwner& owner, const TaskCategory& category);

/// Combines precomputed factors into a breakdown. Applies the start window:
/// work begins at max(arrival, window_start); arriving after window_end makes
/// the pair infeasible with time_score -1.
ScoreBreakdown combine_score(const Task& task, Minutes t, double travel_km, double speed_kmh,
                             double availability, double reward, double trust_weighted);

/// Full score of giving `task` to `worker` at time t. Throws ExpiredError when
/// t >= task.expiration.
ScoreBreakdown total_score(const Task& task, const Worker& worker, const TaskOwner& owner,
                           const TaskCategory& category, Minutes t, const VelocityProfile& v,
                           const TrustWeights& w);

}  // namespace psc
