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

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "psc/model.hpp"
#include "psc/scoring.hpp"

namespace psc {

/// Id lookup for owners and categories shared by every assigner.
class Directory {
 public:
  Directory() = default;
  Directory(std::span<const TaskOwner> owners, std::span<const TaskCategory> categories);

  /// Throw std::out_of_range for unknown ids.
  const TaskOwner& owner(OwnerId id) const;
  const TaskCategory& category(CategoryId id) const;

  double priority(const Task& task) const {
    return task_priority_score(task, owner(task.owner_id), category(task.category_id));
  }

 private:
  std::vector<TaskOwner> owners_;
  std::vector<TaskCategory> categories_;
  std::unordered_map<OwnerId, std::size_t> owner_index_;
  std::unordered_map<CategoryId, std::size_t> category_index_;
};

/// Minutes a worker is held by an assignment: ceil(ttc), at least one.
Minutes booking_minutes(double ttc_min);

struct Assignment {
  TaskId task_id = 0;
  WorkerId worker_id = 0;
  Minutes dispatch_time = 0;
  ScoreBreakdown breakdown;

  Booking booking() const {
    return {dispatch_time, dispatch_time + booking_minutes(breakdown.ttc_min)};
  }
};

struct DeadlineInfeasible {};
struct RewardInsufficient {
  WorkerId best_feasible_worker = 0;
};
struct NoSuitableWorker {};

using AssignOutcome = std::variant<Assignment, DeadlineInfeasible, RewardInsufficient, NoSuitableWorker>;

enum class FailureReason { kDeadlineInfeasible, kRewardInsufficient, kNoSuitableWorker };

std::string_view to_string(FailureReason r);

/// Candidate start times now, now + step, ... strictly before expiration and
/// not after the horizon.
struct TimeGrid {
  Minutes step = 15;
  Minutes horizon = std::numeric_limits<Minutes>::max();
};

std::vector<Minutes> grid_times(const TimeGrid& grid, Minutes now, Minutes expiration);

// ---------------------------------------------------------------------------
// Offline batch assignment

enum class KernelMode { kSerial, kParallel };

struct OfflineOptions {
  KernelMode kernel = KernelMode::kParallel;
  /// Candidates kept per task before the cascade; a task that runs out of its
  /// kept list while more existed is rescored on demand.
  std::size_t keep_per_task = 128;
};

struct OfflineResult {
  std::vector<Assignment> assignments;  // in task input order
  std::vector<std::pair<TaskId, FailureReason>> unassigned;
};

/// Assigns each task the (worker, grid time) maximizing total score, resolving
/// workers claimed by several tasks with overlapping bookings by task priority,
/// then total, then a seeded random draw. Losers move to their next-best pair.
/// Workers' existing bookings are respected; inputs are not modified.
OfflineResult offline_assign(std::span<const Task> tasks, std::span<const Worker> workers,
                             const Directory& dir, Minutes now, const TimeGrid& grid,
                             const VelocityProfile& v, const TrustWeights& w, std::uint64_t seed,
                             const OfflineOptions& opts = {});

// ---------------------------------------------------------------------------
// Online greedy assignment

struct RaisePolicy {
  bool enabled = true;
  /// Amount already added to this task's reward by earlier raises.
  double already_raised = 0.0;
};

struct OnlineResult {
  AssignOutcome outcome;
  int raises = 0;
  double final_reward = 0.0;
  /// Outcome before any raise (RewardInsufficient when raises > 0).
  AssignOutcome first_outcome;
};

/// Assigns one task at time t to the best free worker among `available`.
/// Workers whose booking for this task would overlap their calendar are
/// skipped. When the only obstacle is reward, the owner raises the reward by
/// its increment within its budget and the search repeats.
OnlineResult online_assign(const Task& task, std::span<const Worker* const> available,
                           const Directory& dir, Minutes t, const VelocityProfile& v,
                           const TrustWeights& w, RaisePolicy raise = {});

/// Indices of `pending` ordered by task priority desc, submit time asc, id asc.
std::vector<std::size_t> queue_order(std::span<const Task> pending, const Directory& dir);

/// Location-only baseline: nearest free worker at t, ties by lower id.
/// Status, reward and trust play no part in the choice; the breakdown is still
/// filled in for logging and acceptance.
AssignOutcome baseline_nearest(const Task& task, std::span<const Worker* const> available,
                               const Directory& dir, Minutes t, const VelocityProfile& v,
                               const TrustWeights& w);

}  // namespace psc
