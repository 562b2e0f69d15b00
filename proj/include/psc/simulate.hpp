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
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "psc/assign.hpp"
#include "psc/scenario.hpp"

namespace psc {

enum class Policy { kPsc, kScNearest };

std::string_view to_string(Policy p);
/// "psc" or "sc-nearest"; nullopt otherwise.
std::optional<Policy> parse_policy(std::string_view s);

struct SimConfig {
  Minutes duration = kMinutesPerWeek;
  /// Off-peak batch times; empty means daily at 03:00 within the duration.
  std::optional<std::vector<Minutes>> offline_batch_times;
  TimeGrid grid;
  TrustWeights trust_weights;
  /// Overrides the scenario's profile when set.
  std::optional<VelocityProfile> velocity;
  std::uint64_t seed = 1;
  Policy policy = Policy::kPsc;
  /// Minutes a worker takes to answer a dispatch.
  Minutes response_delay = 10;
  OfflineOptions offline;
};

/// 03:00 on every day that starts within [0, duration].
std::vector<Minutes> default_batch_times(Minutes duration);

enum class LogKind {
  kSubmitted,
  kOfflineBatch,
  kBatchAssign,
  kDispatch,
  kAccept,
  kReject,
  kCompletion,
  kRewardRaise,
  kWait,
  kExpire,
  kFailDeadline,
  kFailReward,
  kFailNoWorker,
};

std::string_view to_string(LogKind k);

struct EventRecord {
  Minutes time = 0;
  LogKind kind = LogKind::kSubmitted;
  std::optional<TaskId> task_id;
  std::optional<WorkerId> worker_id;
  std::optional<double> score_total;
  std::optional<double> reward;
  /// Travel distance for dispatches; not part of the CSV.
  double travel_km = 0.0;
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

enum class TaskFate { kCompleted, kExpired, kFailed, kUnfinished };

std::string_view to_string(TaskFate f);

struct Metrics {
  std::int64_t tasks_submitted = 0;
  std::int64_t tasks_assigned = 0;
  std::int64_t tasks_accepted = 0;
  std::int64_t tasks_completed = 0;
  Minutes sim_minutes = 0;
  double performance_def1 = 0.0;  // completed per hour
  double completion_fraction = 0.0;
  double mean_travel_km = 0.0;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct SimReport {
  Metrics metrics;
  std::vector<EventRecord> log;
  /// Final state per task, in scenario order.
  std::vector<std::pair<TaskId, TaskFate>> fates;
  /// Trust counters at end of run, per worker (scenario order).
  std::vector<std::map<CategoryId, TrustCounters>> final_trust;
};

/// Runs the scenario to quiescence. Throws ValidationError for an invalid
/// scenario and std::invalid_argument for a bad config.
SimReport run(const Scenario& scenario, const SimConfig& config);

/// Worker's acceptance: probability = status at t when the breakdown is both
/// reward- and time-feasible, else 0. Consumes exactly one draw.
bool accept_decision(const Worker& worker, const Assignment& a, Minutes t, std::mt19937_64& rng);

enum class TrustEvent { kAssigned, kAccepted, kCompleted };

/// Increments the matching counter for the category. Throws std::logic_error
/// when the increment would break completed <= accepted <= assigned.
TrustCounters apply_trust_update(Worker& worker, CategoryId category, TrustEvent e);

/// Metric fields from an event log; `duration` is the run length in minutes.
Metrics performance_metrics(std::span<const EventRecord> log, Minutes duration);

/// Uniform draw in [0,1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace psc
