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
#include <span>
#include <vector>

#include "psc/assign.hpp"

namespace psc {

/// One positive-scoring (worker, grid slot) pair for a task. Slot k stands for
/// dispatch time now + k * step.
struct Candidate {
  std::uint32_t worker = 0;  // index into the worker span
  std::uint32_t slot = 0;
  double total = 0.0;
  Minutes end = 0;  // booking end
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct TaskCandidates {
  /// total desc, worker id asc, slot asc.
  std::vector<Candidate> ranked;
  /// More positive candidates existed than were kept.
  bool truncated = false;
  /// Some pair had time_score > 0.
  bool any_time_feasible = false;
  /// Some pair failed on reward alone (time, availability, trust positive).
  bool reward_only_failure = false;
  friend bool operator==(const TaskCandidates&, const TaskCandidates&) = default;
};

struct ScoreTableInput {
  std::span<const Task> tasks;
  std::span<const Worker> workers;
  const Directory* dir = nullptr;
  Minutes now = 0;
  TimeGrid grid;
  VelocityProfile velocity;
  TrustWeights weights;
};

/// Reference route: every (task, worker, slot) scored with total_score.
std::vector<TaskCandidates> score_table_serial(const ScoreTableInput& in, std::size_t keep);

/// Same table from per-batch precomputed worker positions and status
/// integrals, tasks scored in parallel with OpenMP.
std::vector<TaskCandidates> score_table_parallel(const ScoreTableInput& in, std::size_t keep);

/// Single task via the reference route; used to refill exhausted lists.
TaskCandidates score_task(const ScoreTableInput& in, std::size_t task_index, std::size_t keep);

/// Sort helper shared by both routes: orders by the ranking above and keeps
/// the first `keep` entries, setting `truncated` when something was dropped.
void rank_candidates(TaskCandidates& tc, std::span<const Worker> workers, std::size_t keep);

}  // namespace psc
