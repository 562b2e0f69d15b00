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

#include "psc/score_table.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psc {

void rank_candidates(TaskCandidates& tc, std::span<const Worker> workers, std::size_t keep) {
  auto before = [&](const Candidate& a, const Candidate& b) {
    if (a.total != b.total) return a.total > b.total;
    if (workers[a.worker].id != workers[b.worker].id) {
      return workers[a.worker].id < workers[b.worker].id;
    }
    return a.slot < b.slot;
  };
  auto& r = tc.ranked;
  if (r.size() > keep) {
    std::partial_sort(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(keep), r.end(), before);
    r.resize(keep);
    tc.truncated = true;
  } else {
    std::sort(r.begin(), r.end(), before);
  }
}

namespace {

void note_flags(TaskCandidates& tc, const ScoreBreakdown& b) {
  if (b.time_feasible) {
    tc.any_time_feasible = true;
    if (b.reward == 0.0 && b.availability > 0.0 && b.trust_weighted > 0.0) {
      tc.reward_only_failure = true;
    }
  }
}

}  // namespace

TaskCandidates score_task(const ScoreTableInput& in, std::size_t task_index, std::size_t keep) {
  const Task& task = in.tasks[task_index];
  const TaskOwner& owner = in.dir->owner(task.owner_id);
  const TaskCategory& category = in.dir->category(task.category_id);
  std::vector<Minutes> times = grid_times(in.grid, in.now, task.expiration);

  TaskCandidates tc;
  for (std::size_t wi = 0; wi < in.workers.size(); ++wi) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      ScoreBreakdown b =
          total_score(task, in.workers[wi], owner, category, times[k], in.velocity, in.weights);
      note_flags(tc, b);
      if (b.total > 0.0) {
        tc.ranked.push_back({static_cast<std::uint32_t>(wi), static_cast<std::uint32_t>(k), b.total,
                             times[k] + booking_minutes(b.ttc_min)});
      }
    }
  }
  rank_candidates(tc, in.workers, keep);
  return tc;
}

std::vector<TaskCandidates> score_table_serial(const ScoreTableInput& in, std::size_t keep) {
  std::vector<TaskCandidates> out;
  out.reserve(in.tasks.size());
  for (std::size_t ti = 0; ti < in.tasks.size(); ++ti) out.push_back(score_task(in, ti, keep));
  return out;
}

std::vector<TaskCandidates> score_table_parallel(const ScoreTableInput& in, std::size_t keep) {
  const std::size_t n_tasks = in.tasks.size();
  const std::size_t n_workers = in.workers.size();
  std::vector<TaskCandidates> out(n_tasks);
  if (n_tasks == 0) return out;

  std::size_t n_slots = 0;
  for (const Task& t : in.tasks) {
    n_slots = std::max(n_slots, grid_times(in.grid, in.now, t.expiration).size());
  }

  // Per-slot speed and per-(worker, slot) centroid and cumulative status.
  std::vector<double> speed(n_slots);
  for (std::size_t k = 0; k < n_slots; ++k) {
    speed[k] = in.velocity.speed_at(in.now + static_cast<Minutes>(k) * in.grid.step);
  }
  std::vector<StatusIntegrator> integrators;
  integrators.reserve(n_workers);
  for (const Worker& w : in.workers) integrators.emplace_back(w.status);

  std::vector<Point> where(n_workers * n_slots);
  std::vector<AvailabilityMinutes> cum(n_workers * n_slots);
  const auto n_workers_i = static_cast<std::int64_t>(n_workers);
#pragma omp parallel for schedule(static)
  for (std::int64_t wi = 0; wi < n_workers_i; ++wi) {
    const Worker& w = in.workers[static_cast<std::size_t>(wi)];
    for (std::size_t k = 0; k < n_slots; ++k) {
      Minutes t = in.now + static_cast<Minutes>(k) * in.grid.step;
      where[static_cast<std::size_t>(wi) * n_slots + k] = centroid(w.pattern.value_at(t));
      cum[static_cast<std::size_t>(wi) * n_slots + k] =
          integrators[static_cast<std::size_t>(wi)].cumulative(t);
    }
  }

  const auto n_tasks_i = static_cast<std::int64_t>(n_tasks);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t ti = 0; ti < n_tasks_i; ++ti) {
    const Task& task = in.tasks[static_cast<std::size_t>(ti)];
    const TaskOwner& owner = in.dir->owner(task.owner_id);
    const TaskCategory& category = in.dir->category(task.category_id);
    const Point task_at = centroid(task.region);
    const std::size_t slots = grid_times(in.grid, in.now, task.expiration).size();
    TaskCandidates& tc = out[static_cast<std::size_t>(ti)];

    for (std::size_t wi = 0; wi < n_workers; ++wi) {
      const Worker& w = in.workers[wi];
      const double reward = reward_score(task, w, category);
      const double trust = priority_weighted_trust(
          trustworthy_score(w.trust_for(category.id), in.weights), owner.pto_priority);
      // Nothing on this row can score or change the failure flags.
      if ((reward == 0.0 || trust == 0.0) && tc.reward_only_failure) continue;
      const AvailabilityMinutes at_exp = integrators[wi].cumulative(task.expiration);

      for (std::size_t k = 0; k < slots; ++k) {
        const Minutes t = in.now + static_cast<Minutes>(k) * in.grid.step;
        const std::size_t cell = wi * n_slots + k;
        const double km = distance(task_at, where[cell]);
        const double avail =
            (at_exp - cum[cell]).value() / static_cast<double>(task.expiration - t);
        ScoreBreakdown b = combine_score(task, t, km, speed[k], avail, reward, trust);
        note_flags(tc, b);
        if (b.total > 0.0) {
          tc.ranked.push_back({static_cast<std::uint32_t>(wi), static_cast<std::uint32_t>(k),
                               b.total, t + booking_minutes(b.ttc_min)});
        }
      }
    }
    rank_candidates(tc, in.workers, keep);
  }
  return out;
}

}  // namespace psc
