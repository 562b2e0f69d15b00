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

#include "psc/assign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "psc/score_table.hpp"

namespace psc {

Directory::Directory(std::span<const TaskOwner> owners, std::span<const TaskCategory> categories)
    : owners_(owners.begin(), owners.end()), categories_(categories.begin(), categories.end()) {
  for (std::size_t i = 0; i < owners_.size(); ++i) owner_index_.emplace(owners_[i].id, i);
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    category_index_.emplace(categories_[i].id, i);
  }
}

const TaskOwner& Directory::owner(OwnerId id) const {
  auto it = owner_index_.find(id);
  if (it == owner_index_.end()) throw std::out_of_range("unknown owner " + std::to_string(id));
  return owners_[it->second];
}

const TaskCategory& Directory::category(CategoryId id) const {
  auto it = category_index_.find(id);
  if (it == category_index_.end()) {
    throw std::out_of_range("unknown category " + std::to_string(id));
  }
  return categories_[it->second];
}

Minutes booking_minutes(double ttc_min) {
  // Guard against ceil turning 30.000000000004 into 31.
  auto m = static_cast<Minutes>(std::ceil(ttc_min - 1e-9));
  return std::max<Minutes>(1, m);
}

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::kDeadlineInfeasible:
      return "deadline_infeasible";
    case FailureReason::kRewardInsufficient:
      return "reward_insufficient";
    case FailureReason::kNoSuitableWorker:
      return "no_suitable_worker";
  }
  return "unknown";
}

std::vector<Minutes> grid_times(const TimeGrid& grid, Minutes now, Minutes expiration) {
  if (grid.step <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<Minutes> out;
  for (Minutes t = now; t < expiration && t <= grid.horizon; t += grid.step) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CascadeTask {
  std::size_t next = 0;  // position in ranked
  bool resolved = false;
  double priority = 0.0;
  std::uint64_t tie_key = 0;
};

FailureReason classify(const TaskCandidates& tc) {
  // Positive candidates existed but every one was taken by other tasks.
  if (!tc.ranked.empty() || tc.truncated) return FailureReason::kNoSuitableWorker;
  if (!tc.any_time_feasible) return FailureReason::kDeadlineInfeasible;
  if (tc.reward_only_failure) return FailureReason::kRewardInsufficient;
  return FailureReason::kNoSuitableWorker;
}

}  // namespace

OfflineResult offline_assign(std::span<const Task> tasks, std::span<const Worker> workers,
                             const Directory& dir, Minutes now, const TimeGrid& grid,
                             const VelocityProfile& v, const TrustWeights& w, std::uint64_t seed,
                             const OfflineOptions& opts) {
  ScoreTableInput in{tasks, workers, &dir, now, grid, v, w};
  std::vector<TaskCandidates> table = opts.kernel == KernelMode::kParallel
                                          ? score_table_parallel(in, opts.keep_per_task)
                                          : score_table_serial(in, opts.keep_per_task);

  std::mt19937_64 rng(seed);
  std::vector<CascadeTask> state(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    state[i].priority = dir.priority(tasks[i]);
    state[i].tie_key = rng();
  }

  std::vector<std::vector<Booking>> calendars(workers.size());
  for (std::size_t wi = 0; wi < workers.size(); ++wi) calendars[wi] = workers[wi].bookings;
  auto is_free = [&](std::size_t wi, Minutes start, Minutes end) {
    for (const Booking& b : calendars[wi]) {
      if (b.start < end && start < b.end) return false;
    }
    return true;
  };
  auto slot_time = [&](const Candidate& c) {
    return now + static_cast<Minutes>(c.slot) * grid.step;
  };
  auto viable = [&](const Candidate& c) { return is_free(c.worker, slot_time(c), c.end); };

  std::vector<std::optional<Assignment>> chosen(tasks.size());
  std::vector<std::optional<FailureReason>> failed(tasks.size());
  std::vector<std::vector<std::size_t>> proposals(workers.size());

  for (;;) {
    bool any = false;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      CascadeTask& st = state[i];
      if (st.resolved) continue;
      TaskCandidates& tc = table[i];
      while (st.next < tc.ranked.size() && !viable(tc.ranked[st.next])) ++st.next;
      if (st.next == tc.ranked.size() && tc.truncated) {
        // Rescore this task in full, dropping what the calendars now rule out.
        TaskCandidates full = score_task(in, i, std::numeric_limits<std::size_t>::max());
        std::erase_if(full.ranked, [&](const Candidate& c) { return !viable(c); });
        tc.ranked = std::move(full.ranked);
        tc.truncated = false;
        st.next = 0;
        if (tc.ranked.empty()) tc.truncated = true;  // keep NoSuitableWorker classification
      }
      if (st.next >= tc.ranked.size()) {
        st.resolved = true;
        failed[i] = workers.empty() ? FailureReason::kNoSuitableWorker : classify(tc);
        continue;
      }
      proposals[tc.ranked[st.next].worker].push_back(i);
      any = true;
    }
    if (!any) break;

    for (std::size_t wi = 0; wi < workers.size(); ++wi) {
      auto& claim = proposals[wi];
      if (claim.empty()) continue;
      std::sort(claim.begin(), claim.end(), [&](std::size_t a, std::size_t b) {
        if (state[a].priority != state[b].priority) return state[a].priority > state[b].priority;
        double ta = table[a].ranked[state[a].next].total;
        double tb = table[b].ranked[state[b].next].total;
        if (ta != tb) return ta > tb;
        if (state[a].tie_key != state[b].tie_key) return state[a].tie_key < state[b].tie_key;
        return a < b;
      });
      for (std::size_t i : claim) {
        const Candidate& c = table[i].ranked[state[i].next];
        if (!viable(c)) continue;  // loses; moves on next round
        Minutes t = slot_time(c);
        calendars[wi].push_back({t, c.end});
        state[i].resolved = true;
        chosen[i] = Assignment{tasks[i].id, workers[wi].id, t,
                               total_score(tasks[i], workers[wi], dir.owner(tasks[i].owner_id),
                                           dir.category(tasks[i].category_id), t, v, w)};
      }
      claim.clear();
    }
  }

  OfflineResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (chosen[i]) {
      result.assignments.push_back(*chosen[i]);
    } else {
      result.unassigned.emplace_back(tasks[i].id, failed[i].value_or(FailureReason::kNoSuitableWorker));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

AssignOutcome online_once(const Task& task, std::span<const Worker* const> available,
                          const Directory& dir, Minutes t, const VelocityProfile& v,
                          const TrustWeights& w) {
  const TaskOwner& owner = dir.owner(task.owner_id);
  const TaskCategory& category = dir.category(task.category_id);

  const Worker* best = nullptr;
  ScoreBreakdown best_b;
  const Worker* reward_blocked = nullptr;
  double reward_blocked_rest = -1.0;
  bool any_free = false;
  bool any_time_feasible = false;

  for (const Worker* wk : available) {
    ScoreBreakdown b = total_score(task, *wk, owner, category, t, v, w);
    if (!wk->is_free(t, t + booking_minutes(b.ttc_min))) continue;
    any_free = true;
    if (b.time_feasible) any_time_feasible = true;
    if (b.total > 0.0 && (best == nullptr || b.total > best_b.total ||
                          (b.total == best_b.total && wk->id < best->id))) {
      best = wk;
      best_b = b;
    }
    if (b.time_feasible && b.reward == 0.0 && b.availability > 0.0 && b.trust_weighted > 0.0) {
      double rest = b.time_score * b.availability * b.trust_weighted;
      if (reward_blocked == nullptr || rest > reward_blocked_rest ||
          (rest == reward_blocked_rest && wk->id < reward_blocked->id)) {
        reward_blocked = wk;
        reward_blocked_rest = rest;
      }
    }
  }

  if (best != nullptr) return Assignment{task.id, best->id, t, best_b};
  if (!any_free) return NoSuitableWorker{};
  if (!any_time_feasible) return DeadlineInfeasible{};
  if (reward_blocked != nullptr) return RewardInsufficient{reward_blocked->id};
  return NoSuitableWorker{};
}

}  // namespace

OnlineResult online_assign(const Task& task, std::span<const Worker* const> available,
                           const Directory& dir, Minutes t, const VelocityProfile& v,
                           const TrustWeights& w, RaisePolicy raise) {
  if (t >= task.expiration) throw ExpiredError(task.id, t);
  const TaskOwner& owner = dir.owner(task.owner_id);
  Task current = task;
  OnlineResult r;
  r.outcome = online_once(current, available, dir, t, v, w);
  r.first_outcome = r.outcome;
  double raised = raise.already_raised;
  while (raise.enabled && std::holds_alternative<RewardInsufficient>(r.outcome)) {
    double room = owner.max_reward_raise - raised;
    if (room <= 1e-12) break;
    double step = std::min(owner.raise_increment, room);
    current.pto_reward += step;
    raised += step;
    ++r.raises;
    r.outcome = online_once(current, available, dir, t, v, w);
  }
  r.final_reward = current.pto_reward;
  return r;
}

std::vector<std::size_t> queue_order(std::span<const Task> pending, const Directory& dir) {
  std::vector<double> prio(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) prio[i] = dir.priority(pending[i]);
  std::vector<std::size_t> idx(pending.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (prio[a] != prio[b]) return prio[a] > prio[b];
    if (pending[a].submit_time != pending[b].submit_time) {
      return pending[a].submit_time < pending[b].submit_time;
    }
    return pending[a].id < pending[b].id;
  });
  return idx;
}

AssignOutcome baseline_nearest(const Task& task, std::span<const Worker* const> available,
                               const Directory& dir, Minutes t, const VelocityProfile& v,
                               const TrustWeights& w) {
  if (t >= task.expiration) throw ExpiredError(task.id, t);
  const TaskOwner& owner = dir.owner(task.owner_id);
  const TaskCategory& category = dir.category(task.category_id);

  const Worker* best = nullptr;
  double best_km = 0.0;
  ScoreBreakdown best_b;
  for (const Worker* wk : available) {
    double km = distance(task.region, expected_region_at(*wk, t));
    if (best != nullptr && (km > best_km || (km == best_km && wk->id > best->id))) continue;
    ScoreBreakdown b = total_score(task, *wk, owner, category, t, v, w);
    if (!wk->is_free(t, t + booking_minutes(b.ttc_min))) continue;
    best = wk;
    best_km = km;
    best_b = b;
  }
  if (best == nullptr) return NoSuitableWorker{};
  return Assignment{task.id, best->id, t, best_b};
}

}  // namespace psc
