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

// Exhaustive offline-assignment oracle. Scores every (task, worker, time)
// triple with total_score, then replays the conflict cascade by rescanning
// each task's full ranked list from the top every round. Shares nothing with
// the library's candidate table or cascade bookkeeping.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include "psc/scoring.hpp"

namespace psc::testing {

struct Triple {
  TaskId task = 0;
  WorkerId worker = 0;
  Minutes t = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline std::vector<Triple> brute_force_offline(std::span<const Task> tasks,
                                               std::span<const Worker> workers,
                                               std::span<const TaskOwner> owners,
                                               std::span<const TaskCategory> categories,
                                               Minutes now, Minutes step, Minutes horizon,
                                               const VelocityProfile& v, const TrustWeights& w,
                                               std::uint64_t seed) {
  auto owner_of = [&](OwnerId id) -> const TaskOwner& {
    return *std::find_if(owners.begin(), owners.end(), [&](const auto& o) { return o.id == id; });
  };
  auto category_of = [&](CategoryId id) -> const TaskCategory& {
    return *std::find_if(categories.begin(), categories.end(),
                         [&](const auto& c) { return c.id == id; });
  };

  struct Option {
    WorkerId worker;
    Minutes t;
    Minutes end;
    double total;
  };
  std::vector<std::vector<Option>> options(tasks.size());
  std::vector<double> priority(tasks.size());
  std::vector<std::uint64_t> key(tasks.size());
  std::mt19937_64 rng(seed);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    const TaskOwner& owner = owner_of(task.owner_id);
    const TaskCategory& cat = category_of(task.category_id);
    priority[i] = std::clamp(owner.pto_priority * cat.cat_priority * task.entered_priority *
                                 task.pto_reward / cat.cat_reward,
                             0.0, 1.0);
    key[i] = rng();
    for (const Worker& wk : workers) {
      for (Minutes t = now; t < task.expiration && t <= horizon; t += step) {
        ScoreBreakdown b = total_score(task, wk, owner, cat, t, v, w);
        if (b.total > 0.0) {
          Minutes hold = std::max<Minutes>(1, static_cast<Minutes>(std::ceil(b.ttc_min - 1e-9)));
          options[i].push_back({wk.id, t, t + hold, b.total});
        }
      }
    }
    std::sort(options[i].begin(), options[i].end(), [](const Option& a, const Option& b) {
      return std::tie(b.total, a.worker, a.t) < std::tie(a.total, b.worker, b.t);
    });
  }

  std::map<WorkerId, std::vector<std::pair<Minutes, Minutes>>> busy;
  for (const Worker& wk : workers) {
    for (const auto& b : wk.bookings) busy[wk.id].emplace_back(b.start, b.end);
  }
  auto free = [&](WorkerId id, Minutes s, Minutes e) {
    for (auto [a, b] : busy[id]) {
      if (a < e && s < b) return false;
    }
    return true;
  };

  std::vector<bool> done(tasks.size(), false);
  std::vector<Triple> out;
  for (;;) {
    std::map<WorkerId, std::vector<std::pair<std::size_t, Option>>> bids;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (done[i]) continue;
      auto it = std::find_if(options[i].begin(), options[i].end(),
                             [&](const Option& o) { return free(o.worker, o.t, o.end); });
      if (it == options[i].end()) {
        done[i] = true;
        continue;
      }
      bids[it->worker].emplace_back(i, *it);
    }
    if (bids.empty()) break;
    for (auto& [wid, list] : bids) {
      std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
        auto ka = std::make_tuple(-priority[a.first], -a.second.total, key[a.first], a.first);
        auto kb = std::make_tuple(-priority[b.first], -b.second.total, key[b.first], b.first);
        return ka < kb;
      });
      for (const auto& [i, o] : list) {
        if (!free(wid, o.t, o.end)) continue;
        busy[wid].emplace_back(o.t, o.end);
        done[i] = true;
        out.push_back({tasks[i].id, wid, o.t});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace psc::testing
