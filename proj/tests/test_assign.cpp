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

#include <doctest.h>

#include <set>

#include "psc/assign.hpp"
#include "psc/score_table.hpp"
#include "psc/workload.hpp"
#include "support/brute_force.hpp"
#include "support/random_instances.hpp"

using namespace psc;
using psc::testing::Rand;

namespace {

std::vector<psc::testing::Triple> triples(const OfflineResult& r) {
  std::vector<psc::testing::Triple> out;
  for (const auto& a : r.assignments) out.push_back({a.task_id, a.worker_id, a.dispatch_time});
  std::sort(out.begin(), out.end());
  return out;
}

Worker plain_worker(WorkerId id, Point at) {
  Worker w;
  w.id = id;
  w.pattern = WeeklySchedule<Region>(Region{at});
  w.status = StatusSchedule(1.0);
  w.reward_demand[1] = 0.0;
  w.trust[1] = {10, 10, 10, 0.5};
  return w;
}

Task plain_task(TaskId id, double entered_priority) {
  Task t;
  t.id = id;
  t.owner_id = 1;
  t.category_id = 1;
  t.duration = 30;
  t.expiration = 120;
  t.pto_reward = 10;
  t.entered_priority = entered_priority;
  return t;
}

std::vector<const Worker*> ptrs(const std::vector<Worker>& ws) {
  std::vector<const Worker*> out;
  for (const auto& w : ws) out.push_back(&w);
  return out;
}

const std::vector<TaskOwner> kOwners{{1, 1.0, 5.0, 5.0}};
const std::vector<TaskCategory> kCats{{1, "c", 1.0, 10.0}};

}  // namespace

TEST_SUITE("assign") {
  TEST_CASE("grid times") {
    CHECK(grid_times({15, 1000}, 0, 46) == std::vector<Minutes>{0, 15, 30, 45});
    CHECK(grid_times({15, 1000}, 0, 45) == std::vector<Minutes>{0, 15, 30});
    CHECK(grid_times({15, 20}, 0, 100) == std::vector<Minutes>{0, 15});
    CHECK(grid_times({15, 1000}, 50, 50).empty());
  }

  TEST_CASE("booking length") {
    CHECK(booking_minutes(0.0) == 1);
    CHECK(booking_minutes(30.0) == 30);
    CHECK(booking_minutes(30.2) == 31);
  }

  TEST_CASE("offline: singleton picks the best grid time") {
    Directory dir(kOwners, kCats);
    std::vector<Task> tasks{plain_task(1, 1.0)};
    std::vector<Worker> ws{plain_worker(1, {0, 0})};
    // Available only from minute 30 on, so later slots raise the availability factor.
    ws[0].status = StatusSchedule({{DaySet::all(), 30, 1440, 1.0}}, 0.0);
    auto r = offline_assign(tasks, ws, dir, 0, {15, 60}, VelocityProfile{}, TrustWeights{}, 1);
    REQUIRE(r.assignments.size() == 1);
    double best = -1;
    Minutes best_t = -1;
    for (Minutes t : grid_times({15, 60}, 0, 120)) {
      auto b = total_score(tasks[0], ws[0], kOwners[0], kCats[0], t, VelocityProfile{}, TrustWeights{});
      if (b.total > best) best = b.total, best_t = t;
    }
    CHECK(r.assignments[0].dispatch_time == best_t);
    CHECK(r.assignments[0].breakdown.total == best);
  }

  TEST_CASE("offline: higher priority task wins the shared worker") {
    Directory dir(kOwners, kCats);
    std::vector<Task> tasks{plain_task(1, 0.4), plain_task(2, 0.9)};
    std::vector<Worker> ws{plain_worker(1, {0, 0}), plain_worker(2, {2, 0})};
    CHECK(dir.priority(tasks[0]) == doctest::Approx(0.4));
    CHECK(dir.priority(tasks[1]) == doctest::Approx(0.9));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto r = offline_assign(tasks, ws, dir, 0, {15, 0}, VelocityProfile{}, TrustWeights{}, seed);
      REQUIRE(r.assignments.size() == 2);
      CHECK(r.assignments[0].task_id == 1);
      CHECK(r.assignments[0].worker_id == 2);
      CHECK(r.assignments[1].task_id == 2);
      CHECK(r.assignments[1].worker_id == 1);
    }
  }

  TEST_CASE("offline: exact ties are split by the seed") {
    Directory dir(kOwners, kCats);
    std::vector<Task> tasks{plain_task(1, 0.5), plain_task(2, 0.5)};
    std::vector<Worker> ws{plain_worker(1, {0, 0}), plain_worker(2, {2, 0})};
    std::set<WorkerId> winners_of_task1;
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
      auto r = offline_assign(tasks, ws, dir, 0, {15, 0}, VelocityProfile{}, TrustWeights{}, seed);
      REQUIRE(r.assignments.size() == 2);
      winners_of_task1.insert(r.assignments[0].worker_id);
    }
    CHECK(winners_of_task1.size() == 2);
  }

  TEST_CASE("offline: no workers") {
    Directory dir(kOwners, kCats);
    std::vector<Task> tasks{plain_task(1, 0.5), plain_task(2, 0.5)};
    auto r = offline_assign(tasks, {}, dir, 0, {}, VelocityProfile{}, TrustWeights{}, 1);
    CHECK(r.assignments.empty());
    REQUIRE(r.unassigned.size() == 2);
    CHECK(r.unassigned[0].second == FailureReason::kNoSuitableWorker);
  }

  TEST_CASE("offline: reasons for unassigned tasks") {
    Directory dir(kOwners, kCats);
    std::vector<Worker> ws{plain_worker(1, {0, 0})};
    Task late = plain_task(1, 0.5);
    late.duration = 500;  // cannot finish before expiration
    Task cheap = plain_task(2, 0.5);
    cheap.expiration = 5000;
    cheap.pto_reward = 1;
    ws[0].reward_demand[1] = 3;
    std::vector<Task> tasks{late, cheap};
    auto r = offline_assign(tasks, ws, dir, 0, {15, 30}, VelocityProfile{}, TrustWeights{}, 1);
    REQUIRE(r.unassigned.size() == 2);
    CHECK(r.unassigned[0] == std::pair{TaskId{1}, FailureReason::kDeadlineInfeasible});
    CHECK(r.unassigned[1] == std::pair{TaskId{2}, FailureReason::kRewardInsufficient});
  }

  TEST_CASE("offline: flower delivery picks worker A") {
    Scenario s = builtin_scenario("example1-flower-delivery");
    Directory dir(s.owners, s.categories);
    auto r = offline_assign(s.tasks, s.workers, dir, 420, {}, s.velocity, TrustWeights{}, 1);
    REQUIRE(r.assignments.size() == 1);
    CHECK(r.assignments[0].worker_id == 1);
  }

  TEST_CASE("offline matches brute force on random small instances") {
    int contested = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rand r(1000 + seed);
      auto in = psc::testing::random_small_instance(r);
      Directory dir(in.owners, in.categories);
      ScoreTableInput sti{in.tasks, in.workers, &dir, in.now, in.grid, in.velocity, in.weights};
      auto tops = score_table_serial(sti, 1);
      bool clash = false;
      for (std::size_t a = 0; a < tops.size(); ++a) {
        for (std::size_t b = a + 1; b < tops.size(); ++b) {
          if (tops[a].ranked.empty() || tops[b].ranked.empty()) continue;
          const auto& ca = tops[a].ranked[0];
          const auto& cb = tops[b].ranked[0];
          Minutes sa = in.now + ca.slot * in.grid.step, sb = in.now + cb.slot * in.grid.step;
          clash |= ca.worker == cb.worker && sa < cb.end && sb < ca.end;
        }
      }
      contested += clash;
      auto expected = psc::testing::brute_force_offline(in.tasks, in.workers, in.owners,
                                                        in.categories, in.now, in.grid.step,
                                                        in.grid.horizon, in.velocity, in.weights,
                                                        seed);
      CAPTURE(seed);
      for (auto kernel : {KernelMode::kSerial, KernelMode::kParallel}) {
        for (std::size_t keep : {std::size_t{128}, std::size_t{1}}) {
          auto got = offline_assign(in.tasks, in.workers, dir, in.now, in.grid, in.velocity,
                                    in.weights, seed, {kernel, keep});
          CHECK(triples(got) == expected);
          CHECK(got.assignments.size() + got.unassigned.size() == in.tasks.size());
        }
      }
    }
    MESSAGE("instances with a contested first choice: " << contested);
    CHECK(contested >= 20);
  }

  TEST_CASE("serial and parallel score tables agree exactly") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rand r(5000 + seed);
      auto in = psc::testing::random_small_instance(r, 12, 12, 10);
      Directory dir(in.owners, in.categories);
      ScoreTableInput sti{in.tasks, in.workers, &dir, in.now, in.grid, in.velocity, in.weights};
      for (std::size_t keep : {std::size_t{3}, std::size_t{1000}}) {
        CHECK(score_table_serial(sti, keep) == score_table_parallel(sti, keep));
      }
    }
  }

  TEST_CASE("online: single worker") {
    Directory dir(kOwners, kCats);
    std::vector<Worker> ws{plain_worker(1, {0, 0})};
    auto p = ptrs(ws);
    auto r = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{});
    REQUIRE(std::holds_alternative<Assignment>(r.outcome));
    CHECK(std::get<Assignment>(r.outcome).worker_id == 1);
    CHECK(r.raises == 0);
  }

  TEST_CASE("online: empty and infeasible") {
    Directory dir(kOwners, kCats);
    auto r = online_assign(plain_task(1, 1.0), {}, dir, 0, VelocityProfile{}, TrustWeights{});
    CHECK(std::holds_alternative<NoSuitableWorker>(r.outcome));

    std::vector<Worker> ws{plain_worker(1, {50, 0}), plain_worker(2, {0, 60})};
    auto p = ptrs(ws);
    auto d = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{});
    CHECK(std::holds_alternative<DeadlineInfeasible>(d.outcome));
  }

  TEST_CASE("online: reward raise") {
    Directory dir(kOwners, kCats);  // owner raises up to 5 in steps of 5
    std::vector<Worker> ws{plain_worker(1, {0, 0})};
    ws[0].reward_demand[1] = 12;
    auto p = ptrs(ws);
    auto r = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{});
    CHECK(std::holds_alternative<RewardInsufficient>(r.first_outcome));
    REQUIRE(std::holds_alternative<Assignment>(r.outcome));
    CHECK(r.raises == 1);
    CHECK(r.final_reward == 15.0);

    auto no_raise = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{},
                                  {false, 0.0});
    CHECK(std::holds_alternative<RewardInsufficient>(no_raise.outcome));
    auto spent = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{},
                               {true, 5.0});
    CHECK(std::holds_alternative<RewardInsufficient>(spent.outcome));
  }

  TEST_CASE("online: busy workers are skipped, ties go to the lower id") {
    Directory dir(kOwners, kCats);
    std::vector<Worker> ws{plain_worker(2, {1, 0}), plain_worker(1, {-1, 0})};
    auto p = ptrs(ws);
    auto r = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{});
    CHECK(std::get<Assignment>(r.outcome).worker_id == 1);
    ws[1].book({10, 20});
    auto r2 = online_assign(plain_task(1, 1.0), p, dir, 0, VelocityProfile{}, TrustWeights{});
    CHECK(std::get<Assignment>(r2.outcome).worker_id == 2);
  }

  TEST_CASE("queue order") {
    Directory dir(kOwners, kCats);
    std::vector<Task> same{plain_task(5, 0.5), plain_task(3, 0.5)};
    same[0].submit_time = 1;
    same[1].submit_time = 2;
    CHECK(queue_order(same, dir) == std::vector<std::size_t>{0, 1});
    std::vector<Task> bumped{plain_task(1, 0.2), plain_task(2, 0.9)};
    CHECK(queue_order(bumped, dir) == std::vector<std::size_t>{1, 0});
    std::vector<Task> tied{plain_task(9, 0.5), plain_task(4, 0.5)};
    CHECK(queue_order(tied, dir) == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("baseline nearest") {
    Scenario s = builtin_scenario("example1-flower-delivery");
    Directory dir(s.owners, s.categories);
    auto p = ptrs(s.workers);
    auto r = baseline_nearest(s.tasks[0], p, dir, 420, s.velocity, TrustWeights{});
    CHECK(std::get<Assignment>(r).worker_id == 2);

    Directory d2(kOwners, kCats);
    std::vector<Worker> one{plain_worker(4, {9, 9})};
    auto p1 = ptrs(one);
    CHECK(std::get<Assignment>(baseline_nearest(plain_task(1, 1), p1, d2, 0, {}, {})).worker_id == 4);
    std::vector<Worker> eq{plain_worker(8, {3, 0}), plain_worker(6, {0, 3})};
    auto p2 = ptrs(eq);
    CHECK(std::get<Assignment>(baseline_nearest(plain_task(1, 1), p2, d2, 0, {}, {})).worker_id == 6);
    CHECK(std::holds_alternative<NoSuitableWorker>(baseline_nearest(plain_task(1, 1), {}, d2, 0, {}, {})));
  }
}
