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

#include <map>
#include <set>

#include "psc/simulate.hpp"
#include "psc/workload.hpp"
#include "support/random_instances.hpp"

using namespace psc;
using psc::testing::Rand;

namespace {

Assignment feasible_assignment() {
  Assignment a;
  a.task_id = 1;
  a.worker_id = 1;
  a.breakdown.time_score = 0.5;
  a.breakdown.time_feasible = true;
  a.breakdown.reward = 0.5;
  return a;
}

Worker constant_worker(double p) {
  Worker w;
  w.id = 1;
  w.status = StatusSchedule(p);
  return w;
}

Scenario random_scenario(Rand& r, Minutes duration) {
  auto in = psc::testing::random_small_instance(r, 8, 5, 6);
  Scenario s;
  s.categories = in.categories;
  s.owners = in.owners;
  s.owners[0].max_reward_raise = r.chance(0.5) ? 5.0 : 0.0;
  s.owners[0].raise_increment = 2.0;
  s.velocity = in.velocity;
  s.workers = in.workers;
  for (auto& w : s.workers) w.bookings.clear();
  for (auto t : in.tasks) {
    Minutes shift = r.integer(0, duration - 1) - t.submit_time;
    t.submit_time += shift;
    t.expiration += shift;
    if (t.window_start) *t.window_start += shift;
    if (t.window_end) *t.window_end += shift;
    s.tasks.push_back(t);
  }
  return s;
}

}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("zero tasks") {
    Scenario s;
    s.categories = {{1, "c", 1, 1}};
    s.workers = {constant_worker(1.0)};
    auto rep = run(s, SimConfig{});
    CHECK(rep.metrics.tasks_submitted == 0);
    CHECK(rep.metrics.tasks_completed == 0);
    CHECK(rep.metrics.performance_def1 == 0.0);
    CHECK(rep.metrics.completion_fraction == 0.0);
  }

  TEST_CASE("invalid scenario is rejected") {
    Scenario s;
    s.workers = {constant_worker(1.5)};
    CHECK_THROWS_AS(run(s, SimConfig{}), ValidationError);
  }

  TEST_CASE("flower delivery") {
    Scenario s = builtin_scenario("example1-flower-delivery");
    SimConfig c;
    auto psc_rep = run(s, c);
    CHECK(psc_rep.metrics.tasks_completed == 1);
    CHECK(psc_rep.metrics.completion_fraction == 1.0);
    bool saw_b = false;
    for (const auto& e : psc_rep.log) {
      if (e.kind == LogKind::kDispatch || e.kind == LogKind::kBatchAssign) {
        CHECK(e.worker_id == WorkerId{1});
      }
      saw_b |= e.worker_id == WorkerId{2};
    }
    CHECK_FALSE(saw_b);

    c.policy = Policy::kScNearest;
    auto sc = run(s, c);
    std::vector<EventRecord> relevant;
    for (const auto& e : sc.log) {
      if (e.kind == LogKind::kDispatch || e.kind == LogKind::kAccept || e.kind == LogKind::kReject) {
        relevant.push_back(e);
      }
    }
    REQUIRE(relevant.size() >= 2);
    CHECK(relevant[0].kind == LogKind::kDispatch);
    CHECK(relevant[0].worker_id == WorkerId{2});
    CHECK(relevant[1].kind == LogKind::kReject);
    CHECK(relevant[1].worker_id == WorkerId{2});
  }

  TEST_CASE("same seed, same report") {
    Scenario s = generate(GenParams{.n_workers = 30, .n_tasks = 60}, 3);
    SimConfig c;
    c.seed = 9;
    auto a = run(s, c);
    auto b = run(s, c);
    CHECK(a.metrics == b.metrics);
    CHECK(a.log == b.log);
  }

  TEST_CASE("acceptance draws") {
    std::mt19937_64 rng(1);
    Worker never = constant_worker(0.0);
    Worker always = constant_worker(1.0);
    for (int i = 0; i < 100; ++i) {
      CHECK_FALSE(accept_decision(never, feasible_assignment(), 0, rng));
      CHECK(accept_decision(always, feasible_assignment(), 0, rng));
    }
    Assignment unpaid = feasible_assignment();
    unpaid.breakdown.reward = 0;
    CHECK_FALSE(accept_decision(always, unpaid, 0, rng));
    Assignment late = feasible_assignment();
    late.breakdown.time_score = -0.2;
    late.breakdown.time_feasible = false;
    CHECK_FALSE(accept_decision(always, late, 0, rng));

    // exactly one draw per decision
    std::mt19937_64 a(5), b(5);
    accept_decision(never, feasible_assignment(), 0, a);
    b();
    CHECK(a() == b());
  }

  TEST_CASE("acceptance rate follows status") {
    std::mt19937_64 rng(2026);
    Worker w = constant_worker(0.6);
    int accepted = 0;
    for (int i = 0; i < 10000; ++i) accepted += accept_decision(w, feasible_assignment(), 0, rng);
    CHECK(std::abs(accepted / 10000.0 - 0.6) <= 0.02);
  }

  TEST_CASE("trust updates") {
    Worker w;
    auto c = apply_trust_update(w, 1, TrustEvent::kAssigned);
    CHECK(c.assigned == 1);
    CHECK(c.accepted == 0);
    CHECK(c.completed == 0);
    apply_trust_update(w, 1, TrustEvent::kAccepted);
    c = apply_trust_update(w, 1, TrustEvent::kCompleted);
    CHECK(c == TrustCounters{1, 1, 1, kDefaultInitialTrust});
    CHECK(trustworthy_score(c, TrustWeights{}) == 1.0);
    CHECK_THROWS_AS(apply_trust_update(w, 1, TrustEvent::kCompleted), std::logic_error);
    CHECK_THROWS_AS(apply_trust_update(w, 2, TrustEvent::kAccepted), std::logic_error);

    Worker v;
    for (int i = 0; i < 10; ++i) apply_trust_update(v, 1, TrustEvent::kAssigned);
    for (int i = 0; i < 8; ++i) apply_trust_update(v, 1, TrustEvent::kAccepted);
    for (int i = 0; i < 6; ++i) c = apply_trust_update(v, 1, TrustEvent::kCompleted);
    CHECK(std::abs(trustworthy_score(c, {1, 2}) - 0.7666666666666667) <= 1e-9);
  }

  TEST_CASE("metrics") {
    std::vector<EventRecord> log;
    for (TaskId i = 1; i <= 12; ++i) {
      log.push_back({0, LogKind::kSubmitted, i});
      log.push_back({1, LogKind::kCompletion, i, 1});
    }
    auto m = performance_metrics(log, 1440);
    CHECK(m.performance_def1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.completion_fraction == 1.0);
    auto none = performance_metrics({}, 1440);
    CHECK(none == Metrics{0, 0, 0, 0, 1440, 0.0, 0.0, 0.0});
  }

  TEST_CASE("random: conservation and count ordering") {
    const std::set<LogKind> terminal{LogKind::kCompletion, LogKind::kExpire, LogKind::kFailDeadline,
                                     LogKind::kFailReward, LogKind::kFailNoWorker};
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rand r(70000 + i);
      Minutes duration = r.integer(1, 3) * kMinutesPerDay;
      Scenario s = random_scenario(r, duration);
      SimConfig c;
      c.duration = duration;
      c.seed = i;
      c.policy = r.chance(0.5) ? Policy::kPsc : Policy::kScNearest;
      auto rep = run(s, c);
      const auto& m = rep.metrics;
      CAPTURE(i);
      CHECK(m.tasks_submitted == static_cast<std::int64_t>(s.tasks.size()));
      CHECK(m.tasks_completed <= m.tasks_accepted);
      CHECK(m.tasks_accepted <= m.tasks_assigned);
      CHECK(m.tasks_assigned <= m.tasks_submitted);
      CHECK(m.completion_fraction >= 0.0);
      CHECK(m.completion_fraction <= 1.0);

      // Every task reaches at most one terminal event, and the fates list
      // covers every task exactly once.
      std::map<TaskId, int> ends;
      Minutes last = 0;
      bool ordered = true;
      std::map<TaskId, int> accepts;
      bool complete_after_accept = true;
      for (const auto& e : rep.log) {
        ordered &= e.time >= last;
        last = e.time;
        if (!e.task_id) continue;
        if (terminal.count(e.kind)) ++ends[*e.task_id];
        if (e.kind == LogKind::kAccept) ++accepts[*e.task_id];
        if (e.kind == LogKind::kCompletion) complete_after_accept &= accepts[*e.task_id] == 1;
      }
      CHECK(ordered);
      CHECK(complete_after_accept);
      for (auto [id, n] : ends) CHECK(n == 1);
      for (auto [id, n] : accepts) CHECK(n == 1);
      REQUIRE(rep.fates.size() == s.tasks.size());
      std::int64_t completed = 0;
      for (std::size_t k = 0; k < s.tasks.size(); ++k) {
        CHECK(rep.fates[k].first == s.tasks[k].id);
        completed += rep.fates[k].second == TaskFate::kCompleted;
      }
      CHECK(completed == m.tasks_completed);

      // Trust counters only grow and stay ordered.
      REQUIRE(rep.final_trust.size() == s.workers.size());
      for (std::size_t k = 0; k < s.workers.size(); ++k) {
        for (const auto& [cat, tc] : rep.final_trust[k]) {
          auto before = s.workers[k].trust_for(cat);
          CHECK(tc.assigned >= before.assigned);
          CHECK(tc.completed <= tc.accepted);
          CHECK(tc.accepted <= tc.assigned);
        }
      }
    }
  }
}
