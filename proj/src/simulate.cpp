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

#include "psc/simulate.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace psc {

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string msg = "scenario has " + std::to_string(violations.size()) + " violation(s)";
        for (const auto& v : violations) msg += "\n  " + to_string(v);
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::string_view to_string(Policy p) { return p == Policy::kPsc ? "psc" : "sc-nearest"; }

std::optional<Policy> parse_policy(std::string_view s) {
  if (s == "psc") return Policy::kPsc;
  if (s == "sc-nearest") return Policy::kScNearest;
  return std::nullopt;
}

std::vector<Minutes> default_batch_times(Minutes duration) {
  std::vector<Minutes> out;
  for (Minutes day = 0; day <= duration; day += kMinutesPerDay) {
    if (day + 180 <= duration) out.push_back(day + 180);
  }
  return out;
}

std::string_view to_string(LogKind k) {
  switch (k) {
    case LogKind::kSubmitted: return "submitted";
    case LogKind::kOfflineBatch: return "offline_batch";
    case LogKind::kBatchAssign: return "batch_assign";
    case LogKind::kDispatch: return "dispatch";
    case LogKind::kAccept: return "accept";
    case LogKind::kReject: return "reject";
    case LogKind::kCompletion: return "completion";
    case LogKind::kRewardRaise: return "reward_raise";
    case LogKind::kWait: return "wait";
    case LogKind::kExpire: return "expire";
    case LogKind::kFailDeadline: return "fail_deadline";
    case LogKind::kFailReward: return "fail_reward";
    case LogKind::kFailNoWorker: return "fail_no_worker";
  }
  return "unknown";
}

std::string_view to_string(TaskFate f) {
  switch (f) {
    case TaskFate::kCompleted: return "completed";
    case TaskFate::kExpired: return "expired";
    case TaskFate::kFailed: return "failed";
    case TaskFate::kUnfinished: return "unfinished";
  }
  return "unknown";
}

bool accept_decision(const Worker& worker, const Assignment& a, Minutes t, std::mt19937_64& rng) {
  double u = uniform01(rng);
  double p = (a.breakdown.reward > 0.0 && a.breakdown.time_score > 0.0) ? worker.status.value_at(t)
                                                                          : 0.0;
  return u < p;
}

TrustCounters apply_trust_update(Worker& worker, CategoryId category, TrustEvent e) {
  auto [it, inserted] = worker.trust.try_emplace(category, worker.trust_for(category));
  TrustCounters& c = it->second;
  switch (e) {
    case TrustEvent::kAssigned:
      ++c.assigned;
      break;
    case TrustEvent::kAccepted:
      if (c.accepted + 1 > c.assigned) {
        throw std::logic_error("worker " + std::to_string(worker.id) +
                               " accepted more tasks than assigned");
      }
      ++c.accepted;
      break;
    case TrustEvent::kCompleted:
      if (c.completed + 1 > c.accepted) {
        throw std::logic_error("worker " + std::to_string(worker.id) +
                               " completed more tasks than accepted");
      }
      ++c.completed;
      break;
  }
  return c;
}

Metrics performance_metrics(std::span<const EventRecord> log, Minutes duration) {
  std::set<TaskId> submitted, assigned, accepted, completed;
  std::unordered_map<TaskId, double> last_travel;
  double travel_sum = 0.0;
  for (const EventRecord& r : log) {
    if (!r.task_id) continue;
    TaskId id = *r.task_id;
    switch (r.kind) {
      case LogKind::kSubmitted:
        submitted.insert(id);
        break;
      case LogKind::kDispatch:
        assigned.insert(id);
        last_travel[id] = r.travel_km;
        break;
      case LogKind::kAccept:
        accepted.insert(id);
        break;
      case LogKind::kCompletion:
        if (completed.insert(id).second) travel_sum += last_travel[id];
        break;
      default:
        break;
    }
  }
  Metrics m;
  m.tasks_submitted = static_cast<std::int64_t>(submitted.size());
  m.tasks_assigned = static_cast<std::int64_t>(assigned.size());
  m.tasks_accepted = static_cast<std::int64_t>(accepted.size());
  m.tasks_completed = static_cast<std::int64_t>(completed.size());
  m.sim_minutes = duration;
  if (duration > 0) {
    m.performance_def1 =
        static_cast<double>(m.tasks_completed) / (static_cast<double>(duration) / 60.0);
  }
  if (m.tasks_submitted > 0) {
    m.completion_fraction =
        static_cast<double>(m.tasks_completed) / static_cast<double>(m.tasks_submitted);
  }
  if (m.tasks_completed > 0) m.mean_travel_km = travel_sum / static_cast<double>(m.tasks_completed);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Same-time events run in this order: releases first, so freed workers are
// visible to submissions, batches and dispatches; expirations last.
enum class EventKind : int {
  kCompletion = 0,
  kAcceptDecision = 1,
  kTaskSubmitted = 2,
  kOfflineBatch = 3,
  kDispatch = 4,
  kExpire = 5,
};

struct Event {
  Minutes time = 0;
  EventKind kind = EventKind::kTaskSubmitted;
  std::uint64_t seq = 0;
  std::size_t ref = 0;  // task index, or assignment index for dispatch/decision/completion

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return static_cast<int>(kind) > static_cast<int>(o.kind);
    return seq > o.seq;
  }
};

enum class Phase {
  kNew,
  kAwaitingBatch,
  kPending,    // in the online queue
  kWaiting,    // no free worker; retried when one is released
  kScheduled,  // offline assignment, dispatch in the future
  kDispatched,
  kAccepted,
  kCompleted,
  kExpired,
  kFailed,
};

struct TaskState {
  Phase phase = Phase::kNew;
  std::set<WorkerId> excluded;  // workers that rejected this task
  double raised = 0.0;
  bool logged_wait = false;
};

struct Live {
  Assignment assignment;
  std::size_t task = 0;
  std::size_t worker = 0;
  Booking booking;
};

class Simulator {
 public:
  Simulator(const Scenario& s, const SimConfig& c)
      : cfg_(c),
        tasks_(s.tasks),
        workers_(s.workers),
        dir_(s.owners, s.categories),
        velocity_(c.velocity.value_or(s.velocity)),
        rng_(c.seed),
        state_(s.tasks.size()) {
    for (std::size_t i = 0; i < workers_.size(); ++i) worker_index_.emplace(workers_[i].id, i);
  }

  SimReport run() {
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      push(tasks_[i].submit_time, EventKind::kTaskSubmitted, i);
      push(tasks_[i].expiration, EventKind::kExpire, i);
    }
    batches_ = cfg_.offline_batch_times.value_or(default_batch_times(cfg_.duration));
    std::sort(batches_.begin(), batches_.end());
    if (cfg_.policy == Policy::kPsc) {
      for (Minutes b : batches_) push(b, EventKind::kOfflineBatch, 0);
    }

    while (!queue_.empty()) {
      Minutes now = queue_.top().time;
      while (!queue_.empty() && queue_.top().time == now) {
        Event e = queue_.top();
        queue_.pop();
        handle(e);
      }
      online_round(now);
    }

    SimReport r;
    r.metrics = performance_metrics(log_, cfg_.duration);
    r.log = std::move(log_);
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      TaskFate f = TaskFate::kUnfinished;
      switch (state_[i].phase) {
        case Phase::kCompleted: f = TaskFate::kCompleted; break;
        case Phase::kExpired: f = TaskFate::kExpired; break;
        case Phase::kFailed: f = TaskFate::kFailed; break;
        default: break;
      }
      r.fates.emplace_back(tasks_[i].id, f);
    }
    for (const Worker& w : workers_) r.final_trust.push_back(w.trust);
    return r;
  }

 private:
  void push(Minutes t, EventKind k, std::size_t ref) { queue_.push({t, k, seq_++, ref}); }

  void record(Minutes t, LogKind k, std::optional<TaskId> task = {},
              std::optional<WorkerId> worker = {}, std::optional<double> score = {},
              std::optional<double> reward = {}, double travel = 0.0) {
    log_.push_back({t, k, task, worker, score, reward, travel});
  }

  void handle(const Event& e) {
    switch (e.kind) {
      case EventKind::kTaskSubmitted: on_submit(e.time, e.ref); break;
      case EventKind::kOfflineBatch: on_batch(e.time); break;
      case EventKind::kDispatch: dispatch(e.time, e.ref); break;
      case EventKind::kAcceptDecision: on_decision(e.time, e.ref); break;
      case EventKind::kCompletion: on_completion(e.time, e.ref); break;
      case EventKind::kExpire: on_expire(e.time, e.ref); break;
    }
  }

  bool wants_batch(const Task& t) const {
    if (cfg_.policy != Policy::kPsc) return false;
    if (t.expiration - t.submit_time < 2 * cfg_.grid.step) return false;
    return std::any_of(batches_.begin(), batches_.end(),
                       [&](Minutes b) { return b >= t.submit_time && b < t.expiration; });
  }

  void on_submit(Minutes now, std::size_t i) {
    const Task& t = tasks_[i];
    record(now, LogKind::kSubmitted, t.id, {}, {}, t.pto_reward);
    state_[i].phase = wants_batch(t) ? Phase::kAwaitingBatch : Phase::kPending;
  }

  void on_batch(Minutes now) {
    std::vector<std::size_t> idx;
    std::vector<Task> batch;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      if (state_[i].phase == Phase::kAwaitingBatch && tasks_[i].expiration > now) {
        idx.push_back(i);
        batch.push_back(tasks_[i]);
      }
    }
    record(now, LogKind::kOfflineBatch, {}, {});
    if (batch.empty()) return;

    OfflineResult res = offline_assign(batch, workers_, dir_, now, cfg_.grid, velocity_,
                                       cfg_.trust_weights, rng_(), cfg_.offline);
    std::unordered_map<TaskId, std::size_t> by_id;
    for (std::size_t k = 0; k < idx.size(); ++k) by_id.emplace(tasks_[idx[k]].id, idx[k]);
    for (const Assignment& a : res.assignments) {
      std::size_t ti = by_id.at(a.task_id);
      std::size_t wi = worker_index_.at(a.worker_id);
      Live live{a, ti, wi, a.booking()};
      workers_[wi].book(live.booking);
      live_.push_back(live);
      state_[ti].phase = Phase::kScheduled;
      record(now, LogKind::kBatchAssign, a.task_id, a.worker_id, a.breakdown.total,
             tasks_[ti].pto_reward);
      push(a.dispatch_time, EventKind::kDispatch, live_.size() - 1);
    }
    for (const auto& [task_id, reason] : res.unassigned) {
      state_[by_id.at(task_id)].phase = Phase::kPending;
    }
  }

  // Booking already on the calendar; marks the task dispatched and schedules
  // the worker's answer.
  void dispatch(Minutes now, std::size_t li) {
    Live& l = live_[li];
    const Task& t = tasks_[l.task];
    apply_trust_update(workers_[l.worker], t.category_id, TrustEvent::kAssigned);
    state_[l.task].phase = Phase::kDispatched;
    record(now, LogKind::kDispatch, t.id, l.assignment.worker_id, l.assignment.breakdown.total,
           t.pto_reward, l.assignment.breakdown.travel_km);
    Minutes length = l.booking.end - l.booking.start;
    push(now + std::min(cfg_.response_delay, length), EventKind::kAcceptDecision, li);
  }

  void on_decision(Minutes now, std::size_t li) {
    Live& l = live_[li];
    const Task& t = tasks_[l.task];
    Worker& w = workers_[l.worker];
    if (accept_decision(w, l.assignment, now, rng_)) {
      apply_trust_update(w, t.category_id, TrustEvent::kAccepted);
      state_[l.task].phase = Phase::kAccepted;
      record(now, LogKind::kAccept, t.id, w.id, l.assignment.breakdown.total, t.pto_reward);
      push(l.booking.end, EventKind::kCompletion, li);
    } else {
      w.release(l.booking);
      released_ = true;
      state_[l.task].excluded.insert(w.id);
      state_[l.task].phase = Phase::kPending;
      record(now, LogKind::kReject, t.id, w.id, l.assignment.breakdown.total, t.pto_reward);
    }
  }

  void on_completion(Minutes now, std::size_t li) {
    Live& l = live_[li];
    const Task& t = tasks_[l.task];
    apply_trust_update(workers_[l.worker], t.category_id, TrustEvent::kCompleted);
    state_[l.task].phase = Phase::kCompleted;
    released_ = true;
    record(now, LogKind::kCompletion, t.id, l.assignment.worker_id, l.assignment.breakdown.total,
           t.pto_reward);
  }

  void on_expire(Minutes now, std::size_t i) {
    Phase& p = state_[i].phase;
    if (p == Phase::kNew || p == Phase::kAwaitingBatch || p == Phase::kPending ||
        p == Phase::kWaiting) {
      p = Phase::kExpired;
      record(now, LogKind::kExpire, tasks_[i].id);
    }
  }

  void online_round(Minutes now) {
    if (released_) {
      for (TaskState& s : state_) {
        if (s.phase == Phase::kWaiting) s.phase = Phase::kPending;
      }
      released_ = false;
    }
    std::vector<std::size_t> idx;
    std::vector<Task> pending;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      if (state_[i].phase == Phase::kPending) {
        idx.push_back(i);
        pending.push_back(tasks_[i]);
      }
    }
    if (idx.empty()) return;
    for (std::size_t k : queue_order(pending, dir_)) assign_online(now, idx[k]);
  }

  void assign_online(Minutes now, std::size_t i) {
    Task& t = tasks_[i];
    TaskState& st = state_[i];
    if (now >= t.expiration) {
      st.phase = Phase::kExpired;
      record(now, LogKind::kExpire, t.id);
      return;
    }
    std::vector<const Worker*> avail;
    avail.reserve(workers_.size());
    for (const Worker& w : workers_) {
      if (!st.excluded.contains(w.id)) avail.push_back(&w);
    }

    AssignOutcome outcome;
    if (cfg_.policy == Policy::kPsc) {
      OnlineResult r = online_assign(t, avail, dir_, now, velocity_, cfg_.trust_weights,
                                     RaisePolicy{true, st.raised});
      if (r.raises > 0) {
        st.raised += r.final_reward - t.pto_reward;
        t.pto_reward = r.final_reward;
        record(now, LogKind::kRewardRaise, t.id, {}, {}, t.pto_reward);
      }
      outcome = r.outcome;
    } else {
      outcome = baseline_nearest(t, avail, dir_, now, velocity_, cfg_.trust_weights);
    }

    if (const auto* a = std::get_if<Assignment>(&outcome)) {
      std::size_t wi = worker_index_.at(a->worker_id);
      Live live{*a, i, wi, a->booking()};
      workers_[wi].book(live.booking);
      live_.push_back(live);
      dispatch(now, live_.size() - 1);
      st.logged_wait = false;
    } else if (std::holds_alternative<DeadlineInfeasible>(outcome)) {
      st.phase = Phase::kFailed;
      record(now, LogKind::kFailDeadline, t.id);
    } else if (std::holds_alternative<RewardInsufficient>(outcome)) {
      st.phase = Phase::kFailed;
      record(now, LogKind::kFailReward, t.id);
    } else if (avail.empty()) {
      st.phase = Phase::kFailed;
      record(now, LogKind::kFailNoWorker, t.id);
    } else {
      st.phase = Phase::kWaiting;
      if (!st.logged_wait) record(now, LogKind::kWait, t.id);
      st.logged_wait = true;
    }
  }

  const SimConfig& cfg_;
  std::vector<Task> tasks_;
  std::vector<Worker> workers_;
  Directory dir_;
  VelocityProfile velocity_;
  std::mt19937_64 rng_;
  std::vector<TaskState> state_;
  std::unordered_map<WorkerId, std::size_t> worker_index_;
  std::vector<Minutes> batches_;
  std::vector<Live> live_;
  std::vector<EventRecord> log_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  bool released_ = false;
};

}  // namespace

SimReport run(const Scenario& scenario, const SimConfig& config) {
  auto violations = scenario.validate();
  if (!violations.empty()) throw ValidationError(std::move(violations));
  if (config.grid.step <= 0) throw std::invalid_argument("grid step must be positive");
  if (config.duration < 0) throw std::invalid_argument("duration must be non-negative");
  if (config.response_delay < 0) throw std::invalid_argument("response delay must be >= 0");
  if (!config.trust_weights.valid()) throw std::invalid_argument("trust weights need 0 < m1 < m2");
  if (config.offline_batch_times) {
    for (Minutes b : *config.offline_batch_times) {
      if (b < 0 || b > config.duration) {
        throw std::invalid_argument("offline batch time outside [0, duration]");
      }
    }
  }
  return Simulator(scenario, config).run();
}

}  // namespace psc
