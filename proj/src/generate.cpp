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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "psc/simulate.hpp"
#include "psc/workload.hpp"

namespace psc {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double unit() { return uniform01(rng_); }
  double real(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Inclusive; modulo bias is irrelevant at these ranges.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }
  bool chance(double p) { return unit() < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

double nearest_level(const std::vector<double>& levels, double target) {
  return *std::min_element(levels.begin(), levels.end(), [&](double a, double b) {
    return std::abs(a - target) < std::abs(b - target);
  });
}

VelocityProfile default_velocity() {
  using Seg = ScheduleSegment<double>;
  return VelocityProfile{
      WeeklySchedule<double>({Seg{DaySet::all(), 0, 360, 45.0},
                              Seg{DaySet::weekdays(), 420, 540, 20.0},
                              Seg{DaySet::weekdays(), 960, 1080, 20.0},
                              Seg{DaySet::all(), 1320, 1440, 45.0}},
                             30.0),
      5.0};
}

Point point_in(Draw& d, double size) { return {d.real(0.0, size), d.real(0.0, size)}; }

Worker commuter(Draw& d, const GenParams& p) {
  Worker w;
  Point home = point_in(d, p.map_size_km);
  Point work = point_in(d, p.map_size_km);
  Region route = Rect{std::min(home.x, work.x), std::min(home.y, work.y), std::max(home.x, work.x),
                      std::max(home.y, work.y)};
  Region lunch = Disc{work.x, work.y, 0.5};
  const DaySet wd = DaySet::weekdays();
  w.pattern = WeeklySchedule<Region>({{wd, 420, 480, route},
                                      {wd, 480, 720, Region{work}},
                                      {wd, 720, 780, lunch},
                                      {wd, 780, 1020, Region{work}},
                                      {wd, 1020, 1080, route}},
                                     Region{home});

  // Weekday availability shaped like a commute day: free on the road, busy at
  // work, partly free at lunch, mostly unavailable at night. Each block is
  // snapped to the nearest allowed level and occasionally re-drawn.
  auto level = [&](double shape) {
    return d.chance(0.3) ? d.pick(p.status_levels) : nearest_level(p.status_levels, shape);
  };
  std::vector<ScheduleSegment<double>> status{
      {wd, 0, 420, 0.0},     {wd, 420, 480, 0.0},  {wd, 480, 720, 0.0},
      {wd, 720, 780, 0.0},   {wd, 780, 1020, 0.0}, {wd, 1020, 1080, 0.0},
      {wd, 1080, 1440, 0.0},
  };
  const double shape[] = {0.05, 0.9, 0.1, 0.6, 0.1, 0.9, 0.05};
  double night = level(shape[0]);
  for (std::size_t i = 0; i < status.size(); ++i) {
    status[i].value = (i == 0 || i + 1 == status.size()) ? night : level(shape[i]);
  }
  w.status = StatusSchedule(std::move(status), d.pick(p.status_levels));
  return w;
}

Worker homebody(Draw& d, const GenParams& p) {
  Worker w;
  Point home = point_in(d, p.map_size_km);
  Region errand = Disc{std::clamp(home.x + d.real(-2.0, 2.0), 0.0, p.map_size_km),
                       std::clamp(home.y + d.real(-2.0, 2.0), 0.0, p.map_size_km), 1.0};
  w.pattern = WeeklySchedule<Region>({{DaySet::all(), 600, 720, errand}}, Region{home});
  std::vector<ScheduleSegment<double>> status;
  for (int day = 0; day < 7; ++day) {
    DaySet ds = DaySet::of(static_cast<Day>(day));
    int cut[] = {0, 480, 720, 1020, 1440};
    for (int b = 0; b < 4; ++b) status.push_back({ds, cut[b], cut[b + 1], d.pick(p.status_levels)});
  }
  w.status = StatusSchedule(std::move(status), d.pick(p.status_levels));
  return w;
}

}  // namespace

void check_params(const GenParams& p) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ParamError(what);
  };
  need(p.n_workers >= 0, "n_workers must be >= 0");
  need(p.n_tasks >= 0, "n_tasks must be >= 0");
  need(p.n_categories >= 1, "n_categories must be >= 1");
  need(p.n_owners >= 1, "n_owners must be >= 1");
  need(p.map_size_km > 0.0 && std::isfinite(p.map_size_km), "map_size_km must be > 0");
  need(p.fraction_commuters >= 0.0 && p.fraction_commuters <= 1.0,
       "fraction_commuters must be in [0,1]");
  need(!p.status_levels.empty(), "status_levels must not be empty");
  for (double s : p.status_levels) need(s >= 0.0 && s <= 1.0, "status_levels must be in [0,1]");
  need(p.reward_min > 0.0 && p.reward_min <= p.reward_max, "reward range must be non-empty and > 0");
  need(p.demand_min >= 0.0 && p.demand_min <= p.demand_max, "demand range must be non-empty");
  need(p.duration_min >= 0 && p.duration_min <= p.duration_max, "duration range must be non-empty");
  need(p.urgent_fraction >= 0.0 && p.urgent_fraction <= 1.0, "urgent_fraction must be in [0,1]");
  need(p.start_window_fraction >= 0.0 && p.start_window_fraction <= 1.0,
       "start_window_fraction must be in [0,1]");
  need(p.urgent_window_min >= 1 && p.urgent_window_min <= p.urgent_window_max,
       "urgent window range must be non-empty and >= 1");
  need(p.relaxed_window_min >= 1 && p.relaxed_window_min <= p.relaxed_window_max,
       "relaxed window range must be non-empty and >= 1");
  need(p.horizon > std::max(p.urgent_window_max, p.relaxed_window_max),
       "horizon must exceed the longest task window");
}

Scenario generate(const GenParams& p, std::uint64_t seed) {
  check_params(p);
  Draw d(seed);
  Scenario s;
  s.units = "km, minutes";
  s.extent_km = Rect{0.0, 0.0, p.map_size_km, p.map_size_km};
  s.velocity = default_velocity();

  for (std::int64_t c = 1; c <= p.n_categories; ++c) {
    s.categories.push_back(
        {c, "category-" + std::to_string(c), d.real(0.2, 1.0), d.real(p.reward_min, p.reward_max)});
  }
  for (std::int64_t o = 1; o <= p.n_owners; ++o) {
    s.owners.push_back({o, d.real(0.3, 1.0), d.real(0.0, 0.5 * p.reward_max),
                        std::max(1.0, 0.1 * p.reward_max)});
  }

  // Exactly floor(n * f) commuters, positions chosen by a seeded shuffle.
  const auto n_commuters =
      static_cast<std::int64_t>(std::floor(static_cast<double>(p.n_workers) * p.fraction_commuters));
  std::vector<std::int64_t> order(static_cast<std::size_t>(p.n_workers));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(d.integer(0, static_cast<std::int64_t>(i) - 1))]);
  }
  std::vector<bool> is_commuter(order.size(), false);
  for (std::int64_t k = 0; k < n_commuters; ++k) is_commuter[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;

  for (std::int64_t i = 0; i < p.n_workers; ++i) {
    Worker w = is_commuter[static_cast<std::size_t>(i)] ? commuter(d, p) : homebody(d, p);
    w.id = i + 1;
    for (const TaskCategory& c : s.categories) {
      w.reward_demand[c.id] = d.real(p.demand_min, p.demand_max);
      w.trust[c.id] = TrustCounters{0, 0, 0, d.real(0.5, 1.0)};
    }
    s.workers.push_back(std::move(w));
  }

  for (std::int64_t i = 0; i < p.n_tasks; ++i) {
    Task t;
    t.id = i + 1;
    t.owner_id = d.integer(1, p.n_owners);
    t.category_id = d.integer(1, p.n_categories);
    t.description = "synthetic task " + std::to_string(t.id);
    bool urgent = d.chance(p.urgent_fraction);
    Minutes window = urgent ? d.integer(p.urgent_window_min, p.urgent_window_max)
                            : d.integer(p.relaxed_window_min, p.relaxed_window_max);
    t.submit_time = d.integer(0, p.horizon - window);
    t.expiration = t.submit_time + window;
    t.duration = d.integer(p.duration_min, p.duration_max);
    Point at = point_in(d, p.map_size_km);
    if (d.chance(0.2)) {
      double half = d.real(0.1, 0.5);
      t.region = Rect{at.x - half, at.y - half, at.x + half, at.y + half};
    } else {
      t.region = at;
    }
    t.pto_reward = d.real(p.reward_min, p.reward_max);
    t.entered_priority = d.unit();
    if (d.chance(p.start_window_fraction)) {
      Minutes earliest = t.submit_time + d.integer(0, window / 2);
      Minutes latest = std::min(t.expiration, earliest + d.integer(0, window / 2));
      t.window_start = earliest;
      t.window_end = latest;
    }
    s.tasks.push_back(std::move(t));
  }
  return s;
}

}  // namespace psc
