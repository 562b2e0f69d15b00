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

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "psc/types.hpp"

namespace psc {

enum class Day : std::uint8_t { kMon = 0, kTue, kWed, kThu, kFri, kSat, kSun };

inline constexpr std::array<const char*, 7> kDayNames = {"mon", "tue", "wed", "thu",
                                                         "fri", "sat", "sun"};

/// Subset of the seven weekdays, bit i set for Day(i).
struct DaySet {
  std::uint8_t bits = 0;

  static constexpr DaySet none() { return {0}; }
  static constexpr DaySet all() { return {0x7F}; }
  static constexpr DaySet weekdays() { return {0x1F}; }
  static constexpr DaySet weekend() { return {0x60}; }
  static constexpr DaySet of(Day d) { return {static_cast<std::uint8_t>(1u << static_cast<int>(d))}; }

  constexpr bool contains(int day) const { return (bits >> day) & 1u; }
  constexpr bool empty() const { return bits == 0; }
  friend constexpr DaySet operator|(DaySet a, DaySet b) {
    return {static_cast<std::uint8_t>(a.bits | b.bits)};
  }
  friend constexpr bool operator==(DaySet, DaySet) = default;
};

template <class V>
struct ScheduleSegment {
  DaySet days;
  int start_min = 0;  // [0, 1440)
  int end_min = 0;    // (0, 1440]
  V value{};
  friend bool operator==(const ScheduleSegment&, const ScheduleSegment&) = default;
};

/// Piecewise-constant function of time with a one-week period. Minutes not
/// covered by any segment take the default value.
template <class V>
class WeeklySchedule {
 public:
  using Segment = ScheduleSegment<V>;

  WeeklySchedule() : WeeklySchedule(V{}) {}
  explicit WeeklySchedule(V default_value) : WeeklySchedule({}, std::move(default_value)) {}

  /// Throws std::invalid_argument on empty or out-of-range segments and on
  /// segments that overlap on a shared day.
  WeeklySchedule(std::vector<Segment> segments, V default_value)
      : segments_(std::move(segments)), default_(std::move(default_value)) {
    build();
  }

  const std::vector<Segment>& segments() const { return segments_; }
  const V& default_value() const { return default_; }

  /// Value in force at sim time t (t >= 0; negative t wraps the same way).
  const V& value_at(Minutes t) const { return values_[piece_index(week_offset(t))]; }

  /// Constant pieces covering [0, kMinutesPerWeek): piece i spans
  /// [starts()[i], starts()[i+1]) with the last piece ending at the week end.
  const std::vector<Minutes>& starts() const { return starts_; }
  const std::vector<V>& values() const { return values_; }

  std::size_t piece_index(Minutes week_off) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), week_off);
    return static_cast<std::size_t>(it - starts_.begin()) - 1;
  }

  static constexpr Minutes week_offset(Minutes t) {
    Minutes r = t % kMinutesPerWeek;
    return r < 0 ? r + kMinutesPerWeek : r;
  }

  friend bool operator==(const WeeklySchedule& a, const WeeklySchedule& b) {
    return a.segments_ == b.segments_ && a.default_ == b.default_;
  }

 private:
  void build() {
    std::array<std::vector<std::pair<int, int>>, 7> per_day;
    std::vector<std::pair<Minutes, std::size_t>> opens;  // (week minute, segment)
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const Segment& s = segments_[i];
      if (s.days.empty()) throw std::invalid_argument("schedule segment has no days");
      if (s.start_min < 0 || s.start_min >= kMinutesPerDay || s.end_min <= s.start_min ||
          s.end_min > kMinutesPerDay) {
        throw std::invalid_argument("schedule segment has invalid minute range [" +
                                    std::to_string(s.start_min) + ", " +
                                    std::to_string(s.end_min) + ")");
      }
      for (int d = 0; d < 7; ++d) {
        if (!s.days.contains(d)) continue;
        for (auto [a, b] : per_day[d]) {
          if (s.start_min < b && a < s.end_min) {
            throw std::invalid_argument(std::string("schedule segments overlap on ") +
                                        kDayNames[d]);
          }
        }
        per_day[d].emplace_back(s.start_min, s.end_min);
        opens.emplace_back(d * kMinutesPerDay + s.start_min, i);
      }
    }
    std::sort(opens.begin(), opens.end());

    starts_.clear();
    values_.clear();
    auto push = [&](Minutes at, const V& v) {
      if (!values_.empty() && values_.back() == v) return;  // merge equal neighbours
      starts_.push_back(at);
      values_.push_back(v);
    };
    Minutes cursor = 0;
    for (auto [open, idx] : opens) {
      const Segment& s = segments_[idx];
      Minutes close = open - s.start_min + s.end_min;
      if (open > cursor) push(cursor, default_);
      push(open, s.value);
      cursor = close;
    }
    if (cursor < kMinutesPerWeek || starts_.empty()) push(cursor, default_);
    if (starts_.front() != 0) {
      starts_.insert(starts_.begin(), 0);
      values_.insert(values_.begin(), default_);
    }
  }

  std::vector<Segment> segments_;
  V default_;
  std::vector<Minutes> starts_;
  std::vector<V> values_;
};

using StatusSchedule = WeeklySchedule<double>;

/// Exact integral of a status schedule over [t0, t1], values quantized to
/// micro-units. Precomputes per-piece prefix sums.
class StatusIntegrator {
 public:
  explicit StatusIntegrator(const StatusSchedule& s);

  /// Integral from sim time 0 to t (t may be negative).
  AvailabilityMinutes cumulative(Minutes t) const;
  AvailabilityMinutes integral(Minutes t0, Minutes t1) const {
    return cumulative(t1) - cumulative(t0);
  }

 private:
  std::vector<Minutes> starts_;
  std::vector<std::int64_t> micros_;
  std::vector<std::int64_t> prefix_;  // integral from week start to starts_[i]
  std::int64_t week_total_ = 0;
};

/// Value of the schedule at t.
template <class V>
const V& value_at(const WeeklySchedule<V>& s, Minutes t) {
  return s.value_at(t);
}

/// Exact integral of status over [t0, t1]; periodic beyond one week.
AvailabilityMinutes status_integral(const StatusSchedule& s, Minutes t0, Minutes t1);

/// Mean availability over [t, expiration); 0 for a degenerate window.
double availability_score(const StatusSchedule& s, Minutes t, Minutes expiration);
double availability_score(const StatusIntegrator& s, Minutes t, Minutes expiration);

}  // namespace psc
