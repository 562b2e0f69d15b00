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

#include "psc/schedule.hpp"

namespace psc {

namespace {

Minutes floor_div(Minutes a, Minutes b) {
  Minutes q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Walks the pieces once; shared by the one-shot integral and the integrator.
std::int64_t week_prefix(const StatusSchedule& s, Minutes week_off) {
  const auto& starts = s.starts();
  const auto& values = s.values();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    Minutes end = i + 1 < starts.size() ? starts[i + 1] : kMinutesPerWeek;
    if (week_off <= starts[i]) break;
    Minutes upto = std::min(end, week_off);
    acc += availability_micros(values[i]) * (upto - starts[i]);
  }
  return acc;
}

AvailabilityMinutes cumulative_direct(const StatusSchedule& s, Minutes t) {
  Minutes weeks = floor_div(t, kMinutesPerWeek);
  Minutes off = t - weeks * kMinutesPerWeek;
  return {weeks * week_prefix(s, kMinutesPerWeek) + week_prefix(s, off)};
}

}  // namespace

StatusIntegrator::StatusIntegrator(const StatusSchedule& s) : starts_(s.starts()) {
  micros_.reserve(starts_.size());
  prefix_.reserve(starts_.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    Minutes end = i + 1 < starts_.size() ? starts_[i + 1] : kMinutesPerWeek;
    micros_.push_back(availability_micros(s.values()[i]));
    prefix_.push_back(acc);
    acc += micros_.back() * (end - starts_[i]);
  }
  week_total_ = acc;
}

AvailabilityMinutes StatusIntegrator::cumulative(Minutes t) const {
  Minutes weeks = floor_div(t, kMinutesPerWeek);
  Minutes off = t - weeks * kMinutesPerWeek;
  auto it = std::upper_bound(starts_.begin(), starts_.end(), off);
  auto i = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return {weeks * week_total_ + prefix_[i] + micros_[i] * (off - starts_[i])};
}

AvailabilityMinutes status_integral(const StatusSchedule& s, Minutes t0, Minutes t1) {
  return cumulative_direct(s, t1) - cumulative_direct(s, t0);
}

double availability_score(const StatusSchedule& s, Minutes t, Minutes expiration) {
  if (t >= expiration) return 0.0;
  return status_integral(s, t, expiration).value() / static_cast<double>(expiration - t);
}

double availability_score(const StatusIntegrator& s, Minutes t, Minutes expiration) {
  if (t >= expiration) return 0.0;
  return s.integral(t, expiration).value() / static_cast<double>(expiration - t);
}

}  // namespace psc
