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

#include <cmath>
#include <compare>
#include <cstdint>

namespace psc {

/// Simulation clock, whole minutes since Monday 00:00 of week 0.
using Minutes = std::int64_t;

inline constexpr Minutes kMinutesPerDay = 1440;
inline constexpr Minutes kMinutesPerWeek = 7 * kMinutesPerDay;

using TaskId = std::int64_t;
using WorkerId = std::int64_t;
using OwnerId = std::int64_t;
using CategoryId = std::int64_t;

/// Availability values are integrated in micro-units so that integrals over
/// integer-minute windows are exact and additive.
inline constexpr std::int64_t kAvailabilityScale = 1'000'000;

inline std::int64_t availability_micros(double p) {
  return std::llround(p * static_cast<double>(kAvailabilityScale));
}

/// Integral of availability over time, in micro-availability-minutes.
struct AvailabilityMinutes {
  std::int64_t micros = 0;

  constexpr double value() const {
    return static_cast<double>(micros) / static_cast<double>(kAvailabilityScale);
  }
  friend constexpr AvailabilityMinutes operator+(AvailabilityMinutes a, AvailabilityMinutes b) {
    return {a.micros + b.micros};
  }
  friend constexpr AvailabilityMinutes operator-(AvailabilityMinutes a, AvailabilityMinutes b) {
    return {a.micros - b.micros};
  }
  friend constexpr auto operator<=>(AvailabilityMinutes, AvailabilityMinutes) = default;
};

}  // namespace psc
