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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psc/scenario.hpp"

namespace psc {

/// Knobs for the synthetic workload generator. Counts are signed so that a
/// negative value in a params file is reported instead of wrapping.
struct GenParams {
  std::int64_t n_workers = 200;
  std::int64_t n_tasks = 500;
  std::int64_t n_categories = 4;
  std::int64_t n_owners = 20;
  double map_size_km = 20.0;
  double fraction_commuters = 0.6;
  std::vector<double> status_levels{0.1, 0.5, 0.9};
  double reward_min = 5.0;
  double reward_max = 25.0;
  double demand_min = 2.0;
  double demand_max = 20.0;
  Minutes duration_min = 10;
  Minutes duration_max = 45;
  double urgent_fraction = 0.5;
  Minutes urgent_window_min = 45;
  Minutes urgent_window_max = 120;
  Minutes relaxed_window_min = 240;
  Minutes relaxed_window_max = 2160;
  double start_window_fraction = 0.1;
  Minutes horizon = kMinutesPerWeek;
  friend bool operator==(const GenParams&, const GenParams&) = default;
};

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed scenario or params document; message carries the field path
/// (and line for syntax errors).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ParamError for infeasible parameters.
void check_params(const GenParams& p);

/// Deterministic per (params, seed). floor(n_workers * fraction_commuters)
/// workers get the six-segment weekday commute routine.
Scenario generate(const GenParams& p, std::uint64_t seed);

std::string to_json(const Scenario& s);
/// Throws ParseError on syntax/schema problems and ValidationError when the
/// parsed scenario breaks an invariant.
Scenario scenario_from_json(std::string_view text);

void save(const Scenario& s, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

std::string to_json(const GenParams& p);
GenParams params_from_json(std::string_view text);
GenParams load_params(const std::filesystem::path& path);

inline constexpr double kKmPerMile = 1.609;

/// The two motivating scenarios: "example1-flower-delivery" and
/// "example2-high-entropy".
std::vector<std::pair<std::string, Scenario>> builtin_scenarios();

/// "builtin:<name>" or a plain builtin name; throws std::out_of_range.
Scenario builtin_scenario(std::string_view name);

}  // namespace psc
