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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psc/simulate.hpp"

namespace psc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 1;
inline constexpr int kExitUsage = 2;

/// Six significant digits, "%.6g".
std::string format_number(double v);

inline constexpr const char* kMetricsHeader =
    "policy,seed,tasks_submitted,tasks_assigned,tasks_accepted,tasks_completed,sim_minutes,"
    "performance_def1,completion_fraction,mean_travel_km";
inline constexpr const char* kEventsHeader = "time_min,event_kind,task_id,worker_id,score_total,reward";
inline constexpr const char* kCompareHeader =
    "policy,seed,performance_def1,completion_fraction,mean_travel_km";

std::string metrics_row(Policy p, std::uint64_t seed, const Metrics& m);
std::string events_csv(std::span<const EventRecord> log);

/// A path, or "builtin:<name>" for one of the built-in scenarios.
Scenario load_scenario(const std::string& ref);

struct GridFlags {
  std::optional<Minutes> step;
  std::optional<Minutes> horizon;
};

SimConfig make_config(Policy p, std::uint64_t seed, const GridFlags& g);

int cmd_generate(const std::filesystem::path& params_path, std::uint64_t seed,
                 const std::filesystem::path& out_path, std::ostream& out, std::ostream& err);

int cmd_run(const std::string& scenario, const std::string& policy, std::uint64_t seed,
            const std::filesystem::path& metrics_out,
            const std::optional<std::filesystem::path>& events_out, const GridFlags& grid,
            std::ostream& out, std::ostream& err);

struct CompareRow {
  Policy policy = Policy::kPsc;
  std::uint64_t seed = 0;
  Metrics metrics;
};

/// Both policies for every seed in [first, last]; rows ordered psc first, then
/// by seed.
std::vector<CompareRow> compare(const Scenario& s, std::uint64_t first, std::uint64_t last,
                                const GridFlags& grid);
std::string compare_csv(std::span<const CompareRow> rows);

int cmd_compare(const std::string& scenario, const std::string& seeds,
                const std::filesystem::path& out_path, const GridFlags& grid, std::ostream& out,
                std::ostream& err);

int cmd_score(const std::string& scenario, TaskId task, WorkerId worker, Minutes t,
              std::ostream& out, std::ostream& err);

/// "A..B" or a single number.
std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_seed_range(const std::string& s);

/// Full command line entry point; returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psc::cli
