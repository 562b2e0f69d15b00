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

#include "psc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "psc/workload.hpp"

namespace psc::cli {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string metrics_row(Policy p, std::uint64_t seed, const Metrics& m) {
  std::ostringstream o;
  o << to_string(p) << ',' << seed << ',' << m.tasks_submitted << ',' << m.tasks_assigned << ','
    << m.tasks_accepted << ',' << m.tasks_completed << ',' << m.sim_minutes << ','
    << format_number(m.performance_def1) << ',' << format_number(m.completion_fraction) << ','
    << format_number(m.mean_travel_km);
  return o.str();
}

std::string events_csv(std::span<const EventRecord> log) {
  std::ostringstream o;
  o << kEventsHeader << '\n';
  for (const EventRecord& r : log) {
    o << r.time << ',' << to_string(r.kind) << ',';
    if (r.task_id) o << *r.task_id;
    o << ',';
    if (r.worker_id) o << *r.worker_id;
    o << ',';
    if (r.score_total) o << format_number(*r.score_total);
    o << ',';
    if (r.reward) o << format_number(*r.reward);
    o << '\n';
  }
  return o.str();
}

Scenario load_scenario(const std::string& ref) {
  if (ref.starts_with("builtin:")) return builtin_scenario(ref);
  return load(ref);
}

SimConfig make_config(Policy p, std::uint64_t seed, const GridFlags& g) {
  SimConfig c;
  c.policy = p;
  c.seed = seed;
  if (g.step) c.grid.step = *g.step;
  if (g.horizon) c.grid.horizon = *g.horizon;
  return c;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// Maps the library's exception types onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParamError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ExpiredError& e) {
    err << "Expired: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFault;
  }
}

}  // namespace

int cmd_generate(const std::filesystem::path& params_path, std::uint64_t seed,
                 const std::filesystem::path& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GenParams p = load_params(params_path);
    Scenario s = generate(p, seed);
    save(s, out_path);
    out << "wrote " << out_path.string() << ": " << s.workers.size() << " workers, "
        << s.tasks.size() << " tasks, " << s.categories.size() << " categories, "
        << s.owners.size() << " owners\n";
    return kExitOk;
  });
}

int cmd_run(const std::string& scenario, const std::string& policy, std::uint64_t seed,
            const std::filesystem::path& metrics_out,
            const std::optional<std::filesystem::path>& events_out, const GridFlags& grid,
            std::ostream& out, std::ostream& err) {
  auto p = parse_policy(policy);
  if (!p) {
    err << "error: unknown policy '" << policy << "' (expected psc or sc-nearest)\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    Scenario s = load_scenario(scenario);
    SimReport r = run(s, make_config(*p, seed, grid));
    write_text(metrics_out, std::string(kMetricsHeader) + "\n" + metrics_row(*p, seed, r.metrics) + "\n");
    if (events_out) write_text(*events_out, events_csv(r.log));
    out << metrics_row(*p, seed, r.metrics) << '\n';
    return kExitOk;
  });
}

std::vector<CompareRow> compare(const Scenario& s, std::uint64_t first, std::uint64_t last,
                                const GridFlags& grid) {
  std::vector<CompareRow> rows;
  for (Policy p : {Policy::kPsc, Policy::kScNearest}) {
    for (std::uint64_t seed = first; seed <= last; ++seed) {
      rows.push_back({p, seed, {}});
      if (seed == last) break;  // last may be UINT64_MAX
    }
  }
  const auto n = static_cast<std::int64_t>(rows.size());
  std::vector<std::string> faults(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    try {
      row.metrics = run(s, make_config(row.policy, row.seed, grid)).metrics;
    } catch (const std::exception& e) {
      faults[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (!faults[i].empty()) throw std::runtime_error(faults[i]);
  }
  return rows;
}

std::string compare_csv(std::span<const CompareRow> rows) {
  std::ostringstream o;
  o << kCompareHeader << '\n';
  for (const auto& r : rows) {
    o << to_string(r.policy) << ',' << r.seed << ',' << format_number(r.metrics.performance_def1)
      << ',' << format_number(r.metrics.completion_fraction) << ','
      << format_number(r.metrics.mean_travel_km) << '\n';
  }
  for (Policy p : {Policy::kPsc, Policy::kScNearest}) {
    double perf = 0, frac = 0, travel = 0;
    int n = 0;
    for (const auto& r : rows) {
      if (r.policy != p) continue;
      perf += r.metrics.performance_def1;
      frac += r.metrics.completion_fraction;
      travel += r.metrics.mean_travel_km;
      ++n;
    }
    if (n == 0) continue;
    o << to_string(p) << ",mean," << format_number(perf / n) << ',' << format_number(frac / n)
      << ',' << format_number(travel / n) << '\n';
  }
  return o.str();
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_seed_range(const std::string& s) {
  auto parse = [](const std::string& part) -> std::optional<std::uint64_t> {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    try {
      return std::stoull(part);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = parse(s);
    if (!v) return std::nullopt;
    return std::make_pair(*v, *v);
  }
  auto a = parse(s.substr(0, dots));
  auto b = parse(s.substr(dots + 2));
  if (!a || !b || *a > *b) return std::nullopt;
  return std::make_pair(*a, *b);
}

int cmd_compare(const std::string& scenario, const std::string& seeds,
                const std::filesystem::path& out_path, const GridFlags& grid, std::ostream& out,
                std::ostream& err) {
  auto range = parse_seed_range(seeds);
  if (!range) {
    err << "error: --seeds expects A..B with A <= B\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    Scenario s = load_scenario(scenario);
    if (auto v = s.validate(); !v.empty()) throw ValidationError(std::move(v));
    auto rows = compare(s, range->first, range->second, grid);
    std::string csv = compare_csv(rows);
    write_text(out_path, csv);
    out << csv;
    return kExitOk;
  });
}

int cmd_score(const std::string& scenario, TaskId task_id, WorkerId worker_id, Minutes t,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario s = load_scenario(scenario);
    auto task = std::find_if(s.tasks.begin(), s.tasks.end(),
                             [&](const Task& x) { return x.id == task_id; });
    if (task == s.tasks.end()) throw std::out_of_range("unknown task " + std::to_string(task_id));
    auto worker = std::find_if(s.workers.begin(), s.workers.end(),
                               [&](const Worker& x) { return x.id == worker_id; });
    if (worker == s.workers.end()) {
      throw std::out_of_range("unknown worker " + std::to_string(worker_id));
    }
    Directory dir(s.owners, s.categories);
    SimConfig defaults;
    ScoreBreakdown b = total_score(*task, *worker, dir.owner(task->owner_id),
                                   dir.category(task->category_id), t, s.velocity,
                                   defaults.trust_weights);
    out << "task " << task_id << " worker " << worker_id << " t " << t << '\n'
        << "travel_km " << format_number(b.travel_km) << '\n'
        << "time_to_complete_min " << format_number(b.ttc_min) << '\n'
        << "time_score " << format_number(b.time_score) << '\n'
        << "availability " << format_number(b.availability) << '\n'
        << "reward " << format_number(b.reward) << '\n'
        << "trust_weighted " << format_number(b.trust_weighted) << '\n'
        << "time_feasible " << (b.time_feasible ? "true" : "false") << '\n'
        << "total " << format_number(b.total) << '\n';
    return kExitOk;
  });
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern-aware spatial crowdsourcing assignment simulator"};
  app.require_subcommand(1);

  GridFlags grid;
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-step-min", grid.step, "Offline time grid step (minutes)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--horizon-min", grid.horizon, "Last offline grid time (sim minutes)");
  };

  std::string params, scenario, policy = "psc", seeds, out_path, events;
  std::uint64_t seed = 1;
  TaskId task = 0;
  WorkerId worker = 0;
  Minutes t = 0;

  auto* gen = app.add_subcommand("generate", "Generate a synthetic scenario");
  gen->add_option("--params", params, "Generator params (JSON)")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out_path, "Scenario output path")->required();

  auto* run_cmd = app.add_subcommand("run", "Simulate one policy");
  run_cmd->add_option("--scenario", scenario, "Scenario path or builtin:<name>")->required();
  run_cmd->add_option("--policy", policy, "psc | sc-nearest");
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--out", out_path, "Metrics CSV output")->required();
  run_cmd->add_option("--events", events, "Event log CSV output");
  add_grid(run_cmd);

  auto* cmp = app.add_subcommand("compare", "Run both policies over a seed range");
  cmp->add_option("--scenario", scenario, "Scenario path or builtin:<name>")->required();
  cmp->add_option("--seeds", seeds, "Seed range A..B")->required();
  cmp->add_option("--out", out_path, "Comparison CSV output")->required();
  add_grid(cmp);

  auto* score = app.add_subcommand("score", "Print the score breakdown of one pair");
  score->add_option("--scenario", scenario, "Scenario path or builtin:<name>")->required();
  score->add_option("--task", task, "Task id")->required();
  score->add_option("--worker", worker, "Worker id")->required();
  score->add_option("--t", t, "Sim time (minutes)")->required();

  auto* list = app.add_subcommand("builtins", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*gen) return cmd_generate(params, seed, out_path, out, err);
  if (*run_cmd) {
    std::optional<std::filesystem::path> ev;
    if (!events.empty()) ev = events;
    return cmd_run(scenario, policy, seed, out_path, ev, grid, out, err);
  }
  if (*cmp) return cmd_compare(scenario, seeds, out_path, grid, out, err);
  if (*score) return cmd_score(scenario, task, worker, t, out, err);
  if (*list) {
    for (const auto& [name, s] : builtin_scenarios()) {
      out << "builtin:" << name << " (" << s.workers.size() << " workers, " << s.tasks.size()
          << " tasks)\n";
    }
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace psc::cli
