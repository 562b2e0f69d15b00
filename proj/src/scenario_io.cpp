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
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "psc/workload.hpp"

namespace psc {

using nlohmann::json;

namespace {

// Object reader that remembers which keys were consumed so leftovers can be
// reported as unknown fields.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError((path_.empty() ? std::string("<root>") : path_) + ": " + msg);
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) {
    if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  T get(const char* key) {
    const json& v = raw(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw std::runtime_error("not a number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw std::runtime_error("not an integer");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw std::runtime_error("not a string");
      }
      return v.get<T>();
    } catch (const std::exception& e) {
      fail(std::string("field '") + key + "': " + e.what());
    }
  }

  template <class T>
  std::optional<T> opt(const char* key) {
    if (!has(key)) return std::nullopt;
    return get<T>(key);
  }

  std::string child(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) fail("unknown field '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json& array_at(Fields& f, const char* key) {
  const json& a = f.raw(key);
  if (!a.is_array()) f.fail(std::string("field '") + key + "' must be an array");
  return a;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// --- regions ---------------------------------------------------------------

json region_json(const Region& r) {
  if (const auto* p = std::get_if<Point>(&r)) return {{"kind", "point"}, {"x", p->x}, {"y", p->y}};
  if (const auto* b = std::get_if<Rect>(&r)) {
    return {{"kind", "rect"},
            {"min_x", b->min_x},
            {"min_y", b->min_y},
            {"max_x", b->max_x},
            {"max_y", b->max_y}};
  }
  const auto& d = std::get<Disc>(r);
  return {{"kind", "disc"}, {"cx", d.cx}, {"cy", d.cy}, {"radius", d.radius}};
}

Region read_region(const json& j, const std::string& path) {
  Fields f(j, path);
  auto kind = f.get<std::string>("kind");
  Region r;
  if (kind == "point") {
    r = Point{f.get<double>("x"), f.get<double>("y")};
  } else if (kind == "rect") {
    r = Rect{f.get<double>("min_x"), f.get<double>("min_y"), f.get<double>("max_x"),
             f.get<double>("max_y")};
  } else if (kind == "disc") {
    r = Disc{f.get<double>("cx"), f.get<double>("cy"), f.get<double>("radius")};
  } else {
    f.fail("unknown region kind '" + kind + "'");
  }
  f.done();
  if (!is_valid(r)) f.fail("invalid region bounds");
  return r;
}

// --- schedules ---------------------------------------------------------------

json days_json(DaySet d) {
  json out = json::array();
  for (int i = 0; i < 7; ++i) {
    if (d.contains(i)) out.push_back(kDayNames[static_cast<std::size_t>(i)]);
  }
  return out;
}

DaySet read_days(const json& j, const Fields& f) {
  if (!j.is_array()) f.fail("field 'days' must be an array of day names");
  DaySet d;
  for (const json& name : j) {
    auto it = name.is_string()
                  ? std::find(kDayNames.begin(), kDayNames.end(), name.get<std::string>())
                  : kDayNames.end();
    if (it == kDayNames.end()) f.fail("unknown day " + name.dump());
    d = d | DaySet::of(static_cast<Day>(it - kDayNames.begin()));
  }
  return d;
}

template <class V, class ToJson>
json segments_json(const WeeklySchedule<V>& s, ToJson value_json) {
  json out = json::array();
  for (const auto& seg : s.segments()) {
    out.push_back({{"days", days_json(seg.days)},
                   {"start_min", seg.start_min},
                   {"end_min", seg.end_min},
                   {"value", value_json(seg.value)}});
  }
  return out;
}

template <class V, class ReadValue>
WeeklySchedule<V> read_schedule(const json& arr, const std::string& path, V default_value,
                                ReadValue read_value) {
  if (!arr.is_array()) throw ParseError(path + ": must be an array of segments");
  std::vector<ScheduleSegment<V>> segs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Fields f(arr[i], index_path(path, i));
    ScheduleSegment<V> s;
    s.days = read_days(f.raw("days"), f);
    s.start_min = f.get<int>("start_min");
    s.end_min = f.get<int>("end_min");
    s.value = read_value(f.raw("value"), f.child("value"));
    f.done();
    segs.push_back(std::move(s));
  }
  try {
    return WeeklySchedule<V>(std::move(segs), std::move(default_value));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

// --- entities ----------------------------------------------------------------

json velocity_json(const VelocityProfile& v) {
  return {{"floor_kmh", v.floor_speed},
          {"default_kmh", v.schedule.default_value()},
          {"segments", segments_json(v.schedule, [](double x) { return json(x); })}};
}

VelocityProfile read_velocity(const json& j, const std::string& path) {
  Fields f(j, path);
  VelocityProfile v;
  v.floor_speed = f.get<double>("floor_kmh");
  double def = f.get<double>("default_kmh");
  v.schedule = read_schedule<double>(f.raw("segments"), f.child("segments"), def, read_number);
  f.done();
  if (!(v.floor_speed > 0.0)) f.fail("floor_kmh must be > 0");
  return v;
}

json worker_json(const Worker& w) {
  json demand = json::array();
  for (const auto& [c, amount] : w.reward_demand) demand.push_back({{"category", c}, {"amount", amount}});
  json trust = json::array();
  for (const auto& [c, t] : w.trust) {
    trust.push_back({{"category", c},
                     {"assigned", t.assigned},
                     {"accepted", t.accepted},
                     {"completed", t.completed},
                     {"initial_score", t.initial_score}});
  }
  json bookings = json::array();
  for (const Booking& b : w.bookings) bookings.push_back({b.start, b.end});
  return {{"id", w.id},
          {"home", region_json(w.home())},
          {"pattern", segments_json(w.pattern, region_json)},
          {"status_default", w.status.default_value()},
          {"status", segments_json(w.status, [](double x) { return json(x); })},
          {"reward_demand", demand},
          {"trust", trust},
          {"bookings", bookings}};
}

Worker read_worker(const json& j, const std::string& path) {
  Fields f(j, path);
  Worker w;
  w.id = f.get<std::int64_t>("id");
  Region home = read_region(f.raw("home"), f.child("home"));
  w.pattern = read_schedule<Region>(f.raw("pattern"), f.child("pattern"), home, read_region);
  double status_default = f.get<double>("status_default");
  w.status = read_schedule<double>(f.raw("status"), f.child("status"), status_default, read_number);

  const json& demand = array_at(f, "reward_demand");
  for (std::size_t i = 0; i < demand.size(); ++i) {
    Fields d(demand[i], index_path(f.child("reward_demand"), i));
    auto cat = d.get<CategoryId>("category");
    if (!w.reward_demand.emplace(cat, d.get<double>("amount")).second) d.fail("duplicate category");
    d.done();
  }
  const json& trust = array_at(f, "trust");
  for (std::size_t i = 0; i < trust.size(); ++i) {
    Fields t(trust[i], index_path(f.child("trust"), i));
    auto cat = t.get<CategoryId>("category");
    TrustCounters c{t.get<std::int64_t>("assigned"), t.get<std::int64_t>("accepted"),
                    t.get<std::int64_t>("completed"), t.get<double>("initial_score")};
    if (!w.trust.emplace(cat, c).second) t.fail("duplicate category");
    t.done();
  }
  const json& bookings = array_at(f, "bookings");
  for (std::size_t i = 0; i < bookings.size(); ++i) {
    const json& b = bookings[i];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer()) {
      throw ParseError(index_path(f.child("bookings"), i) + ": expected [start, end] integers");
    }
    w.bookings.push_back({b[0].get<Minutes>(), b[1].get<Minutes>()});
  }
  f.done();
  return w;
}

json task_json(const Task& t) {
  json j = {{"id", t.id},
            {"owner_id", t.owner_id},
            {"category_id", t.category_id},
            {"description", t.description},
            {"duration_min", t.duration},
            {"expiration_min", t.expiration},
            {"submit_min", t.submit_time},
            {"region", region_json(t.region)},
            {"pto_reward", t.pto_reward},
            {"entered_priority", t.entered_priority}};
  if (t.window_start || t.window_end) {
    json w = json::object();
    if (t.window_start) w["earliest"] = *t.window_start;
    if (t.window_end) w["latest"] = *t.window_end;
    j["start_window"] = w;
  }
  return j;
}

Task read_task(const json& j, const std::string& path) {
  Fields f(j, path);
  Task t;
  t.id = f.get<TaskId>("id");
  t.owner_id = f.get<OwnerId>("owner_id");
  t.category_id = f.get<CategoryId>("category_id");
  t.description = f.get<std::string>("description");
  t.duration = f.get<Minutes>("duration_min");
  t.expiration = f.get<Minutes>("expiration_min");
  t.submit_time = f.get<Minutes>("submit_min");
  t.region = read_region(f.raw("region"), f.child("region"));
  t.pto_reward = f.get<double>("pto_reward");
  t.entered_priority = f.get<double>("entered_priority");
  if (f.has("start_window")) {
    Fields w(f.raw("start_window"), f.child("start_window"));
    t.window_start = w.opt<Minutes>("earliest");
    t.window_end = w.opt<Minutes>("latest");
    w.done();
  }
  f.done();
  return t;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto upto = std::min<std::size_t>(e.byte, text.size());
    auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string to_json(const Scenario& s) {
  json cats = json::array();
  for (const auto& c : s.categories) {
    cats.push_back({{"id", c.id},
                    {"name", c.name},
                    {"cat_priority", c.cat_priority},
                    {"cat_reward", c.cat_reward}});
  }
  json owners = json::array();
  for (const auto& o : s.owners) {
    owners.push_back({{"id", o.id},
                      {"pto_priority", o.pto_priority},
                      {"max_reward_raise", o.max_reward_raise},
                      {"raise_increment", o.raise_increment}});
  }
  json workers = json::array();
  for (const auto& w : s.workers) workers.push_back(worker_json(w));
  json tasks = json::array();
  for (const auto& t : s.tasks) tasks.push_back(task_json(t));

  json doc = {{"schema_version", s.schema_version},
              {"units", s.units},
              {"extent_km", region_json(s.extent_km)},
              {"velocity_profile", velocity_json(s.velocity)},
              {"categories", cats},
              {"owners", owners},
              {"workers", workers},
              {"tasks", tasks}};
  return doc.dump(1) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
  json doc = parse_document(text);
  Fields f(doc, "");
  Scenario s;
  s.schema_version = f.get<int>("schema_version");
  if (s.schema_version != kSchemaVersion) {
    f.fail("unsupported schema_version " + std::to_string(s.schema_version));
  }
  s.units = f.get<std::string>("units");
  Region extent = read_region(f.raw("extent_km"), "extent_km");
  if (!std::holds_alternative<Rect>(extent)) throw ParseError("extent_km: must be a rect");
  s.extent_km = std::get<Rect>(extent);
  s.velocity = read_velocity(f.raw("velocity_profile"), "velocity_profile");

  const json& cats = array_at(f, "categories");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    Fields c(cats[i], index_path("categories", i));
    s.categories.push_back({c.get<CategoryId>("id"), c.get<std::string>("name"),
                            c.get<double>("cat_priority"), c.get<double>("cat_reward")});
    c.done();
  }
  const json& owners = array_at(f, "owners");
  for (std::size_t i = 0; i < owners.size(); ++i) {
    Fields o(owners[i], index_path("owners", i));
    s.owners.push_back({o.get<OwnerId>("id"), o.get<double>("pto_priority"),
                        o.get<double>("max_reward_raise"), o.get<double>("raise_increment")});
    o.done();
  }
  const json& workers = array_at(f, "workers");
  for (std::size_t i = 0; i < workers.size(); ++i) {
    s.workers.push_back(read_worker(workers[i], index_path("workers", i)));
  }
  const json& tasks = array_at(f, "tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    s.tasks.push_back(read_task(tasks[i], index_path("tasks", i)));
  }
  f.done();

  auto violations = s.validate();
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return s;
}

void save(const Scenario& s, const std::filesystem::path& path) { write_file(path, to_json(s)); }

Scenario load(const std::filesystem::path& path) { return scenario_from_json(read_file(path)); }

std::string to_json(const GenParams& p) {
  json doc = {{"n_workers", p.n_workers},
              {"n_tasks", p.n_tasks},
              {"n_categories", p.n_categories},
              {"n_owners", p.n_owners},
              {"map_size_km", p.map_size_km},
              {"fraction_commuters", p.fraction_commuters},
              {"status_levels", p.status_levels},
              {"reward_min", p.reward_min},
              {"reward_max", p.reward_max},
              {"demand_min", p.demand_min},
              {"demand_max", p.demand_max},
              {"duration_min", p.duration_min},
              {"duration_max", p.duration_max},
              {"urgent_fraction", p.urgent_fraction},
              {"urgent_window_min", p.urgent_window_min},
              {"urgent_window_max", p.urgent_window_max},
              {"relaxed_window_min", p.relaxed_window_min},
              {"relaxed_window_max", p.relaxed_window_max},
              {"start_window_fraction", p.start_window_fraction},
              {"horizon", p.horizon}};
  return doc.dump(1) + "\n";
}

GenParams params_from_json(std::string_view text) {
  json doc = parse_document(text);
  Fields f(doc, "");
  GenParams p;
  // Every field is optional and falls back to the defaults above.
  auto take = [&](const char* key, auto& field) {
    using T = std::decay_t<decltype(field)>;
    if (auto v = f.opt<T>(key)) field = *v;
  };
  take("n_workers", p.n_workers);
  take("n_tasks", p.n_tasks);
  take("n_categories", p.n_categories);
  take("n_owners", p.n_owners);
  take("map_size_km", p.map_size_km);
  take("fraction_commuters", p.fraction_commuters);
  if (f.has("status_levels")) {
    const json& levels = array_at(f, "status_levels");
    p.status_levels.clear();
    for (const json& l : levels) p.status_levels.push_back(read_number(l, "status_levels"));
  }
  take("reward_min", p.reward_min);
  take("reward_max", p.reward_max);
  take("demand_min", p.demand_min);
  take("demand_max", p.demand_max);
  take("duration_min", p.duration_min);
  take("duration_max", p.duration_max);
  take("urgent_fraction", p.urgent_fraction);
  take("urgent_window_min", p.urgent_window_min);
  take("urgent_window_max", p.urgent_window_max);
  take("relaxed_window_min", p.relaxed_window_min);
  take("relaxed_window_max", p.relaxed_window_max);
  take("start_window_fraction", p.start_window_fraction);
  take("horizon", p.horizon);
  f.done();
  return p;
}

GenParams load_params(const std::filesystem::path& path) {
  return params_from_json(read_file(path));
}

}  // namespace psc
