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

#include <stdexcept>
#include <string>
#include <vector>

#include "psc/model.hpp"
#include "psc/scoring.hpp"

namespace psc {

inline constexpr int kSchemaVersion = 1;

/// Everything a simulation run needs besides its config.
struct Scenario {
  int schema_version = kSchemaVersion;
  std::string units = "km, minutes";
  Rect extent_km{0.0, 0.0, 10.0, 10.0};
  VelocityProfile velocity;
  std::vector<TaskCategory> categories;
  std::vector<TaskOwner> owners;
  std::vector<Worker> workers;
  std::vector<Task> tasks;

  std::vector<Violation> validate() const {
    return validate_scenario(tasks, workers, owners, categories);
  }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Thrown when a scenario fails validation; carries every violation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace psc
