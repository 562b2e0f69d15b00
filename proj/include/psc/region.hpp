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

#include <variant>

namespace psc {

/// Planar coordinates in kilometres.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Disc {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  friend bool operator==(const Disc&, const Disc&) = default;
};

/// An exact location or an area (a rectangle on the map, or a disc around a
/// point used to blur a location).
using Region = std::variant<Point, Rect, Disc>;

/// Throws std::invalid_argument on an inverted rect or a negative radius.
Region make_rect(double min_x, double min_y, double max_x, double max_y);
Region make_disc(double cx, double cy, double radius);

bool is_valid(const Region& r);

Point centroid(const Region& r);

/// Euclidean distance between the centroids, in km.
double distance(const Point& a, const Point& b);
double distance(const Region& a, const Region& b);

}  // namespace psc
