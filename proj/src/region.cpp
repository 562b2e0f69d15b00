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

#include "psc/region.hpp"

#include <cmath>
#include <stdexcept>

namespace psc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Region make_rect(double min_x, double min_y, double max_x, double max_y) {
  Region r = Rect{min_x, min_y, max_x, max_y};
  if (!is_valid(r)) throw std::invalid_argument("rect bounds are inverted");
  return r;
}

Region make_disc(double cx, double cy, double radius) {
  Region r = Disc{cx, cy, radius};
  if (!is_valid(r)) throw std::invalid_argument("disc radius is negative");
  return r;
}

bool is_valid(const Region& r) {
  return std::visit(
      Overloaded{
          [](const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); },
          [](const Rect& b) {
            return std::isfinite(b.min_x) && std::isfinite(b.max_x) && std::isfinite(b.min_y) &&
                   std::isfinite(b.max_y) && b.min_x <= b.max_x && b.min_y <= b.max_y;
          },
          [](const Disc& d) {
            return std::isfinite(d.cx) && std::isfinite(d.cy) && std::isfinite(d.radius) &&
                   d.radius >= 0.0;
          },
      },
      r);
}

Point centroid(const Region& r) {
  return std::visit(Overloaded{
                        [](const Point& p) { return p; },
                        [](const Rect& b) {
                          return Point{(b.min_x + b.max_x) / 2.0, (b.min_y + b.max_y) / 2.0};
                        },
                        [](const Disc& d) { return Point{d.cx, d.cy}; },
                    },
                    r);
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance(const Region& a, const Region& b) { return distance(centroid(a), centroid(b)); }

}  // namespace psc
