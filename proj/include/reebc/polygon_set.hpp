// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reebc/rational.hpp"

namespace reebc {

struct RPoint {
  Rat x, y;

  bool operator==(const RPoint& o) const { return x == o.x && y == o.y; }
  bool operator!=(const RPoint& o) const { return !(*this == o); }
};

// (x, y) lexicographic.
bool lex_less(const RPoint& a, const RPoint& b);

// Sign of the cross product (b-a) x (c-a).
int orient(const RPoint& a, const RPoint& b, const RPoint& c);

// One maximal connected open face of a planar region. Rings may repeat
// vertices where a zero-width slit pokes into the face.
struct Face {
  int id = -1;
  Rat area;
  std::vector<RPoint> outer;               // counterclockwise
  std::vector<std::vector<RPoint>> holes;  // clockwise
  std::vector<int> neighbors;              // face ids sharing a wall segment
};

// A planar point set represented canonically as the arrangement of its wall
// segments plus membership labels. The set is "closed minus open": walls can
// be in the set (closed boundary, degenerate segments) or removed from it
// (open boundary after a subtraction, zero-width cuts). Equal point sets have
// identical canonical form, so operator== and exports are deterministic.
class PolygonSet {
 public:
  struct Vertex {
    RPoint p;
    bool in_set = false;
  };
  // v0 < v1 lexicographically; face ids are public face ids or -1 (outside).
  struct Edge {
    int v0 = -1, v1 = -1;
    int face_left = -1, face_right = -1;
    bool in_set = false;
  };

  std::vector<Vertex> verts;
  std::vector<Edge> edges;
  std::vector<RPoint> iso_points;  // isolated points of the set
  std::vector<RPoint> punctures;   // isolated points removed from inside

  const std::vector<Face>& faces() const { return faces_; }
  bool empty() const { return faces_.empty() && edges.empty() && iso_points.empty(); }
  bool degenerate() const { return faces_.empty() && !empty(); }
  Rat area() const;
  bool operator==(const PolygonSet& o) const;

  // Internal: populated by the construction path in polygon_set.cpp.
  std::vector<Face> faces_;
};

// Exact convex hull. Collinear input yields a degenerate segment, a single
// repeated point an isolated point; both still split faces when subtracted.
PolygonSet convex_hull(std::span<const RPoint> points);

PolygonSet make_rect(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);

PolygonSet set_union(const PolygonSet& a, const PolygonSet& b);
// a minus the closure of b.
PolygonSet set_difference(const PolygonSet& a, const PolygonSet& b);
PolygonSet set_intersection(const PolygonSet& a, const PolygonSet& b);

// Union of many closed sets (every wall in the set, no punctures) in one
// arrangement pass; the workhorse behind projecting simplex hulls.
PolygonSet union_all_closed(std::span<const PolygonSet> parts);

// Union of the convex hulls of many point tuples in a single arrangement
// pass. Degenerate hulls contribute their segments and points.
PolygonSet union_of_hulls(const std::vector<std::vector<RPoint>>& point_sets);

// Exact membership of a single point.
bool contains_point(const PolygonSet& s, const RPoint& p);

// Face containing p, per the closed-minus-open convention: points on an
// in-set wall report the adjacent inside face; removed walls and cuts report
// OUTSIDE (nullopt), as do points of zero-area pieces.
std::optional<int> locate(const PolygonSet& s, const RPoint& p);

// A point strictly inside the face avoiding the given sorted forbidden
// coordinate values on each axis. Different salts give distinct points.
RPoint representative_point(const PolygonSet& s, int face_id, std::span<const Rat> forbidden_x,
                            std::span<const Rat> forbidden_y, int salt = 0);

// In-set wall intervals of one face lying on the line {x = coord} (vertical)
// or {y = coord}; used to glue cells across rectangle borders.
std::vector<std::pair<Rat, Rat>> inset_segments_on_line(const PolygonSet& s, int face_id, bool vertical,
                                                        const Rat& coord);

// SVG drawing of the set, one path per face (plus degenerate walls), with
// caller-provided fill colors per face id.
std::string to_svg(const PolygonSet& s, const std::vector<std::string>& face_fills, double width_px = 480.0);

}  // namespace reebc
