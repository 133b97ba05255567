// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Marching extraction of one contour from an arc's assigned triangles and
// exact inclusion classification of a contour pair.

#include "reebc/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace reebc {

const char* to_string(InclusionLabel l) {
  switch (l) {
    case InclusionLabel::FIRST_INSIDE_SECOND:
      return "FIRST_INSIDE_SECOND";
    case InclusionLabel::SECOND_INSIDE_FIRST:
      return "SECOND_INSIDE_FIRST";
    case InclusionLabel::DISJOINT:
      return "DISJOINT";
    case InclusionLabel::UNDETERMINED_BOUNDARY:
      return "UNDETERMINED_BOUNDARY";
  }
  return "?";
}

Contour extract_contour(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& graph,
                        int arc_id, const Rat& isovalue) {
  if (mesh.dim != 2) throw std::runtime_error("contour extraction is implemented for dimension 2");
  if (arc_id < 0 || arc_id >= static_cast<int>(graph.arcs.size()))
    throw std::invalid_argument("extract_contour: no such arc");
  const ReebArc& arc = graph.arcs[arc_id];
  const Rat& lo = graph.nodes[arc.lower].value;
  const Rat& hi = graph.nodes[arc.upper].value;
  if (!(lo < isovalue && isovalue < hi))
    throw std::invalid_argument("extract_contour: isovalue outside the arc interval");

  const int field = graph.field;
  // crossing edges of the arc's triangles, each with its exact point
  std::map<int, RPoint> edge_point;
  std::map<int, std::vector<int>> edge_tris;  // crossing edge -> crossing triangles
  std::vector<int> crossing_tris;
  for (int s : arc.simplices) {
    const auto& sx = mesh.simplices[s];
    Rat smin = mesh.field(sx[0], field), smax = smin;
    for (int k = 1; k < 3; ++k) {
      const Rat& v = mesh.field(sx[k], field);
      if (v < smin) smin = v;
      if (v > smax) smax = v;
    }
    if (!(smin < isovalue && isovalue < smax)) continue;
    crossing_tris.push_back(s);
    for (int k = 0; k < 3; ++k) {
      int e = topo.simplex_edges[s][k];
      int u = topo.edges[e][0], v = topo.edges[e][1];
      const Rat& fu = mesh.field(u, field);
      const Rat& fv = mesh.field(v, field);
      if (fu == isovalue || fv == isovalue)
        throw std::invalid_argument("extract_contour: isovalue hits a vertex value");
      if ((fu < isovalue) == (fv < isovalue)) continue;
      edge_tris[e].push_back(s);
      if (!edge_point.count(e)) {
        Rat t = (isovalue - fu) / (fv - fu);
        RPoint p{mesh.vertices[u].coords[0] + t * (mesh.vertices[v].coords[0] - mesh.vertices[u].coords[0]),
                 mesh.vertices[u].coords[1] + t * (mesh.vertices[v].coords[1] - mesh.vertices[u].coords[1])};
        edge_point.emplace(e, std::move(p));
      }
    }
  }
  if (edge_point.empty()) throw std::runtime_error("extract_contour: no crossing triangles on the arc");

  // connected component containing the smallest crossing edge
  std::map<int, std::array<int, 2>> tri_edges;  // crossing triangle -> its two crossing edges
  for (int s : crossing_tris) tri_edges[s] = {-1, -1};
  for (const auto& [e, tris] : edge_tris)
    for (int s : tris) {
      auto& te = tri_edges[s];
      if (te[0] < 0)
        te[0] = e;
      else
        te[1] = e;
    }
  std::map<int, bool> edge_seen;
  std::vector<int> stack{edge_tris.begin()->first};
  edge_seen[stack[0]] = true;
  std::vector<int> comp_edges;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    comp_edges.push_back(e);
    for (int s : edge_tris[e]) {
      for (int d : tri_edges[s]) {
        if (d < 0 || edge_seen.count(d)) continue;
        edge_seen[d] = true;
        stack.push_back(d);
      }
    }
  }

  Contour c;
  c.field = field;
  c.isovalue = isovalue;
  c.arc = arc_id;

  // walk the chain: crossing edges are nodes, crossing triangles join them
  std::map<int, std::vector<std::pair<int, int>>> nbr;  // edge -> (other edge, triangle)
  for (int e : comp_edges)
    for (int s : edge_tris[e])
      for (int d : tri_edges[s])
        if (d >= 0 && d != e) nbr[e].push_back({d, s});
  int start = comp_edges[0];
  bool open = false;
  for (int e : comp_edges) {
    if (nbr[e].size() > 2) throw std::runtime_error("extract_contour: non-manifold level set");
    if (nbr[e].size() == 1 && (!open || e < start)) {
      start = e;
      open = true;
    }
  }
  int prev_tri = -1, cur = start;
  std::map<int, bool> walked;
  for (;;) {
    walked[cur] = true;
    c.points.push_back(edge_point.at(cur));
    int next_edge = -1, via = -1;
    for (auto [d, s] : nbr[cur]) {
      if (s == prev_tri) continue;
      if (!walked.count(d) || (!open && d == start && c.points.size() > 2)) {
        next_edge = d;
        via = s;
        break;
      }
    }
    if (next_edge < 0) break;
    c.segment_simplex.push_back(via);
    if (next_edge == start) {
      c.closed = true;
      break;
    }
    prev_tri = via;
    cur = next_edge;
  }
  if (!c.closed && c.points.size() != comp_edges.size())
    throw std::runtime_error("extract_contour: level-set walk incomplete");

  std::vector<int> simps(c.segment_simplex);
  std::sort(simps.begin(), simps.end());
  simps.erase(std::unique(simps.begin(), simps.end()), simps.end());
  c.simplices = std::move(simps);
  return c;
}

namespace {

bool on_segment(const RPoint& a, const RPoint& b, const RPoint& p) {
  if (orient(a, b, p) != 0) return false;
  return cmp(std::min(a.x, b.x), p.x) <= 0 && cmp(p.x, std::max(a.x, b.x)) <= 0 &&
         cmp(std::min(a.y, b.y), p.y) <= 0 && cmp(p.y, std::max(a.y, b.y)) <= 0;
}

bool segments_touch(const RPoint& a1, const RPoint& a2, const RPoint& b1, const RPoint& b2) {
  int d1 = orient(b1, b2, a1);
  int d2 = orient(b1, b2, a2);
  int d3 = orient(a1, a2, b1);
  int d4 = orient(a1, a2, b2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(b1, b2, a1)) return true;
  if (d2 == 0 && on_segment(b1, b2, a2)) return true;
  if (d3 == 0 && on_segment(a1, a2, b1)) return true;
  if (d4 == 0 && on_segment(a1, a2, b2)) return true;
  return false;
}

template <typename F>
void for_each_segment(const Contour& c, F&& f) {
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    f(c.segment_simplex[i], c.points[i], c.points[(i + 1) % c.points.size()]);
}

void require_off_curve(const Contour& c, const RPoint& p) {
  for_each_segment(c, [&](int, const RPoint& a, const RPoint& b) {
    if (on_segment(a, b, p)) throw std::invalid_argument("point lies on the contour");
  });
}

}  // namespace

PointSide point_in_contour(const Contour& contour, const RPoint& p) {
  if (!contour.closed) throw std::invalid_argument("point_in_contour needs a closed contour");
  require_off_curve(contour, p);
  int crossings = 0;
  for_each_segment(contour, [&](int, const RPoint& a, const RPoint& b) {
    // half-open rule: count upward crossings strictly left of p going up,
    // downward ones strictly right, so rays through vertices stay consistent
    if (a.y <= p.y && p.y < b.y && orient(a, b, p) > 0) ++crossings;
    if (b.y <= p.y && p.y < a.y && orient(a, b, p) < 0) ++crossings;
  });
  return crossings % 2 == 1 ? PointSide::INSIDE : PointSide::OUTSIDE;
}

PointSide point_in_contour_winding(const Contour& contour, const RPoint& p) {
  if (!contour.closed) throw std::invalid_argument("point_in_contour needs a closed contour");
  require_off_curve(contour, p);
  int winding = 0;
  for_each_segment(contour, [&](int, const RPoint& a, const RPoint& b) {
    if (a.y <= p.y && p.y < b.y && orient(a, b, p) > 0) ++winding;
    if (b.y <= p.y && p.y < a.y && orient(a, b, p) < 0) --winding;
  });
  return winding != 0 ? PointSide::INSIDE : PointSide::OUTSIDE;
}

bool contours_intersect(const Contour& a, const Contour& b) {
  std::map<int, std::vector<std::pair<RPoint, RPoint>>> b_segs;
  for_each_segment(b, [&](int s, const RPoint& p, const RPoint& q) { b_segs[s].push_back({p, q}); });
  bool hit = false;
  for_each_segment(a, [&](int s, const RPoint& p, const RPoint& q) {
    auto it = b_segs.find(s);
    if (it == b_segs.end()) return;
    for (const auto& [bp, bq] : it->second)
      if (segments_touch(p, q, bp, bq)) hit = true;
  });
  return hit;
}

InclusionLabel classify_pair(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                             const ReebGraph& g2, int arc1, int arc2, const RPoint& sample) {
  Contour c1 = extract_contour(mesh, topo, g1, arc1, sample.x);
  Contour c2 = extract_contour(mesh, topo, g2, arc2, sample.y);
  if (contours_intersect(c1, c2))
    throw std::runtime_error("classify: contours intersect at a complement sample");
  if (!c1.closed || !c2.closed) return InclusionLabel::UNDETERMINED_BOUNDARY;

  auto off_curve_vertex = [](const Contour& of, const Contour& against) -> const RPoint* {
    for (const auto& p : of.points) {
      bool on = false;
      for (std::size_t i = 0; i < against.segment_count() && !on; ++i)
        on = on_segment(against.points[i], against.points[(i + 1) % against.points.size()], p);
      if (!on) return &p;
    }
    return nullptr;
  };
  const RPoint* p1 = off_curve_vertex(c1, c2);
  const RPoint* p2 = off_curve_vertex(c2, c1);
  if (!p1 || !p2) throw std::runtime_error("classify: contours share every vertex");

  bool first_inside = point_in_contour(c2, *p1) == PointSide::INSIDE;
  bool second_inside = point_in_contour(c1, *p2) == PointSide::INSIDE;
  if (first_inside && second_inside)
    throw std::runtime_error("classify: disjoint closed contours cannot contain each other");
  if (first_inside) return InclusionLabel::FIRST_INSIDE_SECOND;
  if (second_inside) return InclusionLabel::SECOND_INSIDE_FIRST;
  return InclusionLabel::DISJOINT;
}

}  // namespace reebc
