// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "reebc/polygon_set.hpp"
#include "reebc/reeb_graph.hpp"

namespace reebc {

// One connected component of a level set, extracted by marching over the
// assigned full-simplices of a single arc.
struct Contour {
  int field = 1;
  Rat isovalue;
  int arc = -1;
  std::vector<RPoint> points;  // ordered polyline in domain coordinates
  bool closed = false;         // cycle that never touches the mesh boundary
  std::vector<int> simplices;  // sorted crossing full-simplex ids
  // segment i joins points[i] and points[i+1] (wrapping when closed) and
  // lies inside this full-simplex
  std::vector<int> segment_simplex;

  std::size_t segment_count() const { return segment_simplex.size(); }
};

enum class InclusionLabel { FIRST_INSIDE_SECOND, SECOND_INSIDE_FIRST, DISJOINT, UNDETERMINED_BOUNDARY };

const char* to_string(InclusionLabel l);

// Level-set component of the arc at a generic isovalue (distinct from every
// vertex value, strictly inside the arc interval). Dimension 2 only.
Contour extract_contour(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& graph,
                        int arc_id, const Rat& isovalue);

enum class PointSide { INSIDE, OUTSIDE };

// Even-odd ray casting with exact arithmetic; p must not lie on the contour.
PointSide point_in_contour(const Contour& contour, const RPoint& p);

// Winding-number variant, kept as an independent check of the crossing rules.
PointSide point_in_contour_winding(const Contour& contour, const RPoint& p);

// Exact test whether the two contours share a point inside some common
// full-simplex.
bool contours_intersect(const Contour& a, const Contour& b);

// Inclusion relation of the contour pair extracted at `sample` for the arcs
// (arc1 from g1, arc2 from g2). Throws if the contours intersect: a sample
// inside the complement can never produce intersecting contours.
InclusionLabel classify_pair(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                             const ReebGraph& g2, int arc1, int arc2, const RPoint& sample);

}  // namespace reebc
