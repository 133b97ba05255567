// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reebc/classify.hpp"
#include "reebc/polygon_set.hpp"
#include "reebc/reeb_graph.hpp"

namespace reebc {

// Product of one arc from each graph, realized as the value rectangle
// [arc1 interval] x [arc2 interval], with the projected Reeb region and its
// complement inside.
struct Rectangle {
  int arc1 = -1, arc2 = -1;
  Rat x0, x1, y0, y1;
  bool degenerate_bounds = false;  // zero width or height: no cells
  PolygonSet projected_reeb;       // image of the common simplices, clipped
  PolygonSet complement;           // bounds minus projected_reeb
  std::vector<int> cell_ids;       // indices into ComplementGraph::cells
};

struct PartitionCell {
  int id = -1;  // index into ComplementGraph::cells
  int arc1 = -1, arc2 = -1;
  int face = -1;  // face id within the rectangle's complement
  RPoint sample;
  InclusionLabel label = InclusionLabel::UNDETERMINED_BOUNDARY;
  Rat area;
};

struct ComplementGraph {
  std::vector<Rectangle> rectangles;
  std::map<std::pair<int, int>, int> rect_index;  // (arc1, arc2) -> rectangle
  std::vector<PartitionCell> cells;
  std::vector<std::pair<int, int>> adjacency;  // cell id pairs, first < second
};

// Exact intersection of the two arcs' assigned simplex sets.
std::vector<int> common_simplices(const ReebGraph& g1, const ReebGraph& g2, int arc1, int arc2);

// Union of the value-space images (convex hulls) of the given simplices,
// clipped to the rectangle [x0,x1] x [y0,y1].
PolygonSet project_reeb(const SimplicialMesh& mesh, const std::vector<int>& simplex_ids, const Rat& x0,
                        const Rat& x1, const Rat& y0, const Rat& y1);

// Per-arc-pair computation: bounds, projected region, exact complement.
// Cells are enumerated afterwards by finish_complement.
Rectangle compute_rectangle(const SimplicialMesh& mesh, const ReebGraph& g1, const ReebGraph& g2, int arc1,
                            int arc2);

// All rectangles over live arc pairs, computed in parallel, then classified
// and glued: cells sharing a positive-length uncovered border segment are
// adjacent, both within a rectangle and across rectangles meeting at a node.
ComplementGraph compute_complement(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                                   const ReebGraph& g2, int threads = 0);

// Orders the rectangles, then enumerates, samples, classifies and glues the
// cells; used by compute_complement and by complement-side simplification.
void finish_complement(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                       const ReebGraph& g2, ComplementGraph& cg, int threads = 0);

// Sorted distinct field values over all mesh vertices.
std::vector<Rat> vertex_value_levels(const SimplicialMesh& mesh, int field);

// SVG drawing of one rectangle: projected region gray, cells in fills keyed
// by their inclusion label.
std::string rectangle_svg(const Rectangle& rect, const ComplementGraph& cg);

}  // namespace reebc
