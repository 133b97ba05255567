// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "reebc/classify.hpp"
#include "reebc/complement.hpp"

namespace reebc {

// Brute-force ground truth, independent of the arrangement pipeline: direct
// contour enumeration by region growing and sampled inclusion relations.
// Geometry runs in double precision; the genericity margin keeps samples away
// from values where that could matter.

struct SamplePlan {
  int resolution = 32;  // grid per rectangle
  unsigned seed = 1;
  double margin = 1e-9;  // min distance of samples from node/vertex values
};

struct OracleContour {
  std::vector<int> simplices;  // sorted crossing full-simplex ids
  std::vector<std::pair<double, double>> points;
  bool closed = false;
};

// All level-set components of one field at a generic isovalue.
std::vector<OracleContour> contours_at(const SimplicialMesh& mesh, const MeshTopology& topo, int field,
                                       double isovalue);

enum class PairRelation { INTERSECTING, FIRST_INSIDE_SECOND, SECOND_INSIDE_FIRST, DISJOINT, UNDETERMINED_BOUNDARY };

PairRelation pair_relation(const OracleContour& c1, const OracleContour& c2);

InclusionLabel to_label(PairRelation r);  // invalid for INTERSECTING

// One sampled grid point of a rectangle.
struct CellSample {
  int i = 0, j = 0;
  double l1 = 0, l2 = 0;
  PairRelation relation = PairRelation::INTERSECTING;
  bool excluded = false;  // non-generic or boundary-ambiguous
};

struct EmpiricalCells {
  std::vector<CellSample> samples;     // resolution x resolution, row-major
  std::vector<int> cluster_of_sample;  // -1 for excluded/intersecting
  int cluster_count = 0;
  std::vector<PairRelation> cluster_relation;
};

// Grid-samples one rectangle, marks each kept sample with its contour-pair
// relation and clusters 4-adjacent samples of equal relation. Samples whose
// contours touch the domain boundary are excluded as boundary-ambiguous.
EmpiricalCells empirical_cells(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                               const ReebGraph& g2, const Rectangle& rect, const SamplePlan& plan);

// Debug dump: one CSV row per sample with its relation and cluster.
std::string samples_csv(const EmpiricalCells& cells);

// Full comparison of one rectangle against the pipeline: cluster count must
// equal the cell count and every sample must land in a cell with the same
// label. Returns an empty string on agreement, a diagnostic otherwise.
std::string check_rectangle(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                            const ReebGraph& g2, const ComplementGraph& cg, const Rectangle& rect,
                            const SamplePlan& plan);

}  // namespace reebc
