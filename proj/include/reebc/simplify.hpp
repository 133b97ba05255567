// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "reebc/complement.hpp"
#include "reebc/reeb_graph.hpp"

namespace reebc {

enum class MeasureKind { PERSISTENCE, SIZE };

struct ImportanceMeasure {
  MeasureKind kind = MeasureKind::PERSISTENCE;
  Rat threshold;  // >= 0
};

enum class SimplificationMode { CONSIDER, IGNORE };

// Branch cancellation: repeatedly removes the least-important prunable leaf
// arc below the threshold and fuses the freed degree-2 node. CONSIDER
// transfers the removed arc's simplices to the fused arc; IGNORE drops them.
// Removed arcs/nodes stay in place flagged dead, so ids remain stable.
ReebGraph simplify_graph(const ReebGraph& graph, const ImportanceMeasure& measure, SimplificationMode mode);

// The same cancellations applied directly to a computed complement: removed
// rectangles are dropped, rows merged by polygon union of the stored pieces,
// in CONSIDER mode the removed arc's common simplices are re-projected and
// subtracted, and cells are re-enumerated and re-classified. Returns the
// simplified graphs alongside the complement.
struct SimplifiedComplement {
  ReebGraph g1, g2;
  ComplementGraph cg;
};

SimplifiedComplement simplify_complement(const SimplicialMesh& mesh, const MeshTopology& topo,
                                         const ReebGraph& g1, const ReebGraph& g2, const ComplementGraph& cg,
                                         int side, const ImportanceMeasure& measure, SimplificationMode mode,
                                         int threads = 0);

}  // namespace reebc
