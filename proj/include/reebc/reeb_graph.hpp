// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "reebc/mesh.hpp"

namespace reebc {

enum class NodeKind { MIN, MAX, MERGE, SPLIT, BOUNDARY_EVENT, SUBDIVISION };

const char* to_string(NodeKind k);

struct ReebNode {
  int id = -1;
  Rat value;
  int vertex = -1;  // originating mesh vertex
  NodeKind kind = NodeKind::MIN;
  std::vector<int> arcs_down, arcs_up;
  bool dead = false;  // removed by simplification

  int degree() const { return static_cast<int>(arcs_down.size() + arcs_up.size()); }
};

struct ReebArc {
  int id = -1;
  int lower = -1, upper = -1;  // node ids, value(lower) < value(upper) under the vertex order
  std::vector<int> simplices;  // sorted ids of assigned full-simplices
  bool dead = false;
};

// Vertex image under the quotient map: either a node or an arc.
struct VertexImage {
  bool is_node = false;
  int id = -1;
};

struct ReebGraph {
  int field = 1;
  std::vector<ReebNode> nodes;
  std::vector<ReebArc> arcs;
  std::vector<VertexImage> vertex_map;

  const Rat& node_value(int node_id) const { return nodes[node_id].value; }
  std::pair<Rat, Rat> arc_interval(const ReebArc& a) const {
    return {nodes[a.lower].value, nodes[a.upper].value};
  }
  int count_kind(NodeKind k) const;
  std::vector<int> live_arc_ids() const;  // skips arcs removed by simplification
};

struct ReebOptions {
  // Emit BOUNDARY_EVENT nodes where contour pieces split, merge or vanish at
  // boundary vertices; by default such events pass through silently.
  bool boundary_event_nodes = false;
};

// Sweep construction; the result carries full simplex assignments.
ReebGraph compute_reeb_graph(const SimplicialMesh& mesh, const MeshTopology& topo, const SosOrder& order,
                             const ReebOptions& opts = {});

// Recomputes the per-arc full-simplex assignment of `graph` from scratch.
void assign_simplices(const SimplicialMesh& mesh, const MeshTopology& topo, ReebGraph& graph);

struct ArcRef {
  int side = 1;  // graph 1 or 2
  int arc = -1;
};

// Splits an arc at an interior value with a SUBDIVISION node; simplex
// assignments are re-split by numeric value span.
void subdivide_arc(const SimplicialMesh& mesh, ReebGraph& graph, int arc_id, const Rat& value);

std::string to_dot(const ReebGraph& g);

}  // namespace reebc
