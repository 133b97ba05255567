// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "reebc/rational.hpp"

namespace reebc {

// Triangulated domain carrying two scalar fields sampled at vertices.
// Immutable after construction; safe to share across threads.
struct MeshVertex {
  std::array<Rat, 3> coords{};  // coords[2] unused when dim == 2
  Rat f1, f2;
  double f1_d = 0.0, f2_d = 0.0;  // cached approximations
};

struct SimplicialMesh {
  int dim = 2;  // 2 or 3
  std::vector<MeshVertex> vertices;
  std::vector<std::array<int, 4>> simplices;  // dim+1 entries used; rest -1

  int verts_per_simplex() const { return dim + 1; }
  const Rat& field(int vertex, int which) const {
    return which == 1 ? vertices[vertex].f1 : vertices[vertex].f2;
  }
  double field_d(int vertex, int which) const {
    return which == 1 ? vertices[vertex].f1_d : vertices[vertex].f2_d;
  }
};

// Connectivity derived from a mesh: edges, incidences, boundary flags,
// components of the full-simplex adjacency graph.
struct MeshTopology {
  std::vector<std::array<int, 2>> edges;  // v0 < v1 by index
  std::vector<std::vector<int>> edge_simplices;
  std::vector<std::vector<int>> vertex_edges;
  std::vector<std::vector<int>> vertex_simplices;
  std::vector<std::array<int, 6>> simplex_edges;  // 3 used for dim 2, 6 for dim 3
  std::vector<bool> boundary_vertex;
  std::vector<int> simplex_component;
  int component_count = 0;

  int edges_per_simplex(int dim) const { return dim == 2 ? 3 : 6; }
  int edge_between(int u, int v) const;
};

MeshTopology compute_topology(const SimplicialMesh& mesh);

// Validates the structural invariants; throws std::runtime_error naming the
// violated one.
void validate_mesh(const SimplicialMesh& mesh);

// RCM file format (ASCII):
//   rcm <dim> <nverts> <nsimplices>
//   nverts lines:     <x> <y> [<z>] <f1> <f2>
//   nsimplices lines: dim+1 vertex indices (zero-based)
// '#' starts a comment. Numbers are decimal literals or num/den fractions.
SimplicialMesh load_mesh(const std::string& path);
void save_mesh(const SimplicialMesh& mesh, const std::string& path);

// Symbolic-perturbation total order on vertices of one field:
// u < v  iff  (f(u), u) < (f(v), v) lexicographically.
struct SosOrder {
  int field_selector = 1;  // 1 or 2
};

enum class Order { LESS, GREATER };

Order vertex_compare(const SimplicialMesh& mesh, const SosOrder& order, int u, int v);
bool sos_less(const SimplicialMesh& mesh, const SosOrder& order, int u, int v);

// Analytic test fields sampled on a regular grid triangulation of
// [-extent, extent]^2 (each square split along its lower-left to upper-right
// diagonal).
enum class BuiltinName { eq1, eq2_f1, eq2_f2, diamond };

struct BuiltinField {
  BuiltinName name = BuiltinName::diamond;
  Rat extent = make_rat(3);
  int resolution = 64;
};

// Samples the named formula into both fields of the mesh.
SimplicialMesh build_builtin(const BuiltinField& spec);

// Same grid, f1 from `a`, f2 from `b`.
SimplicialMesh build_builtin_pair(BuiltinName a, BuiltinName b, const Rat& extent, int resolution);

Rat builtin_value(BuiltinName name, const Rat& x, const Rat& y);

}  // namespace reebc
