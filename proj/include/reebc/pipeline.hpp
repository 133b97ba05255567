// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "reebc/complement.hpp"
#include "reebc/mesh.hpp"
#include "reebc/simplify.hpp"

namespace reebc {

struct RunConfig {
  std::string mesh_path;     // exactly one of mesh_path / builtin
  std::string builtin;       // eq1 | eq2 | diamond-pair
  int resolution = 64;
  Rat extent = make_rat(3);

  std::optional<Rat> simplify_threshold;
  MeasureKind measure = MeasureKind::PERSISTENCE;
  SimplificationMode mode = SimplificationMode::CONSIDER;
  int simplify_side = 0;  // 1, 2, or 0 = both

  std::string output_json;
  std::string svg_dir;
  std::string dot_path;
  int oracle_check = 0;  // grid resolution, 0 = off
  int threads = 0;
  bool verbose = false;
};

struct RunResult {
  SimplicialMesh mesh;
  MeshTopology topo;
  ReebGraph g1, g2;
  ComplementGraph cg;
  std::string json;
};

// Full deterministic pipeline: build or load the mesh, compute both graphs,
// the complement, labels, optional simplification, and the JSON document.
RunResult run_pipeline(const RunConfig& config);

// Executes the pipeline and writes the requested artifacts; returns a
// process exit status.
int run(const RunConfig& config);

std::string complement_to_json(const SimplicialMesh& mesh, const ReebGraph& g1, const ReebGraph& g2,
                               const ComplementGraph& cg);

// Re-reads an exported JSON document and re-checks its structural
// invariants; returns an empty string when valid, else a diagnostic.
std::string validate_json_file(const std::string& path);

}  // namespace reebc
