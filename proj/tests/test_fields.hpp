// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Randomized bivariate test fields. Both fields vanish exactly on the domain
// boundary (a tent factor), so every contour at a nonzero level is closed and
// inclusion labels are well defined everywhere; the interior carries a few
// smooth bumps. Deterministic across platforms: a hand-rolled generator, and
// vertex values stored as exact rationals of the computed doubles.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "reebc/mesh.hpp"

namespace reebc::testfields {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1p-53);
  }
  int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

struct Bump {
  double cx, cy, amp, inv_s2;
};

inline std::vector<Bump> make_bumps(Rng& rng, int count) {
  std::vector<Bump> out;
  for (int k = 0; k < count; ++k) {
    Bump b;
    b.cx = rng.uniform(-0.55, 0.55);
    b.cy = rng.uniform(-0.55, 0.55);
    double sigma = rng.uniform(0.14, 0.28);
    b.inv_s2 = 1.0 / (sigma * sigma);
    b.amp = (rng.next() & 1 ? 1.0 : -1.0) * rng.uniform(0.3, 0.55);
    out.push_back(b);
  }
  return out;
}

inline double eval_bumps(const std::vector<Bump>& bumps, double x, double y) {
  double g = 1.0;
  for (const auto& b : bumps) {
    double dx = x - b.cx, dy = y - b.cy;
    g += b.amp * std::exp(-(dx * dx + dy * dy) * b.inv_s2);
  }
  return g;
}

// resolution in [11, 21] gives 200..800 triangles
inline SimplicialMesh make_random_pair(unsigned seed) {
  Rng rng(seed);
  int res = 11 + rng.range(0, 10);
  // one dominant peak shared by both fields (near-maximum contour pairs are
  // then concentric rather than a vanishingly small disjoint island) plus a
  // few individual features per field
  Bump shared;
  shared.cx = rng.uniform(-0.3, 0.3);
  shared.cy = rng.uniform(-0.3, 0.3);
  shared.amp = rng.uniform(0.5, 0.7);
  double sigma = rng.uniform(0.4, 0.55);
  shared.inv_s2 = 1.0 / (sigma * sigma);
  auto bumps1 = make_bumps(rng, rng.range(2, 3));
  auto bumps2 = make_bumps(rng, rng.range(2, 3));
  bumps1.push_back(shared);
  bumps2.push_back(shared);

  SimplicialMesh mesh = build_builtin_pair(BuiltinName::diamond, BuiltinName::diamond, make_rat(1), res);
  for (auto& v : mesh.vertices) {
    double x = to_double(v.coords[0]), y = to_double(v.coords[1]);
    // smooth window vanishing exactly on the boundary: every contour at a
    // nonzero level is closed, so labels are defined over each whole cell
    double window = (1.0 - x * x) * (1.0 - y * y);
    if (window < 1e-12) window = 0.0;
    double f1 = window * eval_bumps(bumps1, x, y);
    double f2 = window * eval_bumps(bumps2, x, y);
    v.f1 = rat_from_double(f1);
    v.f2 = rat_from_double(f2);
    v.f1_d = f1;
    v.f2_d = f2;
  }
  // pin both global maxima to one vertex; when they sit on different
  // vertices, near-maximum contour pairs form a disjoint island far below
  // any practical sampling resolution
  int top1 = 0, top2 = 0;
  for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
    if (mesh.vertices[v].f1 > mesh.vertices[top1].f1) top1 = v;
    if (mesh.vertices[v].f2 > mesh.vertices[top2].f2) top2 = v;
  }
  MeshVertex& peak = mesh.vertices[top1];
  peak.f1_d = mesh.vertices[top1].f1_d * 1.05;
  peak.f2_d = mesh.vertices[top2].f2_d * 1.05;
  peak.f1 = rat_from_double(peak.f1_d);
  peak.f2 = rat_from_double(peak.f2_d);
  return mesh;
}

}  // namespace reebc::testfields
