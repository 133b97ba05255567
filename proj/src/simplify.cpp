// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Level-of-detail control. Branch cancellation removes a prunable leaf arc
// (one whose junction keeps another arc on the leaf's side) and fuses the
// junction when it drops to one arc per side. The same cancellations can be
// replayed directly on a computed complement: rectangle rows are merged by
// unioning the stored projections, plus, in CONSIDER mode, the re-projected
// image of the simplices the removed arc carried.

#include "reebc/simplify.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace reebc {

namespace {

int live_count(const ReebGraph& g, const std::vector<int>& arcs) {
  int n = 0;
  for (int a : arcs)
    if (!g.arcs[a].dead) ++n;
  return n;
}

int live_degree(const ReebGraph& g, int node) {
  return live_count(g, g.nodes[node].arcs_down) + live_count(g, g.nodes[node].arcs_up);
}

Rat importance_of(const ReebGraph& g, const ReebArc& a, MeasureKind kind) {
  if (kind == MeasureKind::PERSISTENCE) return g.nodes[a.upper].value - g.nodes[a.lower].value;
  return make_rat(static_cast<long>(a.simplices.size()));
}

// prunable: exactly one endpoint is a live leaf node and the junction keeps
// at least one other arc arriving from the leaf's side
std::optional<int> junction_of_prunable(const ReebGraph& g, const ReebArc& a) {
  bool leaf_low = live_degree(g, a.lower) == 1;
  bool leaf_up = live_degree(g, a.upper) == 1;
  if (leaf_low == leaf_up) return std::nullopt;
  int inner = leaf_low ? a.upper : a.lower;
  const auto& same_side = leaf_low ? g.nodes[inner].arcs_down : g.nodes[inner].arcs_up;
  if (live_count(g, same_side) < 2) return std::nullopt;
  return inner;
}

std::optional<int> best_candidate(const ReebGraph& g, const ImportanceMeasure& m) {
  std::optional<int> best;
  Rat best_importance;
  for (const auto& a : g.arcs) {
    if (a.dead || !junction_of_prunable(g, a)) continue;
    Rat imp = importance_of(g, a, m.kind);
    if (!(imp < m.threshold)) continue;
    if (!best || imp < best_importance) {
      best = a.id;
      best_importance = imp;
    }
  }
  return best;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Cancellation {
  int leaf = -1;
  int junction = -1;
  bool fused = false;
  int down_arc = -1, up_arc = -1;  // fused pair (pre-fusion ids)
  int keep = -1, drop = -1;
  int sibling = -1;  // transfer target when the junction does not fuse
  std::vector<int> leaf_simplices;
};

void erase_arc_ref(std::vector<int>& list, int arc) {
  list.erase(std::remove(list.begin(), list.end(), arc), list.end());
}

Cancellation cancel_one(ReebGraph& g, int arc_id, SimplificationMode mode) {
  Cancellation c;
  c.leaf = arc_id;
  ReebArc& leaf = g.arcs[arc_id];
  c.leaf_simplices = leaf.simplices;
  bool leaf_low = live_degree(g, leaf.lower) == 1;
  int leaf_node = leaf_low ? leaf.lower : leaf.upper;
  c.junction = leaf_low ? leaf.upper : leaf.lower;

  leaf.dead = true;
  g.nodes[leaf_node].dead = true;
  erase_arc_ref(g.nodes[c.junction].arcs_down, arc_id);
  erase_arc_ref(g.nodes[c.junction].arcs_up, arc_id);

  ReebNode& junction = g.nodes[c.junction];
  if (live_count(g, junction.arcs_down) == 1 && live_count(g, junction.arcs_up) == 1) {
    for (int a : junction.arcs_down)
      if (!g.arcs[a].dead) c.down_arc = a;
    for (int a : junction.arcs_up)
      if (!g.arcs[a].dead) c.up_arc = a;
    c.fused = true;
    c.keep = std::min(c.down_arc, c.up_arc);
    c.drop = std::max(c.down_arc, c.up_arc);
    ReebArc& keep = g.arcs[c.keep];
    const ReebArc& down = g.arcs[c.down_arc];
    const ReebArc& up = g.arcs[c.up_arc];
    std::vector<int> merged = sorted_union(down.simplices, up.simplices);
    if (mode == SimplificationMode::CONSIDER) merged = sorted_union(merged, c.leaf_simplices);
    int new_lower = down.lower, new_upper = up.upper;
    g.arcs[c.drop].dead = true;
    keep.lower = new_lower;
    keep.upper = new_upper;
    keep.simplices = std::move(merged);
    auto& lower_ups = g.nodes[new_lower].arcs_up;
    if (std::find(lower_ups.begin(), lower_ups.end(), c.keep) == lower_ups.end()) {
      std::replace(lower_ups.begin(), lower_ups.end(), c.drop, c.keep);
    } else {
      erase_arc_ref(lower_ups, c.drop);
    }
    auto& upper_downs = g.nodes[new_upper].arcs_down;
    if (std::find(upper_downs.begin(), upper_downs.end(), c.keep) == upper_downs.end()) {
      std::replace(upper_downs.begin(), upper_downs.end(), c.drop, c.keep);
    } else {
      erase_arc_ref(upper_downs, c.drop);
    }
    junction.dead = true;
    junction.arcs_down.clear();
    junction.arcs_up.clear();
  } else if (mode == SimplificationMode::CONSIDER) {
    // junction still branches: hand the removed simplices to the smallest
    // surviving arc on the leaf's side
    const auto& same_side = leaf_low ? junction.arcs_down : junction.arcs_up;
    int target = -1;
    for (int a : same_side)
      if (!g.arcs[a].dead && (target < 0 || a < target)) target = a;
    if (target < 0) throw std::logic_error("cancellation without surviving sibling");
    c.sibling = target;
    g.arcs[target].simplices = sorted_union(g.arcs[target].simplices, c.leaf_simplices);
  }
  return c;
}

}  // namespace

ReebGraph simplify_graph(const ReebGraph& graph, const ImportanceMeasure& measure, SimplificationMode mode) {
  if (measure.threshold < 0) throw std::invalid_argument("simplification threshold must be >= 0");
  ReebGraph g = graph;
  while (auto arc = best_candidate(g, measure)) cancel_one(g, *arc, mode);
  return g;
}

SimplifiedComplement simplify_complement(const SimplicialMesh& mesh, const MeshTopology& topo,
                                         const ReebGraph& g1, const ReebGraph& g2, const ComplementGraph& cg,
                                         int side, const ImportanceMeasure& measure, SimplificationMode mode,
                                         int threads) {
  if (measure.threshold < 0) throw std::invalid_argument("simplification threshold must be >= 0");
  SimplifiedComplement out{g1, g2, cg};

  std::vector<int> sides;
  if (side == 0)
    sides = {1, 2};
  else if (side == 1 || side == 2)
    sides = {side};
  else
    throw std::invalid_argument("side must be 1, 2 or 0 (both)");

  auto rect_key = [&](int s, int this_arc, int other_arc) {
    return s == 1 ? std::make_pair(this_arc, other_arc) : std::make_pair(other_arc, this_arc);
  };
  auto find_rect = [&](std::pair<int, int> key) -> Rectangle* {
    auto it = out.cg.rect_index.find(key);
    return it == out.cg.rect_index.end() ? nullptr : &out.cg.rectangles[it->second];
  };

  for (int s : sides) {
    ReebGraph& gs = s == 1 ? out.g1 : out.g2;
    ReebGraph& go = s == 1 ? out.g2 : out.g1;
    while (auto arc = best_candidate(gs, measure)) {
      // snapshot the affected arcs' simplex sets before the graph mutates
      Cancellation probe;
      {
        ReebGraph copy = gs;
        probe = cancel_one(copy, *arc, mode);
      }
      std::vector<int> down_up_simplices;
      if (probe.fused)
        down_up_simplices = sorted_union(gs.arcs[probe.down_arc].simplices, gs.arcs[probe.up_arc].simplices);
      Cancellation c = cancel_one(gs, *arc, mode);

      std::vector<Rectangle> next_rects;
      auto side_arc = [&](const Rectangle& r) { return s == 1 ? r.arc1 : r.arc2; };
      for (auto& r : out.cg.rectangles) {
        int sa = side_arc(r);
        if (sa == c.leaf) continue;  // dropped row
        if (c.fused && (sa == c.down_arc || sa == c.up_arc)) continue;  // replaced below
        if (!c.fused && mode == SimplificationMode::CONSIDER && sa == c.sibling && !r.degenerate_bounds) {
          int e4 = s == 1 ? r.arc2 : r.arc1;
          std::vector<int> remap;
          const auto& in_e4 = go.arcs[e4].simplices;
          for (int sx : c.leaf_simplices)
            if (std::binary_search(in_e4.begin(), in_e4.end(), sx)) remap.push_back(sx);
          if (!remap.empty()) {
            std::vector<PolygonSet> parts{r.projected_reeb,
                                          project_reeb(mesh, remap, r.x0, r.x1, r.y0, r.y1)};
            r.projected_reeb = union_all_closed(parts);
            r.complement = set_difference(make_rect(r.x0, r.x1, r.y0, r.y1), r.projected_reeb);
          }
        }
        next_rects.push_back(std::move(r));
      }

      if (c.fused) {
        for (int e4 : go.live_arc_ids()) {
          const Rectangle* rd = find_rect(rect_key(s, c.down_arc, e4));
          const Rectangle* ru = find_rect(rect_key(s, c.up_arc, e4));
          if (!rd || !ru) throw std::logic_error("missing rectangle row during simplification");

          // images that must be re-projected over the merged row: everything
          // the removed arc carried (CONSIDER), or only what survives via the
          // fused pair (IGNORE, where the whole hull stays attached)
          std::vector<int> remap;
          const auto& in_e4 = go.arcs[e4].simplices;
          for (int sx : c.leaf_simplices) {
            if (!std::binary_search(in_e4.begin(), in_e4.end(), sx)) continue;
            if (mode == SimplificationMode::CONSIDER ||
                std::binary_search(down_up_simplices.begin(), down_up_simplices.end(), sx))
              remap.push_back(sx);
          }

          Rectangle merged;
          merged.arc1 = s == 1 ? c.keep : e4;
          merged.arc2 = s == 1 ? e4 : c.keep;
          auto [flo, fhi] = gs.arc_interval(gs.arcs[c.keep]);
          auto [olo, ohi] = go.arc_interval(go.arcs[e4]);
          merged.x0 = s == 1 ? flo : olo;
          merged.x1 = s == 1 ? fhi : ohi;
          merged.y0 = s == 1 ? olo : flo;
          merged.y1 = s == 1 ? ohi : fhi;
          merged.degenerate_bounds = !(merged.x0 < merged.x1) || !(merged.y0 < merged.y1);
          if (!merged.degenerate_bounds) {
            std::vector<PolygonSet> parts;
            if (!rd->degenerate_bounds) parts.push_back(rd->projected_reeb);
            if (!ru->degenerate_bounds) parts.push_back(ru->projected_reeb);
            if (!remap.empty())
              parts.push_back(project_reeb(mesh, remap, merged.x0, merged.x1, merged.y0, merged.y1));
            merged.projected_reeb = union_all_closed(parts);
            merged.complement =
                set_difference(make_rect(merged.x0, merged.x1, merged.y0, merged.y1), merged.projected_reeb);
            if (merged.projected_reeb.area() + merged.complement.area() !=
                (merged.x1 - merged.x0) * (merged.y1 - merged.y0))
              throw std::logic_error("merged rectangle area conservation violated");
          }
          next_rects.push_back(std::move(merged));
        }
      }

      out.cg.rectangles = std::move(next_rects);
      out.cg.rect_index.clear();
      for (std::size_t k = 0; k < out.cg.rectangles.size(); ++k)
        out.cg.rect_index[{out.cg.rectangles[k].arc1, out.cg.rectangles[k].arc2}] = static_cast<int>(k);
    }
  }

  finish_complement(mesh, topo, out.g1, out.g2, out.cg, threads);
  return out;
}

}  // namespace reebc
