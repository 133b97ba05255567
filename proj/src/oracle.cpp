// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force ground truth. Contours come from region growing over crossing
// triangles, relations from segment tests and ray casting, cells from
// clustering a sample grid. Everything here runs in double precision: the
// genericity margin keeps samples away from configurations where rounding
// could flip an answer, and samples inside the margin are excluded.

#include "reebc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace reebc {

InclusionLabel to_label(PairRelation r) {
  switch (r) {
    case PairRelation::FIRST_INSIDE_SECOND:
      return InclusionLabel::FIRST_INSIDE_SECOND;
    case PairRelation::SECOND_INSIDE_FIRST:
      return InclusionLabel::SECOND_INSIDE_FIRST;
    case PairRelation::DISJOINT:
      return InclusionLabel::DISJOINT;
    case PairRelation::UNDETERMINED_BOUNDARY:
      return InclusionLabel::UNDETERMINED_BOUNDARY;
    case PairRelation::INTERSECTING:
      break;
  }
  throw std::invalid_argument("intersecting pairs carry no inclusion label");
}

namespace {

using DPoint = std::pair<double, double>;

double field_at(const SimplicialMesh& mesh, int field, int v) { return mesh.field_d(v, field); }

DPoint cross_point(const SimplicialMesh& mesh, int field, int u, int v, double iso) {
  double fu = field_at(mesh, field, u), fv = field_at(mesh, field, v);
  double t = (iso - fu) / (fv - fu);
  double x = to_double(mesh.vertices[u].coords[0]) +
             t * (to_double(mesh.vertices[v].coords[0]) - to_double(mesh.vertices[u].coords[0]));
  double y = to_double(mesh.vertices[u].coords[1]) +
             t * (to_double(mesh.vertices[v].coords[1]) - to_double(mesh.vertices[u].coords[1]));
  return {x, y};
}

}  // namespace

std::vector<OracleContour> contours_at(const SimplicialMesh& mesh, const MeshTopology& topo, int field,
                                       double isovalue) {
  if (mesh.dim != 2) throw std::runtime_error("oracle contours are implemented for dimension 2");
  const int n_simp = static_cast<int>(mesh.simplices.size());
  std::vector<char> crossing(n_simp, 0);
  for (int s = 0; s < n_simp; ++s) {
    double lo = field_at(mesh, field, mesh.simplices[s][0]), hi = lo;
    for (int k = 1; k < 3; ++k) {
      double v = field_at(mesh, field, mesh.simplices[s][k]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    crossing[s] = lo < isovalue && isovalue < hi;
  }

  auto edge_crossing = [&](int e) {
    double a = field_at(mesh, field, topo.edges[e][0]);
    double b = field_at(mesh, field, topo.edges[e][1]);
    return (a < isovalue) != (b < isovalue);
  };

  std::vector<OracleContour> out;
  std::vector<char> seen(n_simp, 0);
  std::vector<int> stack;
  for (int s0 = 0; s0 < n_simp; ++s0) {
    if (!crossing[s0] || seen[s0]) continue;
    OracleContour c;
    seen[s0] = 1;
    stack.push_back(s0);
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      c.simplices.push_back(s);
      for (int k = 0; k < 3; ++k) {
        int e = topo.simplex_edges[s][k];
        if (!edge_crossing(e)) continue;
        for (int t : topo.edge_simplices[e]) {
          if (seen[t] || !crossing[t]) continue;
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
    std::sort(c.simplices.begin(), c.simplices.end());

    // ordered walk over crossing edges
    std::map<int, std::vector<std::pair<int, int>>> nbr;  // edge -> (edge, via triangle)
    std::map<int, int> degree;
    for (int s : c.simplices) {
      int ce[2] = {-1, -1};
      int m = 0;
      for (int k = 0; k < 3; ++k) {
        int e = topo.simplex_edges[s][k];
        if (edge_crossing(e)) ce[m++] = e;
      }
      if (m != 2) throw std::runtime_error("oracle: non-generic isovalue");
      nbr[ce[0]].push_back({ce[1], s});
      nbr[ce[1]].push_back({ce[0], s});
      degree[ce[0]];
      degree[ce[1]];
    }
    int start = nbr.begin()->first;
    bool open = false;
    for (const auto& [e, links] : nbr) {
      if (links.size() == 1 && (!open || e < start)) {
        start = e;
        open = true;
      }
    }
    c.closed = !open;
    std::map<int, bool> walked;
    int cur = start, prev_tri = -1;
    for (;;) {
      walked[cur] = true;
      c.points.push_back(cross_point(mesh, field, topo.edges[cur][0], topo.edges[cur][1], isovalue));
      int next_edge = -1, via = -1;
      for (auto [d, s] : nbr[cur]) {
        if (s == prev_tri) continue;
        if (!walked.count(d) || (c.closed && d == start && c.points.size() > 2)) {
          next_edge = d;
          via = s;
          break;
        }
      }
      if (next_edge < 0 || next_edge == start) break;
      prev_tri = via;
      cur = next_edge;
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

bool dsegs_intersect(DPoint a1, DPoint a2, DPoint b1, DPoint b2) {
  auto cross = [](DPoint o, DPoint p, DPoint q) {
    return (p.first - o.first) * (q.second - o.second) - (p.second - o.second) * (q.first - o.first);
  };
  double d1 = cross(b1, b2, a1), d2 = cross(b1, b2, a2);
  double d3 = cross(a1, a2, b1), d4 = cross(a1, a2, b2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool point_in_dpoly(const std::vector<DPoint>& ring, DPoint p) {
  bool inside = false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    DPoint a = ring[i], b = ring[(i + 1) % ring.size()];
    if ((a.second <= p.second) != (b.second <= p.second)) {
      double x = a.first + (p.second - a.second) * (b.first - a.first) / (b.second - a.second);
      if (x > p.first) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

PairRelation pair_relation(const OracleContour& c1, const OracleContour& c2) {
  // segment intersection inside shared triangles
  std::vector<int> shared;
  std::set_intersection(c1.simplices.begin(), c1.simplices.end(), c2.simplices.begin(), c2.simplices.end(),
                        std::back_inserter(shared));
  if (!shared.empty()) {
    auto segs_in = [&](const OracleContour& c, int simplex) {
      // consecutive points spanning the shared triangle; scan all segments
      std::vector<std::pair<DPoint, DPoint>> out;
      std::size_t nseg = c.closed ? c.points.size() : c.points.size() - 1;
      (void)simplex;
      for (std::size_t i = 0; i < nseg; ++i)
        out.push_back({c.points[i], c.points[(i + 1) % c.points.size()]});
      return out;
    };
    auto s1 = segs_in(c1, -1), s2 = segs_in(c2, -1);
    for (const auto& [a1, a2] : s1)
      for (const auto& [b1, b2] : s2)
        if (dsegs_intersect(a1, a2, b1, b2)) return PairRelation::INTERSECTING;
  }
  if (!c1.closed || !c2.closed) return PairRelation::UNDETERMINED_BOUNDARY;
  bool first_inside = point_in_dpoly(c2.points, c1.points[0]);
  bool second_inside = point_in_dpoly(c1.points, c2.points[0]);
  if (first_inside && second_inside) return PairRelation::INTERSECTING;  // numerically impossible
  if (first_inside) return PairRelation::FIRST_INSIDE_SECOND;
  if (second_inside) return PairRelation::SECOND_INSIDE_FIRST;
  return PairRelation::DISJOINT;
}

namespace {

struct ArcContours {
  std::vector<OracleContour> list;  // contours attributed to the arc
};

ArcContours contours_on_arc(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g,
                            int arc, double iso) {
  ArcContours out;
  auto all = contours_at(mesh, topo, g.field, iso);
  const auto& assigned = g.arcs[arc].simplices;
  for (auto& c : all) {
    if (std::binary_search(assigned.begin(), assigned.end(), c.simplices.front()))
      out.list.push_back(std::move(c));
  }
  return out;
}

double generic_nudge(const std::vector<double>& sorted_levels, double v, double margin) {
  auto it = std::lower_bound(sorted_levels.begin(), sorted_levels.end(), v);
  double d = 1e300;
  if (it != sorted_levels.end()) d = std::min(d, std::abs(*it - v));
  if (it != sorted_levels.begin()) d = std::min(d, std::abs(*(it - 1) - v));
  return d < margin ? -1.0 : v;
}

}  // namespace

EmpiricalCells empirical_cells(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                               const ReebGraph& g2, const Rectangle& rect, const SamplePlan& plan) {
  EmpiricalCells out;
  const int res = plan.resolution;
  if (res < 2) throw std::invalid_argument("oracle resolution must be >= 2");
  double x0 = to_double(rect.x0), x1 = to_double(rect.x1);
  double y0 = to_double(rect.y0), y1 = to_double(rect.y1);
  double margin1 = plan.margin * std::max(1.0, std::abs(x1 - x0));
  double margin2 = plan.margin * std::max(1.0, std::abs(y1 - y0));

  std::vector<double> levels1, levels2;
  for (const auto& v : mesh.vertices) {
    levels1.push_back(v.f1_d);
    levels2.push_back(v.f2_d);
  }
  std::sort(levels1.begin(), levels1.end());
  std::sort(levels2.begin(), levels2.end());

  std::vector<ArcContours> row_cache(res), col_cache(res);
  std::vector<char> row_ok(res, 0), col_ok(res, 0);
  for (int i = 0; i < res; ++i) {
    double l1 = x0 + (i + 0.5) * (x1 - x0) / res;
    if (generic_nudge(levels1, l1, margin1) >= 0) {
      row_cache[i] = contours_on_arc(mesh, topo, g1, rect.arc1, l1);
      row_ok[i] = !row_cache[i].list.empty();
    }
    double l2 = y0 + (i + 0.5) * (y1 - y0) / res;
    if (generic_nudge(levels2, l2, margin2) >= 0) {
      col_cache[i] = contours_on_arc(mesh, topo, g2, rect.arc2, l2);
      col_ok[i] = !col_cache[i].list.empty();
    }
  }

  out.samples.resize(static_cast<std::size_t>(res) * res);
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      CellSample& s = out.samples[j * res + i];
      s.i = i;
      s.j = j;
      s.l1 = x0 + (i + 0.5) * (x1 - x0) / res;
      s.l2 = y0 + (j + 0.5) * (y1 - y0) / res;
      if (!row_ok[i] || !col_ok[j]) {
        s.excluded = true;
        continue;
      }
      const auto& cs1 = row_cache[i].list;
      const auto& cs2 = col_cache[j].list;
      bool any_intersecting = false, any_undetermined = false, mixed = false;
      PairRelation rel = PairRelation::DISJOINT;
      bool first = true;
      for (const auto& c1 : cs1) {
        for (const auto& c2 : cs2) {
          PairRelation r = pair_relation(c1, c2);
          if (r == PairRelation::INTERSECTING) any_intersecting = true;
          else if (r == PairRelation::UNDETERMINED_BOUNDARY) any_undetermined = true;
          else if (first) {
            rel = r;
            first = false;
          } else if (r != rel) {
            mixed = true;
          }
        }
      }
      if (any_intersecting) {
        s.relation = PairRelation::INTERSECTING;
      } else if (any_undetermined || mixed || first) {
        s.relation = PairRelation::UNDETERMINED_BOUNDARY;
        s.excluded = true;  // boundary-ambiguous
      } else {
        s.relation = rel;
      }
    }
  }

  // cluster 4-adjacent kept samples with equal relation
  const int total = res * res;
  std::vector<int> uf(total);
  for (int k = 0; k < total; ++k) uf[k] = k;
  std::function<int(int)> find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  auto keep = [&](const CellSample& s) {
    return !s.excluded && s.relation != PairRelation::INTERSECTING;
  };
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) {
      const CellSample& s = out.samples[j * res + i];
      if (!keep(s)) continue;
      if (i + 1 < res) {
        const CellSample& r = out.samples[j * res + i + 1];
        if (keep(r) && r.relation == s.relation) uf[find(j * res + i)] = find(j * res + i + 1);
      }
      if (j + 1 < res) {
        const CellSample& u = out.samples[(j + 1) * res + i];
        if (keep(u) && u.relation == s.relation) uf[find(j * res + i)] = find((j + 1) * res + i);
      }
    }
  out.cluster_of_sample.assign(total, -1);
  std::map<int, int> roots;
  for (int k = 0; k < total; ++k) {
    if (!keep(out.samples[k])) continue;
    int r = find(k);
    auto [it, inserted] = roots.try_emplace(r, static_cast<int>(roots.size()));
    out.cluster_of_sample[k] = it->second;
    if (inserted) out.cluster_relation.push_back(out.samples[k].relation);
  }
  out.cluster_count = static_cast<int>(roots.size());
  return out;
}

std::string samples_csv(const EmpiricalCells& cells) {
  auto relation_name = [](PairRelation r) {
    switch (r) {
      case PairRelation::INTERSECTING:
        return "INTERSECTING";
      case PairRelation::FIRST_INSIDE_SECOND:
        return "FIRST_INSIDE_SECOND";
      case PairRelation::SECOND_INSIDE_FIRST:
        return "SECOND_INSIDE_FIRST";
      case PairRelation::DISJOINT:
        return "DISJOINT";
      case PairRelation::UNDETERMINED_BOUNDARY:
        return "UNDETERMINED_BOUNDARY";
    }
    return "?";
  };
  std::ostringstream out;
  out << "i,j,l1,l2,relation,excluded,cluster\n";
  for (std::size_t k = 0; k < cells.samples.size(); ++k) {
    const CellSample& s = cells.samples[k];
    out << s.i << "," << s.j << "," << s.l1 << "," << s.l2 << "," << relation_name(s.relation) << ","
        << (s.excluded ? 1 : 0) << "," << cells.cluster_of_sample[k] << "\n";
  }
  return out.str();
}

std::string check_rectangle(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                            const ReebGraph& g2, const ComplementGraph& cg, const Rectangle& rect,
                            const SamplePlan& plan) {
  auto ec = empirical_cells(mesh, topo, g1, g2, rect, plan);
  std::ostringstream diag;
  if (ec.cluster_count != static_cast<int>(rect.cell_ids.size())) {
    diag << "rectangle (" << rect.arc1 << "," << rect.arc2 << "): " << ec.cluster_count
         << " empirical clusters vs " << rect.cell_ids.size() << " cells";
    return diag.str();
  }

  // double-precision face polygons for sample attribution
  struct DFace {
    std::vector<std::vector<DPoint>> rings;
    int cell = -1;
  };
  std::vector<DFace> dfaces;
  for (int cid : rect.cell_ids) {
    const PartitionCell& cell = cg.cells[cid];
    const Face& f = rect.complement.faces()[cell.face];
    DFace df;
    df.cell = cid;
    auto conv = [](const std::vector<RPoint>& ring) {
      std::vector<DPoint> out;
      for (const auto& p : ring) out.push_back({to_double(p.x), to_double(p.y)});
      return out;
    };
    df.rings.push_back(conv(f.outer));
    for (const auto& h : f.holes) df.rings.push_back(conv(h));
    dfaces.push_back(std::move(df));
  }
  auto seg_dist2 = [](DPoint a, DPoint b, DPoint p) {
    double vx = b.first - a.first, vy = b.second - a.second;
    double wx = p.first - a.first, wy = p.second - a.second;
    double t = (vx * wx + vy * wy) / std::max(vx * vx + vy * vy, 1e-300);
    t = std::clamp(t, 0.0, 1.0);
    double dx = wx - t * vx, dy = wy - t * vy;
    return dx * dx + dy * dy;
  };
  double margin_abs = plan.margin * std::max({1.0, std::abs(to_double(rect.x1 - rect.x0)),
                                              std::abs(to_double(rect.y1 - rect.y0))});

  std::vector<int> cluster_cell(ec.cluster_count, -2);
  const int res = plan.resolution;
  for (int k = 0; k < res * res; ++k) {
    int cluster = ec.cluster_of_sample[k];
    if (cluster < 0) continue;
    const CellSample& s = ec.samples[k];
    DPoint p{s.l1, s.l2};
    int found = -1;
    bool ambiguous = false;
    for (const auto& df : dfaces) {
      bool inside = false;
      for (const auto& ring : df.rings) {
        if (point_in_dpoly(ring, p)) inside = !inside;
        for (std::size_t i = 0; i < ring.size() && !ambiguous; ++i)
          if (seg_dist2(ring[i], ring[(i + 1) % ring.size()], p) < margin_abs * margin_abs)
            ambiguous = true;
      }
      if (inside) found = df.cell;
    }
    if (ambiguous) continue;  // within the margin of a cell boundary
    if (found < 0) {
      diag << "sample (" << s.l1 << "," << s.l2 << ") in no cell";
      return diag.str();
    }
    if (to_label(s.relation) != cg.cells[found].label) {
      diag << "sample (" << s.l1 << "," << s.l2 << "): oracle " << to_string(to_label(s.relation))
           << " vs cell " << to_string(cg.cells[found].label);
      return diag.str();
    }
    if (cluster_cell[cluster] == -2) {
      cluster_cell[cluster] = found;
    } else if (cluster_cell[cluster] != found) {
      diag << "cluster " << cluster << " spans two cells";
      return diag.str();
    }
  }
  return {};
}

}  // namespace reebc
