// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Assembles the complement of the projected Reeb region over the product of
// the two graphs: one rectangle per arc pair, exact polygon subtraction, cell
// enumeration with generic interior samples, classification, and gluing of
// cells across rectangle borders.

#include "reebc/complement.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace reebc {

std::vector<int> common_simplices(const ReebGraph& g1, const ReebGraph& g2, int arc1, int arc2) {
  const auto& a = g1.arcs[arc1].simplices;
  const auto& b = g2.arcs[arc2].simplices;
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PolygonSet project_reeb(const SimplicialMesh& mesh, const std::vector<int>& simplex_ids, const Rat& x0,
                        const Rat& x1, const Rat& y0, const Rat& y1) {
  std::vector<std::vector<RPoint>> hull_points;
  hull_points.reserve(simplex_ids.size());
  for (int s : simplex_ids) {
    std::vector<RPoint> pts;
    for (int k = 0; k < mesh.verts_per_simplex(); ++k) {
      int v = mesh.simplices[s][k];
      pts.push_back({mesh.vertices[v].f1, mesh.vertices[v].f2});
    }
    hull_points.push_back(std::move(pts));
  }
  PolygonSet image = union_of_hulls(hull_points);
  return set_intersection(image, make_rect(x0, x1, y0, y1));
}

std::vector<Rat> vertex_value_levels(const SimplicialMesh& mesh, int field) {
  std::vector<Rat> out;
  out.reserve(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) out.push_back(mesh.field(static_cast<int>(v), field));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rectangle compute_rectangle(const SimplicialMesh& mesh, const ReebGraph& g1, const ReebGraph& g2, int arc1,
                            int arc2) {
  Rectangle rect;
  rect.arc1 = arc1;
  rect.arc2 = arc2;
  auto [x0, x1] = g1.arc_interval(g1.arcs[arc1]);
  auto [y0, y1] = g2.arc_interval(g2.arcs[arc2]);
  rect.x0 = x0;
  rect.x1 = x1;
  rect.y0 = y0;
  rect.y1 = y1;
  rect.degenerate_bounds = !(x0 < x1) || !(y0 < y1);
  if (rect.degenerate_bounds) return rect;

  auto common = common_simplices(g1, g2, arc1, arc2);
  rect.projected_reeb = project_reeb(mesh, common, x0, x1, y0, y1);
  rect.complement = set_difference(make_rect(x0, x1, y0, y1), rect.projected_reeb);

  // exact conservation inside every rectangle
  Rat bounds_area = (x1 - x0) * (y1 - y0);
  if (rect.projected_reeb.area() + rect.complement.area() != bounds_area)
    throw std::logic_error("rectangle area conservation violated");
  return rect;
}

namespace {

void glue_across(const ReebGraph& ga, const ReebGraph& gb, bool side1, const ComplementGraph& cg,
                 std::vector<std::pair<int, int>>& adjacency) {
  // cells of rectangles whose `ga` arcs meet at a node are adjacent when
  // they share an uncovered border interval on the node's value line
  for (const auto& node : ga.nodes) {
    if (node.dead) continue;
    std::vector<int> incident;
    for (int a : node.arcs_down)
      if (!ga.arcs[a].dead) incident.push_back(a);
    for (int a : node.arcs_up)
      if (!ga.arcs[a].dead) incident.push_back(a);
    if (incident.size() < 2) continue;
    for (const auto& other_arc : gb.arcs) {
      if (other_arc.dead) continue;
      // collect (cell, interval) pairs per incident arc
      struct Span {
        int cell;
        Rat lo, hi;
      };
      std::vector<std::vector<Span>> spans(incident.size());
      bool any = false;
      for (std::size_t k = 0; k < incident.size(); ++k) {
        auto key = side1 ? std::make_pair(incident[k], other_arc.id) : std::make_pair(other_arc.id, incident[k]);
        auto it = cg.rect_index.find(key);
        if (it == cg.rect_index.end()) continue;
        const Rectangle& rect = cg.rectangles[it->second];
        if (rect.degenerate_bounds) continue;
        for (int cid : rect.cell_ids) {
          const PartitionCell& cell = cg.cells[cid];
          auto segs = inset_segments_on_line(rect.complement, cell.face, side1, node.value);
          for (const auto& [lo, hi] : segs) {
            spans[k].push_back({cid, lo, hi});
            any = true;
          }
        }
      }
      if (!any) continue;
      for (std::size_t a = 0; a < incident.size(); ++a)
        for (std::size_t b = a + 1; b < incident.size(); ++b)
          for (const auto& sa : spans[a])
            for (const auto& sb : spans[b]) {
              Rat lo = std::max(sa.lo, sb.lo);
              Rat hi = std::min(sa.hi, sb.hi);
              if (lo < hi) adjacency.emplace_back(std::min(sa.cell, sb.cell), std::max(sa.cell, sb.cell));
            }
    }
  }
}

}  // namespace

ComplementGraph compute_complement(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                                   const ReebGraph& g2, int threads) {
  ComplementGraph cg;
  auto arcs1 = g1.live_arc_ids();
  auto arcs2 = g2.live_arc_ids();

  std::vector<std::pair<int, int>> pairs;
  for (int a1 : arcs1)
    for (int a2 : arcs2) pairs.emplace_back(a1, a2);
  cg.rectangles.resize(pairs.size());

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(pairs.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= pairs.size() || failed.load()) break;
      try {
        cg.rectangles[k] = compute_rectangle(mesh, g1, g2, pairs[k].first, pairs[k].second);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("rectangle computation failed: " + error_message);

  finish_complement(mesh, topo, g1, g2, cg, threads);
  return cg;
}

void finish_complement(const SimplicialMesh& mesh, const MeshTopology& topo, const ReebGraph& g1,
                       const ReebGraph& g2, ComplementGraph& cg, int threads) {
  std::vector<Rat> fx = vertex_value_levels(mesh, 1);
  std::vector<Rat> fy = vertex_value_levels(mesh, 2);
  cg.cells.clear();
  cg.adjacency.clear();
  cg.rect_index.clear();
  std::sort(cg.rectangles.begin(), cg.rectangles.end(), [](const Rectangle& a, const Rectangle& b) {
    return a.arc1 != b.arc1 ? a.arc1 < b.arc1 : a.arc2 < b.arc2;
  });

  for (std::size_t k = 0; k < cg.rectangles.size(); ++k) {
    Rectangle& rect = cg.rectangles[k];
    rect.cell_ids.clear();
    cg.rect_index[{rect.arc1, rect.arc2}] = static_cast<int>(k);
    if (rect.degenerate_bounds) continue;
    for (const auto& face : rect.complement.faces()) {
      PartitionCell cell;
      cell.id = static_cast<int>(cg.cells.size());
      cell.arc1 = rect.arc1;
      cell.arc2 = rect.arc2;
      cell.face = face.id;
      cell.area = face.area;
      cell.sample = representative_point(rect.complement, face.id, fx, fy, 0);
      rect.cell_ids.push_back(cell.id);
      cg.cells.push_back(std::move(cell));
    }
  }

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, nthreads);
  std::atomic<std::size_t> next_cell{0};
  std::atomic<bool> cfailed{false};
  std::string error_message;
  std::mutex error_mutex;
  auto classify_worker = [&] {
    for (;;) {
      std::size_t k = next_cell.fetch_add(1);
      if (k >= cg.cells.size() || cfailed.load()) break;
      try {
        PartitionCell& cell = cg.cells[k];
        cell.label = classify_pair(mesh, topo, g1, g2, cell.arc1, cell.arc2, cell.sample);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        cfailed.store(true);
      }
    }
  };
  if (nthreads <= 1 || cg.cells.size() < 2) {
    classify_worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(classify_worker);
    for (auto& t : pool) t.join();
  }
  if (cfailed.load()) throw std::runtime_error("cell classification failed: " + error_message);

  for (const auto& rect : cg.rectangles) {
    for (int cid : rect.cell_ids) {
      const PartitionCell& cell = cg.cells[cid];
      for (int nb : rect.complement.faces()[cell.face].neighbors) {
        int other = rect.cell_ids[nb];
        if (cid < other) cg.adjacency.emplace_back(cid, other);
      }
    }
  }
  glue_across(g1, g2, true, cg, cg.adjacency);
  glue_across(g2, g1, false, cg, cg.adjacency);
  std::sort(cg.adjacency.begin(), cg.adjacency.end());
  cg.adjacency.erase(std::unique(cg.adjacency.begin(), cg.adjacency.end()), cg.adjacency.end());
}

std::string rectangle_svg(const Rectangle& rect, const ComplementGraph& cg) {
  std::vector<std::string> fills(rect.complement.faces().size(), "#dddddd");
  for (int cid : rect.cell_ids) {
    const PartitionCell& cell = cg.cells[cid];
    const char* color = "#cccccc";
    switch (cell.label) {
      case InclusionLabel::FIRST_INSIDE_SECOND:
        color = "#e66a6a";
        break;
      case InclusionLabel::SECOND_INSIDE_FIRST:
        color = "#e6a06a";
        break;
      case InclusionLabel::DISJOINT:
        color = "#f2d06b";
        break;
      case InclusionLabel::UNDETERMINED_BOUNDARY:
        color = "#c4c4a0";
        break;
    }
    fills[cell.face] = color;
  }
  std::vector<std::string> gray(rect.projected_reeb.faces().size(), "#9a9a9a");
  std::ostringstream out;
  std::string cells_svg = to_svg(rect.complement, fills);
  std::string reeb_svg = to_svg(rect.projected_reeb, gray);
  // overlay the projected region inside the cells drawing; coordinates share
  // one plane, only the viewBox header differs
  auto body_of = [](const std::string& svg) {
    auto open_end = svg.find('\n');
    auto close = svg.rfind("</svg>");
    return svg.substr(open_end + 1, close - open_end - 1);
  };
  auto head_of = [](const std::string& svg) { return svg.substr(0, svg.find('\n') + 1); };
  out << head_of(rect.complement.empty() ? reeb_svg : cells_svg) << body_of(cells_svg);
  if (!rect.projected_reeb.empty()) out << body_of(reeb_svg);
  out << "</svg>\n";
  return out.str();
}

}  // namespace reebc
