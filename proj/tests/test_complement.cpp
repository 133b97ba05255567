#include <algorithm>

#include "doctest.h"
#include "reebc/complement.hpp"

using namespace reebc;

namespace {

struct Pair {
  SimplicialMesh mesh;
  MeshTopology topo;
  ReebGraph g1, g2;
};

Pair build_pair(BuiltinName a, BuiltinName b, int res) {
  Pair p;
  p.mesh = build_builtin_pair(a, b, make_rat(3), res);
  p.topo = compute_topology(p.mesh);
  p.g1 = compute_reeb_graph(p.mesh, p.topo, SosOrder{1});
  p.g2 = compute_reeb_graph(p.mesh, p.topo, SosOrder{2});
  return p;
}

}  // namespace

TEST_CASE("common_simplices is plain set intersection") {
  ReebGraph g1, g2;
  g1.arcs.push_back({0, 0, 1, {1, 2, 3}, false});
  g2.arcs.push_back({0, 0, 1, {2, 3, 4}, false});
  CHECK(common_simplices(g1, g2, 0, 0) == std::vector<int>{2, 3});
  g2.arcs.push_back({1, 0, 1, {9}, false});
  CHECK(common_simplices(g1, g2, 0, 1).empty());
}

TEST_CASE("project_reeb maps one triangle to its value-space image") {
  SimplicialMesh m;
  m.dim = 2;
  auto add = [&](long x, long y, long v1, long v2) {
    MeshVertex v;
    v.coords[0] = make_rat(x);
    v.coords[1] = make_rat(y);
    v.f1 = make_rat(v1);
    v.f2 = make_rat(v2);
    v.f1_d = to_double(v.f1);
    v.f2_d = to_double(v.f2);
    m.vertices.push_back(v);
  };
  add(0, 0, 0, 0);
  add(1, 0, 1, 0);
  add(0, 1, 0, 1);
  m.simplices.push_back({0, 1, 2, -1});
  auto s = project_reeb(m, {0}, make_rat(0), make_rat(1), make_rat(0), make_rat(1));
  CHECK(s.faces().size() == 1);
  CHECK(s.area() == make_rat(1, 2));

  // clipped: the window sits under the hypotenuse, so it fills completely
  auto clipped = project_reeb(m, {0}, make_rat(0), make_rat(1, 2), make_rat(0), make_rat(1, 2));
  CHECK(clipped.area() == make_rat(1, 4));
  auto corner = project_reeb(m, {0}, make_rat(1, 4), make_rat(1), make_rat(1, 4), make_rat(1));
  CHECK(corner.area() == make_rat(1, 8));
}

TEST_CASE("identical fields: one rectangle, zero-area projection, two cells") {
  auto p = build_pair(BuiltinName::diamond, BuiltinName::diamond, 16);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  REQUIRE(cg.rectangles.size() == 1);
  const Rectangle& rect = cg.rectangles[0];
  CHECK(rect.projected_reeb.area() == 0);
  CHECK(!rect.projected_reeb.empty());
  REQUIRE(rect.cell_ids.size() == 2);
  // the diagonal itself lies outside both cells
  CHECK(!locate(rect.complement, {make_rat(2), make_rat(2)}).has_value());

  for (int cid : rect.cell_ids) {
    const PartitionCell& cell = cg.cells[cid];
    auto loc = locate(rect.complement, cell.sample);
    REQUIRE(loc.has_value());
    CHECK(*loc == cell.face);
    bool above = cell.sample.y > cell.sample.x;
    CHECK(cell.label ==
          (above ? InclusionLabel::FIRST_INSIDE_SECOND : InclusionLabel::SECOND_INSIDE_FIRST));
  }
  CHECK(cg.adjacency == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("arc pair with no shared simplices leaves the whole rectangle") {
  auto p = build_pair(BuiltinName::diamond, BuiltinName::diamond, 12);
  subdivide_arc(p.mesh, p.g1, 0, make_rat(2));
  subdivide_arc(p.mesh, p.g2, 0, make_rat(4));
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  const Rectangle& rect = cg.rectangles[cg.rect_index.at({0, 1})];
  CHECK(common_simplices(p.g1, p.g2, 0, 1).empty());
  CHECK(rect.projected_reeb.empty());
  REQUIRE(rect.cell_ids.size() == 1);
  CHECK(cg.cells[rect.cell_ids[0]].area == (rect.x1 - rect.x0) * (rect.y1 - rect.y0));
}

TEST_CASE("eq2 product: three rectangles with the documented structure") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 16);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  REQUIRE(cg.rectangles.size() == 3);

  int lower_branch_rects = 0;
  for (const auto& rect : cg.rectangles) {
    CHECK(rect.cell_ids.size() == 2);
    // exact conservation
    Rat bounds = (rect.x1 - rect.x0) * (rect.y1 - rect.y0);
    Rat cells = 0;
    for (int cid : rect.cell_ids) cells += cg.cells[cid].area;
    CHECK(bounds == rect.projected_reeb.area() + rect.complement.area());
    CHECK(cells == rect.complement.area());

    // lower-branch rectangles: connected projection touching the bottom edge
    const ReebArc& arc2 = p.g2.arcs[rect.arc2];
    if (p.g2.nodes[arc2.lower].kind == NodeKind::MIN) {
      ++lower_branch_rects;
      const auto& faces = rect.projected_reeb.faces();
      REQUIRE(!faces.empty());
      // single connected component under wall adjacency
      std::vector<int> comp(faces.size(), -1);
      std::vector<int> stack{0};
      comp[0] = 0;
      while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int nb : faces[f].neighbors)
          if (comp[nb] < 0) {
            comp[nb] = 0;
            stack.push_back(nb);
          }
      }
      CHECK(std::count(comp.begin(), comp.end(), 0) == static_cast<long>(faces.size()));
      Rat min_y = faces[0].outer[0].y;
      for (const auto& f : faces)
        for (const auto& pt : f.outer) min_y = std::min(min_y, pt.y);
      CHECK(min_y == rect.y0);
    }
  }
  CHECK(lower_branch_rects == 2);
}

TEST_CASE("cells glue across the merge-node line") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 16);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  // the right-hand cells of the two branch rectangles and the top rectangle
  // all meet along the merge value line
  std::vector<int> right_cells;
  for (const auto& cell : cg.cells)
    if (cell.label == InclusionLabel::SECOND_INSIDE_FIRST) right_cells.push_back(cell.id);
  REQUIRE(right_cells.size() == 3);
  auto adjacent = [&](int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return std::find(cg.adjacency.begin(), cg.adjacency.end(), key) != cg.adjacency.end();
  };
  CHECK(adjacent(right_cells[0], right_cells[1]));
  CHECK(adjacent(right_cells[0], right_cells[2]));
  CHECK(adjacent(right_cells[1], right_cells[2]));
  // left cells pinch to zero width at the merge line: no gluing
  std::vector<int> left_cells;
  for (const auto& cell : cg.cells)
    if (cell.label == InclusionLabel::DISJOINT) left_cells.push_back(cell.id);
  REQUIRE(left_cells.size() == 2);
  CHECK(!adjacent(left_cells[0], left_cells[1]));
}

TEST_CASE("complement is independent of thread count") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  auto a = compute_complement(p.mesh, p.topo, p.g1, p.g2, 1);
  auto b = compute_complement(p.mesh, p.topo, p.g1, p.g2, 4);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].sample == b.cells[i].sample);
    CHECK(a.cells[i].label == b.cells[i].label);
    CHECK(a.cells[i].area == b.cells[i].area);
  }
  CHECK(a.adjacency == b.adjacency);
  for (std::size_t k = 0; k < a.rectangles.size(); ++k)
    CHECK(a.rectangles[k].complement == b.rectangles[k].complement);
}

TEST_CASE("cell samples avoid vertex values on both axes") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  auto fx = vertex_value_levels(p.mesh, 1);
  auto fy = vertex_value_levels(p.mesh, 2);
  for (const auto& cell : cg.cells) {
    CHECK(!std::binary_search(fx.begin(), fx.end(), cell.sample.x));
    CHECK(!std::binary_search(fy.begin(), fy.end(), cell.sample.y));
  }
}

TEST_CASE("rectangle svg shows the projected region and the cells") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  auto svg = rectangle_svg(cg.rectangles[0], cg);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("#9a9a9a") != std::string::npos);  // projected region gray
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

#include "test_fields.hpp"

TEST_CASE("swapping the fields transposes rectangles and labels") {
  auto mesh = testfields::make_random_pair(13);
  auto swapped = mesh;
  for (auto& v : swapped.vertices) {
    std::swap(v.f1, v.f2);
    std::swap(v.f1_d, v.f2_d);
  }
  auto topo = compute_topology(mesh);
  auto g1 = compute_reeb_graph(mesh, topo, SosOrder{1});
  auto g2 = compute_reeb_graph(mesh, topo, SosOrder{2});
  auto cg = compute_complement(mesh, topo, g1, g2);
  auto h1 = compute_reeb_graph(swapped, topo, SosOrder{1});
  auto h2 = compute_reeb_graph(swapped, topo, SosOrder{2});
  auto hg = compute_complement(swapped, topo, h1, h2);

  REQUIRE(cg.rectangles.size() == hg.rectangles.size());
  auto swap_label = [](InclusionLabel l) {
    if (l == InclusionLabel::FIRST_INSIDE_SECOND) return InclusionLabel::SECOND_INSIDE_FIRST;
    if (l == InclusionLabel::SECOND_INSIDE_FIRST) return InclusionLabel::FIRST_INSIDE_SECOND;
    return l;
  };
  for (const auto& rect : cg.rectangles) {
    auto it = hg.rect_index.find({rect.arc2, rect.arc1});
    REQUIRE(it != hg.rect_index.end());
    const Rectangle& mirror = hg.rectangles[it->second];
    CHECK(rect.x0 == mirror.y0);
    CHECK(rect.x1 == mirror.y1);
    CHECK(rect.y0 == mirror.x0);
    CHECK(rect.y1 == mirror.x1);
    if (rect.degenerate_bounds) continue;
    CHECK(rect.complement.area() == mirror.complement.area());
    REQUIRE(rect.cell_ids.size() == mirror.cell_ids.size());
    // match cells by transposed sample membership
    for (int cid : rect.cell_ids) {
      const PartitionCell& cell = cg.cells[cid];
      RPoint t{cell.sample.y, cell.sample.x};
      auto face = locate(mirror.complement, t);
      REQUIRE(face.has_value());
      const PartitionCell& mirror_cell = hg.cells[mirror.cell_ids[*face]];
      CHECK(mirror_cell.label == swap_label(cell.label));
      CHECK(mirror_cell.area == cell.area);
    }
  }
}
