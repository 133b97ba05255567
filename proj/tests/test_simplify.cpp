#include <algorithm>

#include "doctest.h"
#include "reebc/simplify.hpp"
#include "test_fields.hpp"

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

Pair random_pair(unsigned seed) {
  Pair p;
  p.mesh = testfields::make_random_pair(seed);
  p.topo = compute_topology(p.mesh);
  p.g1 = compute_reeb_graph(p.mesh, p.topo, SosOrder{1});
  p.g2 = compute_reeb_graph(p.mesh, p.topo, SosOrder{2});
  return p;
}

std::size_t total_assigned(const ReebGraph& g) {
  std::vector<int> all;
  for (const auto& a : g.arcs)
    if (!a.dead) all.insert(all.end(), a.simplices.begin(), a.simplices.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size();
}

// complement equality as used by the commutation criterion: same rectangle
// keys, identical bounds, identical canonical complements, same labels
void check_equal_complements(const ComplementGraph& a, const ComplementGraph& b) {
  REQUIRE(a.rectangles.size() == b.rectangles.size());
  for (std::size_t k = 0; k < a.rectangles.size(); ++k) {
    const Rectangle& ra = a.rectangles[k];
    const Rectangle& rb = b.rectangles[k];
    REQUIRE(ra.arc1 == rb.arc1);
    REQUIRE(ra.arc2 == rb.arc2);
    CHECK(ra.x0 == rb.x0);
    CHECK(ra.x1 == rb.x1);
    CHECK(ra.y0 == rb.y0);
    CHECK(ra.y1 == rb.y1);
    CHECK(ra.degenerate_bounds == rb.degenerate_bounds);
    if (ra.degenerate_bounds) continue;
    CHECK(ra.projected_reeb == rb.projected_reeb);
    CHECK(ra.complement == rb.complement);
    REQUIRE(ra.cell_ids.size() == rb.cell_ids.size());
    for (std::size_t c = 0; c < ra.cell_ids.size(); ++c) {
      const PartitionCell& ca = a.cells[ra.cell_ids[c]];
      const PartitionCell& cb = b.cells[rb.cell_ids[c]];
      CHECK(ca.area == cb.area);
      CHECK(ca.label == cb.label);
      CHECK(ca.sample == cb.sample);
    }
  }
  CHECK(a.adjacency == b.adjacency);
}

}  // namespace

TEST_CASE("cancelling the shallow branch of the two-minima field") {
  auto p = build_pair(BuiltinName::eq1, BuiltinName::eq1, 16);
  REQUIRE(p.g1.arcs.size() == 3);
  std::size_t before = total_assigned(p.g1);

  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(3, 5)};
  auto consider = simplify_graph(p.g1, m, SimplificationMode::CONSIDER);
  CHECK(consider.count_kind(NodeKind::MIN) == 1);
  CHECK(consider.count_kind(NodeKind::MERGE) == 0);
  CHECK(consider.live_arc_ids().size() == 1);
  // the surviving minimum is the deep one near value -1
  for (const auto& n : consider.nodes)
    if (!n.dead && n.kind == NodeKind::MIN) CHECK(n.value < make_rat(-1, 2));
  // every simplex is still assigned somewhere
  CHECK(total_assigned(consider) == before);

  auto ignored = simplify_graph(p.g1, m, SimplificationMode::IGNORE);
  CHECK(ignored.live_arc_ids().size() == 1);
  CHECK(total_assigned(ignored) < before);
}

TEST_CASE("threshold zero is the identity") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(0)};
  auto g = simplify_graph(p.g2, m, SimplificationMode::CONSIDER);
  CHECK(g.live_arc_ids() == p.g2.live_arc_ids());
  for (std::size_t a = 0; a < g.arcs.size(); ++a) CHECK(g.arcs[a].simplices == p.g2.arcs[a].simplices);
}

TEST_CASE("simplification is idempotent and monotone in the threshold") {
  auto p = random_pair(5);
  std::size_t prev = p.g1.live_arc_ids().size();
  for (long t : {1, 2, 4, 8, 100}) {
    ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(t, 100)};
    auto once = simplify_graph(p.g1, m, SimplificationMode::CONSIDER);
    auto twice = simplify_graph(once, m, SimplificationMode::CONSIDER);
    CHECK(once.live_arc_ids() == twice.live_arc_ids());
    for (std::size_t a = 0; a < once.arcs.size(); ++a)
      CHECK(once.arcs[a].simplices == twice.arcs[a].simplices);
    std::size_t count = once.live_arc_ids().size();
    CHECK(count <= prev);
    prev = count;
  }
}

TEST_CASE("a huge threshold collapses each component to one arc") {
  auto p = random_pair(11);
  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(1000)};
  auto g = simplify_graph(p.g1, m, SimplificationMode::CONSIDER);
  CHECK(g.live_arc_ids().size() == 1);
  CHECK(total_assigned(g) == p.mesh.simplices.size());
}

TEST_CASE("size measure counts assigned simplices") {
  auto p = build_pair(BuiltinName::eq1, BuiltinName::eq1, 16);
  // find the smaller branch by simplex count
  std::size_t smallest = p.mesh.simplices.size();
  for (const auto& a : p.g1.arcs) smallest = std::min(smallest, a.simplices.size());
  ImportanceMeasure too_low{MeasureKind::SIZE, make_rat(static_cast<long>(smallest))};
  auto unchanged = simplify_graph(p.g1, too_low, SimplificationMode::CONSIDER);
  CHECK(unchanged.live_arc_ids().size() == 3);  // strict comparison: no removal
  ImportanceMeasure enough{MeasureKind::SIZE, make_rat(static_cast<long>(smallest + 1))};
  auto pruned = simplify_graph(p.g1, enough, SimplificationMode::CONSIDER);
  CHECK(pruned.live_arc_ids().size() == 1);
}

TEST_CASE("graph-side and complement-side simplification commute") {
  for (unsigned seed : {3u, 7u}) {
    auto p = random_pair(seed);
    auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
    for (auto mode : {SimplificationMode::CONSIDER, SimplificationMode::IGNORE}) {
      for (long t : {5, 12}) {
        ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(t, 100)};
        auto sg1 = simplify_graph(p.g1, m, mode);
        auto sg2 = simplify_graph(p.g2, m, mode);
        auto direct = compute_complement(p.mesh, p.topo, sg1, sg2);
        auto surgery = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 0, m, mode);
        for (std::size_t a = 0; a < sg1.arcs.size(); ++a) {
          CHECK(sg1.arcs[a].dead == surgery.g1.arcs[a].dead);
          CHECK(sg1.arcs[a].simplices == surgery.g1.arcs[a].simplices);
        }
        check_equal_complements(direct, surgery.cg);
      }
    }
  }
}

TEST_CASE("commutation holds on the worked-example pair") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(2)};
  for (auto mode : {SimplificationMode::CONSIDER, SimplificationMode::IGNORE}) {
    for (int side : {1, 2, 0}) {
      auto sg1 = side != 2 ? simplify_graph(p.g1, m, mode) : p.g1;
      auto sg2 = side != 1 ? simplify_graph(p.g2, m, mode) : p.g2;
      auto direct = compute_complement(p.mesh, p.topo, sg1, sg2);
      auto surgery = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, side, m, mode);
      check_equal_complements(direct, surgery.cg);
    }
  }
}

namespace {

// diamond pair with a small plateau spike in f1, walled off by a shallow
// moat so its contours pinch off well below the truncation level; the spike
// intersects f2 contours the way a small noisy feature would
Pair spiked_pair() {
  Pair p;
  p.mesh = build_builtin_pair(BuiltinName::diamond, BuiltinName::diamond, make_rat(3), 7);
  auto set_f1 = [&](int i, int j, long num, long den) {
    MeshVertex& v = p.mesh.vertices[j * 7 + i];
    v.f1 = make_rat(num, den);
    v.f1_d = to_double(v.f1);
  };
  set_f1(3, 3, 5, 1);
  set_f1(4, 3, 21, 5);
  set_f1(3, 4, 22, 5);
  set_f1(4, 4, 23, 5);
  set_f1(5, 5, 2, 1);
  set_f1(5, 4, 5, 2);
  set_f1(4, 5, 5, 2);
  p.topo = compute_topology(p.mesh);
  p.g1 = compute_reeb_graph(p.mesh, p.topo, SosOrder{1});
  p.g2 = compute_reeb_graph(p.mesh, p.topo, SosOrder{2});
  return p;
}

}  // namespace

TEST_CASE("ignoring an eliminated spike keeps its intersections out") {
  auto p = spiked_pair();
  REQUIRE(p.g1.count_kind(NodeKind::SPLIT) == 1);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(13, 5)};
  auto consider = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 1, m, SimplificationMode::CONSIDER);
  auto ignored = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 1, m, SimplificationMode::IGNORE);
  REQUIRE(consider.cg.rectangles.size() == ignored.cg.rectangles.size());
  Rat consider_total = 0, ignore_total = 0;
  for (std::size_t k = 0; k < consider.cg.rectangles.size(); ++k) {
    const Rectangle& rc = consider.cg.rectangles[k];
    const Rectangle& ri = ignored.cg.rectangles[k];
    REQUIRE(rc.arc1 == ri.arc1);
    REQUIRE(rc.arc2 == ri.arc2);
    if (rc.degenerate_bounds) continue;
    CHECK(ri.complement.area() >= rc.complement.area());
    consider_total += rc.complement.area();
    ignore_total += ri.complement.area();
  }
  CHECK(ignore_total > consider_total);  // the spike really intersected contours

  // both routes agree on the spiked mesh too
  for (auto mode : {SimplificationMode::CONSIDER, SimplificationMode::IGNORE}) {
    auto sg1 = simplify_graph(p.g1, m, mode);
    auto direct = compute_complement(p.mesh, p.topo, sg1, p.g2);
    auto surgery = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 1, m, mode);
    check_equal_complements(direct, surgery.cg);
  }
}

TEST_CASE("identical-branch symmetry makes both modes agree") {
  auto p = build_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, 12);
  auto cg = compute_complement(p.mesh, p.topo, p.g1, p.g2);
  ImportanceMeasure m{MeasureKind::PERSISTENCE, make_rat(2)};
  auto consider = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 2, m, SimplificationMode::CONSIDER);
  auto ignored = simplify_complement(p.mesh, p.topo, p.g1, p.g2, cg, 2, m, SimplificationMode::IGNORE);
  REQUIRE(consider.cg.rectangles.size() == ignored.cg.rectangles.size());
  for (std::size_t k = 0; k < consider.cg.rectangles.size(); ++k) {
    const Rectangle& rc = consider.cg.rectangles[k];
    const Rectangle& ri = ignored.cg.rectangles[k];
    if (rc.degenerate_bounds) continue;
    // the two branch images coincide by symmetry, so nothing is lost
    CHECK(ri.complement == rc.complement);
  }
}
