#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "reebc/mesh.hpp"

using namespace reebc;

namespace {

std::string write_temp(const std::string& body) {
  static int counter = 0;
  std::string path = "/tmp/reebc_mesh_" + std::to_string(counter++) + ".rcm";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("smallest valid 2D mesh loads") {
  auto path = write_temp("rcm 2 3 1\n0 0 0.5 1\n1 0 1.5 2\n0 1 2.5 3\n0 1 2\n");
  auto mesh = load_mesh(path);
  CHECK(mesh.dim == 2);
  CHECK(mesh.vertices.size() == 3);
  CHECK(mesh.simplices.size() == 1);
  CHECK(mesh.vertices[1].f1 == make_rat(3, 2));
  std::remove(path.c_str());
}

TEST_CASE("out-of-range vertex index is a named error") {
  auto path = write_temp("rcm 2 3 1\n0 0 0 0\n1 0 1 1\n0 1 2 2\n0 1 3\n");
  CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("out of range"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("repeated vertex in a simplex is rejected") {
  auto path = write_temp("rcm 2 3 1\n0 0 0 0\n1 0 1 1\n0 1 2 2\n0 1 1\n");
  CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("repeated"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("parse errors carry a line number") {
  auto path = write_temp("rcm 2 1 0\n0 zero 0 0\n");
  CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("line 2"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("comments and fractions are accepted") {
  auto path = write_temp("# header comment\nrcm 2 3 1\n0 0 1/3 1 # trailing\n1 0 2/3 2\n0 1 1 3\n0 1 2\n");
  auto mesh = load_mesh(path);
  CHECK(mesh.vertices[0].f1 == make_rat(1, 3));
  std::remove(path.c_str());
}

TEST_CASE("save then load is the identity") {
  auto mesh = build_builtin({BuiltinName::eq1, make_rat(3), 9});
  std::string path = "/tmp/reebc_roundtrip.rcm";
  save_mesh(mesh, path);
  auto back = load_mesh(path);
  REQUIRE(back.dim == mesh.dim);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  REQUIRE(back.simplices.size() == mesh.simplices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    CHECK(back.vertices[i].coords[0] == mesh.vertices[i].coords[0]);
    CHECK(back.vertices[i].coords[1] == mesh.vertices[i].coords[1]);
    CHECK(back.vertices[i].f1 == mesh.vertices[i].f1);
    CHECK(back.vertices[i].f2 == mesh.vertices[i].f2);
  }
  CHECK(back.simplices == mesh.simplices);
  std::remove(path.c_str());
}

TEST_CASE("large builtin grid round-trips its counts") {
  auto mesh = build_builtin({BuiltinName::diamond, make_rat(3), 128});
  CHECK(mesh.vertices.size() == 128 * 128);
  CHECK(mesh.simplices.size() == 2 * 127 * 127);
  std::string path = "/tmp/reebc_big.rcm";
  save_mesh(mesh, path);
  auto back = load_mesh(path);
  CHECK(back.vertices.size() == mesh.vertices.size());
  CHECK(back.simplices.size() == 32258);
  std::remove(path.c_str());
}

TEST_CASE("builtin fields sample their formulas exactly") {
  // resolution 4, extent 3: grid values -3, -1, 1, 3
  auto diamond = build_builtin({BuiltinName::diamond, make_rat(3), 4});
  // vertex nearest the origin is (-1, -1)
  CHECK(diamond.vertices[5].coords[0] == make_rat(-1));
  CHECK(diamond.vertices[5].f1 == make_rat(2));

  auto eq1 = build_builtin({BuiltinName::eq1, make_rat(3), 7});
  Rat min_val = eq1.vertices[0].f1;
  for (const auto& v : eq1.vertices) min_val = std::min(min_val, v.f1);
  CHECK(min_val == make_rat(-1));  // attained at (-1, 0)
  for (const auto& v : eq1.vertices) CHECK(v.f2 == v.f1);

  auto eq2b = build_builtin({BuiltinName::eq2_f2, make_rat(3), 7});
  Rat min2 = eq2b.vertices[0].f1;
  for (const auto& v : eq2b.vertices) min2 = std::min(min2, v.f1);
  CHECK(min2 == make_rat(0));  // attained at (1, 0) and (-1, 0)

  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) {
      const auto& v = eq2b.vertices[j * 7 + i];
      CHECK(v.f1 == builtin_value(BuiltinName::eq2_f2, v.coords[0], v.coords[1]));
    }
}

TEST_CASE("builtin parameter validation") {
  CHECK_THROWS_AS(build_builtin({BuiltinName::diamond, make_rat(3), 1}), std::runtime_error);
  CHECK_THROWS_AS(build_builtin({BuiltinName::diamond, make_rat(0), 8}), std::runtime_error);
}

TEST_CASE("vertex_compare is a strict total order") {
  auto mesh = build_builtin({BuiltinName::diamond, make_rat(2), 5});
  SosOrder order{1};

  SUBCASE("numeric order wins") {
    // find two vertices with distinct values
    CHECK(vertex_compare(mesh, order, 12, 0) == Order::LESS);  // center vs corner
  }
  SUBCASE("index breaks ties") {
    // symmetric grid has many equal values; (i, j) and mirrored vertex
    int u = 1, v = 3;  // f = 3 at both (-1,-2) and (1,-2)
    REQUIRE(mesh.vertices[u].f1 == mesh.vertices[v].f1);
    CHECK(vertex_compare(mesh, order, u, v) == Order::LESS);
    CHECK(vertex_compare(mesh, order, v, u) == Order::GREATER);
  }
  SUBCASE("transitive and antisymmetric over random triples") {
    unsigned state = 12345;
    auto rnd = [&] { return (state = state * 1664525u + 1013904223u) % 25; };
    for (int t = 0; t < 200; ++t) {
      int a = rnd(), b = rnd(), c = rnd();
      if (a == b || b == c || a == c) continue;
      bool ab = sos_less(mesh, order, a, b);
      CHECK(ab != sos_less(mesh, order, b, a));
      if (ab && sos_less(mesh, order, b, c)) CHECK(sos_less(mesh, order, a, c));
    }
  }
}

TEST_CASE("topology reports boundary and components") {
  auto mesh = build_builtin({BuiltinName::diamond, make_rat(1), 3});
  auto topo = compute_topology(mesh);
  CHECK(topo.component_count == 1);
  CHECK(topo.boundary_vertex[0]);
  CHECK(!topo.boundary_vertex[4]);  // center of 3x3 grid
  int boundary_count = 0;
  for (bool b : topo.boundary_vertex) boundary_count += b;
  CHECK(boundary_count == 8);

  // two disjoint triangles -> two components
  SimplicialMesh two;
  two.dim = 2;
  for (int k = 0; k < 6; ++k) {
    MeshVertex v;
    v.coords[0] = make_rat(k);
    v.coords[1] = make_rat(k % 2);
    v.f1 = v.f2 = make_rat(k);
    v.f1_d = v.f2_d = to_double(v.f1);
    two.vertices.push_back(v);
  }
  two.simplices.push_back({0, 1, 2, -1});
  two.simplices.push_back({3, 4, 5, -1});
  CHECK(compute_topology(two).component_count == 2);
}
