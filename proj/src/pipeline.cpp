// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "reebc/pipeline.hpp"

#include <chrono>
#include <set>
#include <map>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "reebc/oracle.hpp"

namespace reebc {

namespace {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& v) {
  return Json{{"dec", approx_decimal(v)}, {"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

std::optional<Rat> rat_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) return std::nullopt;
  mpz_class num, den;
  if (mpz_set_str(num.get_mpz_t(), j["num"].get<std::string>().c_str(), 10) != 0) return std::nullopt;
  if (mpz_set_str(den.get_mpz_t(), j["den"].get<std::string>().c_str(), 10) != 0) return std::nullopt;
  if (den == 0) return std::nullopt;
  return make_rat(num, den);
}

Json point_json(const RPoint& p) { return Json{{"x", rat_json(p.x)}, {"y", rat_json(p.y)}}; }

Json ring_json(const std::vector<RPoint>& ring) {
  Json out = Json::array();
  for (const auto& p : ring) out.push_back(point_json(p));
  return out;
}

Json graph_json(const ReebGraph& g) {
  Json nodes = Json::array();
  for (const auto& n : g.nodes) {
    if (n.dead) continue;
    nodes.push_back(Json{{"id", n.id},
                         {"kind", to_string(n.kind)},
                         {"vertex", n.vertex},
                         {"value", rat_json(n.value)}});
  }
  Json arcs = Json::array();
  for (const auto& a : g.arcs) {
    if (a.dead) continue;
    arcs.push_back(Json{{"id", a.id},
                        {"lower", a.lower},
                        {"upper", a.upper},
                        {"simplex_count", a.simplices.size()}});
  }
  return Json{{"field", g.field}, {"nodes", std::move(nodes)}, {"arcs", std::move(arcs)}};
}

}  // namespace

std::string complement_to_json(const SimplicialMesh& mesh, const ReebGraph& g1, const ReebGraph& g2,
                               const ComplementGraph& cg) {
  Json doc;
  doc["format"] = "reebc-complement";
  doc["version"] = 1;
  doc["mesh"] = Json{{"dim", mesh.dim},
                     {"vertices", mesh.vertices.size()},
                     {"simplices", mesh.simplices.size()}};
  doc["graphs"] = Json::array({graph_json(g1), graph_json(g2)});

  Json rects = Json::array();
  for (const auto& r : cg.rectangles) {
    Json jr;
    jr["arc1"] = r.arc1;
    jr["arc2"] = r.arc2;
    jr["bounds"] = Json{{"x0", rat_json(r.x0)}, {"x1", rat_json(r.x1)}, {"y0", rat_json(r.y0)},
                        {"y1", rat_json(r.y1)}};
    jr["degenerate"] = r.degenerate_bounds;
    jr["projected_area"] = rat_json(r.degenerate_bounds ? Rat(0) : r.projected_reeb.area());
    jr["complement_area"] = rat_json(r.degenerate_bounds ? Rat(0) : r.complement.area());
    jr["cells"] = r.cell_ids;
    rects.push_back(std::move(jr));
  }
  doc["rectangles"] = std::move(rects);

  Json cells = Json::array();
  for (const auto& c : cg.cells) {
    const Rectangle& rect = cg.rectangles[cg.rect_index.at({c.arc1, c.arc2})];
    const Face& face = rect.complement.faces()[c.face];
    Json jc;
    jc["id"] = c.id;
    jc["arc1"] = c.arc1;
    jc["arc2"] = c.arc2;
    jc["face"] = c.face;
    jc["label"] = to_string(c.label);
    jc["sample"] = point_json(c.sample);
    jc["area"] = rat_json(c.area);
    jc["outer"] = ring_json(face.outer);
    Json holes = Json::array();
    for (const auto& h : face.holes) holes.push_back(ring_json(h));
    jc["holes"] = std::move(holes);
    cells.push_back(std::move(jc));
  }
  doc["cells"] = std::move(cells);

  Json adj = Json::array();
  for (const auto& [a, b] : cg.adjacency) adj.push_back(Json::array({a, b}));
  doc["adjacency"] = std::move(adj);
  return doc.dump(1, '\t') + "\n";
}

RunResult run_pipeline(const RunConfig& config) {
  RunResult r;
  if (!config.mesh_path.empty() == !config.builtin.empty())
    throw std::runtime_error("exactly one of --mesh and --builtin is required");
  if (!config.mesh_path.empty()) {
    r.mesh = load_mesh(config.mesh_path);
  } else if (config.builtin == "eq1") {
    r.mesh = build_builtin_pair(BuiltinName::eq1, BuiltinName::eq1, config.extent, config.resolution);
  } else if (config.builtin == "eq2") {
    r.mesh = build_builtin_pair(BuiltinName::eq2_f1, BuiltinName::eq2_f2, config.extent, config.resolution);
  } else if (config.builtin == "diamond-pair") {
    r.mesh = build_builtin_pair(BuiltinName::diamond, BuiltinName::diamond, config.extent, config.resolution);
  } else {
    throw std::runtime_error("unknown builtin '" + config.builtin + "' (eq1, eq2, diamond-pair)");
  }
  if (r.mesh.dim != 2)
    throw std::runtime_error("the classification pipeline runs on 2D meshes; 3D staging covers "
                             "graph construction only");

  r.topo = compute_topology(r.mesh);
  r.g1 = compute_reeb_graph(r.mesh, r.topo, SosOrder{1});
  r.g2 = compute_reeb_graph(r.mesh, r.topo, SosOrder{2});
  r.cg = compute_complement(r.mesh, r.topo, r.g1, r.g2, config.threads);

  if (config.simplify_threshold) {
    ImportanceMeasure measure{config.measure, *config.simplify_threshold};
    auto sc = simplify_complement(r.mesh, r.topo, r.g1, r.g2, r.cg, config.simplify_side, measure,
                                  config.mode, config.threads);
    r.g1 = std::move(sc.g1);
    r.g2 = std::move(sc.g2);
    r.cg = std::move(sc.cg);
  }
  r.json = complement_to_json(r.mesh, r.g1, r.g2, r.cg);
  return r;
}

int run(const RunConfig& config) {
  auto started = std::chrono::steady_clock::now();
  RunResult r = run_pipeline(config);
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  if (!config.output_json.empty()) {
    std::ofstream out(config.output_json);
    if (!out) throw std::runtime_error("cannot write " + config.output_json);
    out << r.json;
  }
  if (!config.dot_path.empty()) {
    std::string base = config.dot_path;
    if (base.size() > 4 && base.substr(base.size() - 4) == ".dot") base.resize(base.size() - 4);
    for (int side : {1, 2}) {
      std::string path = base + "_f" + std::to_string(side) + ".dot";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << to_dot(side == 1 ? r.g1 : r.g2);
    }
  }
  if (!config.svg_dir.empty()) {
    std::filesystem::create_directories(config.svg_dir);
    for (const auto& rect : r.cg.rectangles) {
      if (rect.degenerate_bounds) continue;
      std::string path = config.svg_dir + "/rect_" + std::to_string(rect.arc1) + "_" +
                         std::to_string(rect.arc2) + ".svg";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << rectangle_svg(rect, r.cg);
    }
  }
  if (config.oracle_check > 0) {
    SamplePlan plan;
    plan.resolution = config.oracle_check;
    for (const auto& rect : r.cg.rectangles) {
      if (rect.degenerate_bounds) continue;
      auto diag = check_rectangle(r.mesh, r.topo, r.g1, r.g2, r.cg, rect, plan);
      if (!diag.empty()) {
        std::cerr << "oracle disagreement: " << diag << "\n";
        return 1;
      }
    }
  }

  std::cout << "mesh: " << r.mesh.vertices.size() << " vertices, " << r.mesh.simplices.size()
            << " simplices\n"
            << "graph 1: " << r.g1.live_arc_ids().size() << " arcs; graph 2: " << r.g2.live_arc_ids().size()
            << " arcs\n"
            << "rectangles: " << r.cg.rectangles.size() << ", cells: " << r.cg.cells.size()
            << ", adjacencies: " << r.cg.adjacency.size() << "\n";
  if (config.verbose) std::cerr << "total " << elapsed() << " s\n";
  return 0;
}

std::string validate_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "cannot open " + path;
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    return std::string("json parse error: ") + e.what();
  }
  if (doc.value("format", "") != std::string("reebc-complement")) return "unexpected format marker";

  auto get_rat = [&](const Json& j) { return rat_from_json(j); };

  try {
    // node values per graph side
    std::map<std::pair<int, int>, Rat> node_value;  // (side, id) -> value
    int side = 0;
    for (const auto& g : doc.at("graphs")) {
      ++side;
      for (const auto& n : g.at("nodes")) {
        auto v = get_rat(n.at("value"));
        if (!v) return "bad node value";
        node_value[{side, n.at("id").get<int>()}] = *v;
      }
      for (const auto& a : g.at("arcs")) {
        auto lo = node_value.find({side, a.at("lower").get<int>()});
        auto hi = node_value.find({side, a.at("upper").get<int>()});
        if (lo == node_value.end() || hi == node_value.end()) return "arc references missing node";
        if (!(lo->second <= hi->second)) return "arc interval reversed";
      }
    }

    std::map<int, Rat> cell_area;
    std::map<int, std::pair<int, int>> cell_rect;
    for (const auto& c : doc.at("cells")) {
      auto area = get_rat(c.at("area"));
      if (!area || !(*area > 0)) return "cell with non-positive area";
      int id = c.at("id").get<int>();
      cell_area[id] = *area;
      cell_rect[id] = {c.at("arc1").get<int>(), c.at("arc2").get<int>()};

      // sample strictly inside the outer ring (exact even-odd test)
      auto sx = get_rat(c.at("sample").at("x"));
      auto sy = get_rat(c.at("sample").at("y"));
      if (!sx || !sy) return "bad cell sample";
      std::vector<RPoint> ring;
      for (const auto& p : c.at("outer")) {
        auto px = get_rat(p.at("x"));
        auto py = get_rat(p.at("y"));
        if (!px || !py) return "bad ring point";
        ring.push_back({*px, *py});
      }
      int crossings = 0;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const RPoint& a = ring[i];
        const RPoint& b = ring[(i + 1) % ring.size()];
        RPoint p{*sx, *sy};
        if (a.y <= p.y && p.y < b.y && orient(a, b, p) > 0) ++crossings;
        if (b.y <= p.y && p.y < a.y && orient(a, b, p) < 0) ++crossings;
      }
      if (crossings % 2 == 0) return "cell sample outside its outer ring";

      std::string label = c.at("label").get<std::string>();
      if (label != "FIRST_INSIDE_SECOND" && label != "SECOND_INSIDE_FIRST" && label != "DISJOINT" &&
          label != "UNDETERMINED_BOUNDARY")
        return "unknown label " + label;
    }

    for (const auto& rj : doc.at("rectangles")) {
      auto x0 = get_rat(rj.at("bounds").at("x0"));
      auto x1 = get_rat(rj.at("bounds").at("x1"));
      auto y0 = get_rat(rj.at("bounds").at("y0"));
      auto y1 = get_rat(rj.at("bounds").at("y1"));
      auto pa = get_rat(rj.at("projected_area"));
      auto ca = get_rat(rj.at("complement_area"));
      if (!x0 || !x1 || !y0 || !y1 || !pa || !ca) return "bad rectangle numbers";
      if (rj.at("degenerate").get<bool>()) continue;
      Rat bounds_area = (*x1 - *x0) * (*y1 - *y0);
      if (bounds_area != *pa + *ca) return "rectangle area identity violated";
      Rat cell_sum = 0;
      for (const auto& cid : rj.at("cells")) {
        auto it = cell_area.find(cid.get<int>());
        if (it == cell_area.end()) return "rectangle references missing cell";
        cell_sum += it->second;
        auto rect = cell_rect[cid.get<int>()];
        if (rect.first != rj.at("arc1").get<int>() || rect.second != rj.at("arc2").get<int>())
          return "cell listed under the wrong rectangle";
      }
      if (cell_sum != *ca) return "cell areas do not sum to the complement area";
    }

    std::set<std::pair<int, int>> seen_adj;
    for (const auto& e : doc.at("adjacency")) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a >= b) return "adjacency pair not ordered";
      if (!cell_area.count(a) || !cell_area.count(b)) return "adjacency references missing cell";
      if (!seen_adj.insert({a, b}).second) return "duplicate adjacency pair";
    }
  } catch (const std::exception& e) {
    return std::string("schema error: ") + e.what();
  }
  return {};
}

}  // namespace reebc
