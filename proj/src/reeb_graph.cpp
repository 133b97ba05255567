// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Sweep construction of the Reeb graph. Vertices are processed in the
// perturbed total order; live contours are tracked as "pieces" (sets of
// active mesh edges, two edges adjacent when a full-simplex crosses both at
// the current level). At each vertex the touched pieces are rebuilt by a
// local region grow, which handles merges, splits and loops uniformly.
//
// Contour classes (the arcs) coarsen pieces: piece-level events at boundary
// vertices pass through silently by default, so domain truncation does not
// subdivide the graph; distinct classes merging is always a real node.

#include "reebc/reeb_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace reebc {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::MIN:
      return "MIN";
    case NodeKind::MAX:
      return "MAX";
    case NodeKind::MERGE:
      return "MERGE";
    case NodeKind::SPLIT:
      return "SPLIT";
    case NodeKind::BOUNDARY_EVENT:
      return "BOUNDARY_EVENT";
    case NodeKind::SUBDIVISION:
      return "SUBDIVISION";
  }
  return "?";
}

int ReebGraph::count_kind(NodeKind k) const {
  int n = 0;
  for (const auto& node : nodes)
    if (!node.dead && node.kind == k) ++n;
  return n;
}

std::vector<int> ReebGraph::live_arc_ids() const {
  std::vector<int> out;
  for (const auto& a : arcs)
    if (!a.dead) out.push_back(a.id);
  return out;
}

namespace {

struct Sweep {
  const SimplicialMesh& mesh;
  const MeshTopology& topo;
  const SosOrder& order;
  const ReebOptions& opts;
  ReebGraph& graph;

  std::vector<int> rank;
  std::vector<int> by_rank;
  std::vector<int> piece_of;  // edge -> piece id, -1 when inactive
  std::vector<std::vector<int>> piece_edges;
  std::vector<int> piece_class;
  struct Cls {
    int arc = -1;
    int pieces = 0;
    bool alive = true;
  };
  std::vector<Cls> classes;
  std::vector<int> simplex_arc;
  std::vector<std::vector<int>> assigned;
  std::vector<int> edge_stamp;
  int stamp = 0;
  int cursor = 0;

  Sweep(const SimplicialMesh& m, const MeshTopology& t, const SosOrder& o, const ReebOptions& op,
        ReebGraph& g)
      : mesh(m), topo(t), order(o), opts(op), graph(g) {}

  bool edge_crossing(int e) const {
    int r0 = rank[topo.edges[e][0]], r1 = rank[topo.edges[e][1]];
    if (r0 > r1) std::swap(r0, r1);
    return r0 <= cursor && cursor < r1;
  }

  bool simplex_crossing(int s) const {
    int lo = rank[mesh.simplices[s][0]], hi = lo;
    for (int a = 1; a < mesh.verts_per_simplex(); ++a) {
      int r = rank[mesh.simplices[s][a]];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return lo <= cursor && cursor < hi;
  }

  int new_node(int vertex, NodeKind kind) {
    ReebNode n;
    n.id = static_cast<int>(graph.nodes.size());
    n.value = mesh.field(vertex, order.field_selector);
    n.vertex = vertex;
    n.kind = kind;
    graph.nodes.push_back(std::move(n));
    return graph.nodes.back().id;
  }

  int new_class(int lower_node) {
    ReebArc a;
    a.id = static_cast<int>(graph.arcs.size());
    a.lower = lower_node;
    graph.arcs.push_back(a);
    graph.nodes[lower_node].arcs_up.push_back(a.id);
    classes.push_back({a.id, 0, true});
    return static_cast<int>(classes.size()) - 1;
  }

  void end_arc(int cls, int upper_node) {
    int arc = classes[cls].arc;
    graph.arcs[arc].upper = upper_node;
    graph.nodes[upper_node].arcs_down.push_back(arc);
  }

  void run();
  void process_vertex(int w);
  std::vector<std::vector<int>> blob_components(std::vector<int> blob);
  void attach(const std::vector<int>& component, int cls);
};

void Sweep::run() {
  const int n = static_cast<int>(mesh.vertices.size());
  by_rank.resize(n);
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) { return sos_less(mesh, order, a, b); });
  rank.resize(n);
  for (int i = 0; i < n; ++i) rank[by_rank[i]] = i;

  piece_of.assign(topo.edges.size(), -1);
  edge_stamp.assign(topo.edges.size(), -1);
  simplex_arc.assign(mesh.simplices.size(), -1);
  assigned.assign(mesh.simplices.size(), {});
  graph.vertex_map.assign(n, VertexImage{});

  for (int i = 0; i < n; ++i) {
    cursor = i;
    process_vertex(by_rank[i]);
  }
  for (const auto& c : classes)
    if (c.alive) throw std::logic_error("sweep finished with a live contour class");

  for (int s = 0; s < static_cast<int>(mesh.simplices.size()); ++s) {
    auto& path = assigned[s];
    std::sort(path.begin(), path.end());
    path.erase(std::unique(path.begin(), path.end()), path.end());
    for (int a : path) graph.arcs[a].simplices.push_back(s);
  }
}

std::vector<std::vector<int>> Sweep::blob_components(std::vector<int> blob) {
  ++stamp;
  for (int e : blob) edge_stamp[e] = stamp;
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  const int eps = topo.edges_per_simplex(mesh.dim);
  for (int seed : blob) {
    if (edge_stamp[seed] != stamp) continue;
    edge_stamp[seed] = stamp - 1;
    comps.emplace_back();
    auto& comp = comps.back();
    stack.push_back(seed);
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      comp.push_back(e);
      for (int s : topo.edge_simplices[e]) {
        if (!simplex_crossing(s)) continue;
        for (int k = 0; k < eps; ++k) {
          int d = topo.simplex_edges[s][k];
          if (d < 0 || edge_stamp[d] != stamp || !edge_crossing(d)) continue;
          edge_stamp[d] = stamp - 1;
          stack.push_back(d);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return comps;
}

void Sweep::attach(const std::vector<int>& component, int cls) {
  int piece = static_cast<int>(piece_edges.size());
  piece_edges.push_back(component);
  piece_class.push_back(cls);
  classes[cls].pieces++;
  int arc = classes[cls].arc;
  for (int e : component) {
    piece_of[e] = piece;
    for (int s : topo.edge_simplices[e]) {
      if (simplex_arc[s] == arc || !simplex_crossing(s)) continue;
      simplex_arc[s] = arc;
      assigned[s].push_back(arc);
    }
  }
}

void Sweep::process_vertex(int w) {
  std::vector<int> dying, rising;
  for (int e : topo.vertex_edges[w]) {
    int other = topo.edges[e][0] == w ? topo.edges[e][1] : topo.edges[e][0];
    if (rank[other] < rank[w])
      dying.push_back(e);
    else
      rising.push_back(e);
  }

  std::vector<int> touched_pieces;
  for (int e : dying) {
    if (piece_of[e] < 0) throw std::logic_error("active edge without piece");
    touched_pieces.push_back(piece_of[e]);
  }
  std::sort(touched_pieces.begin(), touched_pieces.end());
  touched_pieces.erase(std::unique(touched_pieces.begin(), touched_pieces.end()), touched_pieces.end());

  std::vector<int> classes_in;
  for (int p : touched_pieces) classes_in.push_back(piece_class[p]);
  std::sort(classes_in.begin(), classes_in.end());
  classes_in.erase(std::unique(classes_in.begin(), classes_in.end()), classes_in.end());

  std::vector<int> blob;
  for (int p : touched_pieces) {
    for (int e : piece_edges[p]) {
      if (edge_crossing(e)) blob.push_back(e);
      piece_of[e] = -1;
    }
    piece_edges[p].clear();
    classes[piece_class[p]].pieces--;
  }
  std::sort(blob.begin(), blob.end());
  blob.erase(std::unique(blob.begin(), blob.end()), blob.end());
  for (int e : rising) blob.push_back(e);

  auto comps = blob_components(std::move(blob));
  int m = static_cast<int>(comps.size());
  bool boundary = topo.boundary_vertex[w];

  if (classes_in.empty()) {
    if (m == 0) throw std::logic_error("vertex with no level-set interaction");
    // a contour is born at w; several components mean an immediate split
    int node = new_node(w, NodeKind::MIN);
    graph.vertex_map[w] = {true, node};
    for (const auto& c : comps) attach(c, new_class(node));
    return;
  }

  if (classes_in.size() == 1) {
    int cls = classes_in[0];
    int remaining = classes[cls].pieces;
    int pieces_in = static_cast<int>(touched_pieces.size());

    if (remaining + m == 0) {
      int node = new_node(w, NodeKind::MAX);
      graph.vertex_map[w] = {true, node};
      end_arc(cls, node);
      classes[cls].alive = false;
      return;
    }
    if (pieces_in == 1 && m == 1) {
      attach(comps[0], cls);
      graph.vertex_map[w] = {false, classes[cls].arc};
      return;
    }
    if (!boundary) {
      if (pieces_in == 1 && m > 1 && remaining == 0) {
        int node = new_node(w, NodeKind::SPLIT);
        graph.vertex_map[w] = {true, node};
        end_arc(cls, node);
        classes[cls].alive = false;
        for (const auto& c : comps) attach(c, new_class(node));
        return;
      }
      // merging or dropping pieces of one class away from the boundary mixes
      // contours the coarsened graph cannot represent
      throw std::logic_error("interior contour-piece event on a multi-piece class");
    }
    if (opts.boundary_event_nodes) {
      if (remaining != 0) throw std::logic_error("boundary event on a detached multi-piece class");
      int node = new_node(w, NodeKind::BOUNDARY_EVENT);
      graph.vertex_map[w] = {true, node};
      end_arc(cls, node);
      classes[cls].alive = false;
      for (const auto& c : comps) attach(c, new_class(node));
      return;
    }
    for (const auto& c : comps) attach(c, cls);
    graph.vertex_map[w] = {false, classes[cls].arc};
    return;
  }

  for (int cls : classes_in)
    if (classes[cls].pieces != 0) throw std::logic_error("merge of a class with detached contour pieces");
  int node = new_node(w, NodeKind::MERGE);
  graph.vertex_map[w] = {true, node};
  for (int cls : classes_in) {
    end_arc(cls, node);
    classes[cls].alive = false;
  }
  if (m == 0) {
    graph.nodes[node].kind = NodeKind::MAX;  // the merged contour dies at w
    return;
  }
  for (const auto& c : comps) attach(c, new_class(node));
}

}  // namespace

ReebGraph compute_reeb_graph(const SimplicialMesh& mesh, const MeshTopology& topo, const SosOrder& order,
                             const ReebOptions& opts) {
  ReebGraph g;
  g.field = order.field_selector;
  Sweep sweep(mesh, topo, order, opts, g);
  sweep.run();
  return g;
}

void assign_simplices(const SimplicialMesh& mesh, const MeshTopology& topo, ReebGraph& graph) {
  ReebOptions opts;
  opts.boundary_event_nodes = graph.count_kind(NodeKind::BOUNDARY_EVENT) > 0;
  ReebGraph fresh = compute_reeb_graph(mesh, topo, SosOrder{graph.field}, opts);
  if (fresh.nodes.size() != graph.nodes.size() || fresh.arcs.size() != graph.arcs.size())
    throw std::runtime_error("assign_simplices: graph does not match the mesh sweep");
  for (std::size_t i = 0; i < fresh.nodes.size(); ++i)
    if (fresh.nodes[i].vertex != graph.nodes[i].vertex || fresh.nodes[i].kind != graph.nodes[i].kind)
      throw std::runtime_error("assign_simplices: graph does not match the mesh sweep");
  for (std::size_t a = 0; a < fresh.arcs.size(); ++a) graph.arcs[a].simplices = fresh.arcs[a].simplices;
  graph.vertex_map = fresh.vertex_map;
}

void subdivide_arc(const SimplicialMesh& mesh, ReebGraph& graph, int arc_id, const Rat& value) {
  if (arc_id < 0 || arc_id >= static_cast<int>(graph.arcs.size()) || graph.arcs[arc_id].dead)
    throw std::invalid_argument("subdivide_arc: no such arc");
  ReebArc& arc = graph.arcs[arc_id];
  const Rat& lo = graph.nodes[arc.lower].value;
  const Rat& hi = graph.nodes[arc.upper].value;
  if (!(lo < value && value < hi))
    throw std::invalid_argument("subdivide_arc: value not strictly inside the arc interval");

  ReebNode node;
  node.id = static_cast<int>(graph.nodes.size());
  node.value = value;
  node.vertex = -1;
  node.kind = NodeKind::SUBDIVISION;
  graph.nodes.push_back(node);

  ReebArc upper_part;
  upper_part.id = static_cast<int>(graph.arcs.size());
  upper_part.lower = node.id;
  upper_part.upper = arc.upper;

  auto& upper_node = graph.nodes[arc.upper];
  std::replace(upper_node.arcs_down.begin(), upper_node.arcs_down.end(), arc.id, upper_part.id);
  arc.upper = node.id;
  graph.nodes[node.id].arcs_down.push_back(arc.id);
  graph.nodes[node.id].arcs_up.push_back(upper_part.id);

  std::vector<int> lower_list, upper_list;
  for (int s : arc.simplices) {
    Rat smin = mesh.field(mesh.simplices[s][0], graph.field);
    Rat smax = smin;
    for (int a = 1; a < mesh.verts_per_simplex(); ++a) {
      const Rat& v = mesh.field(mesh.simplices[s][a], graph.field);
      if (v < smin) smin = v;
      if (v > smax) smax = v;
    }
    if (smin < value) lower_list.push_back(s);
    if (smax > value) upper_list.push_back(s);
  }
  arc.simplices = std::move(lower_list);
  upper_part.simplices = std::move(upper_list);
  int upper_id = upper_part.id;
  graph.arcs.push_back(std::move(upper_part));

  for (int v = 0; v < static_cast<int>(graph.vertex_map.size()); ++v) {
    auto& vi = graph.vertex_map[v];
    if (!vi.is_node && vi.id == arc_id && mesh.field(v, graph.field) > value) vi.id = upper_id;
  }
}

std::string to_dot(const ReebGraph& g) {
  std::ostringstream out;
  out << "digraph reeb {\n  rankdir=BT;\n";
  for (const auto& n : g.nodes) {
    if (n.dead) continue;
    out << "  n" << n.id << " [label=\"" << n.id << ":" << approx_decimal(n.value) << ":"
        << to_string(n.kind) << "\"];\n";
  }
  for (const auto& a : g.arcs) {
    if (a.dead) continue;
    out << "  n" << a.lower << " -> n" << a.upper << " [label=\"a" << a.id << ":" << a.simplices.size()
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace reebc
