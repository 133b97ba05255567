// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "reebc/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace reebc {

namespace {

Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

void finish_vertex(MeshVertex& v) {
  v.f1_d = to_double(v.f1);
  v.f2_d = to_double(v.f2);
}

}  // namespace

int MeshTopology::edge_between(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (int e : vertex_edges[u])
    if (edges[e][0] == u && edges[e][1] == v) return e;
  return -1;
}

MeshTopology compute_topology(const SimplicialMesh& mesh) {
  MeshTopology topo;
  const int n = static_cast<int>(mesh.vertices.size());
  const int vps = mesh.verts_per_simplex();
  std::map<std::array<int, 2>, int> edge_ids;

  topo.vertex_edges.resize(n);
  topo.vertex_simplices.resize(n);
  topo.simplex_edges.resize(mesh.simplices.size(), {-1, -1, -1, -1, -1, -1});

  for (int s = 0; s < static_cast<int>(mesh.simplices.size()); ++s) {
    const auto& sx = mesh.simplices[s];
    int slot = 0;
    for (int a = 0; a < vps; ++a) {
      topo.vertex_simplices[sx[a]].push_back(s);
      for (int b = a + 1; b < vps; ++b) {
        std::array<int, 2> key{std::min(sx[a], sx[b]), std::max(sx[a], sx[b])};
        auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(topo.edges.size()));
        if (inserted) {
          topo.edges.push_back(key);
          topo.edge_simplices.emplace_back();
          topo.vertex_edges[key[0]].push_back(it->second);
          topo.vertex_edges[key[1]].push_back(it->second);
        }
        topo.edge_simplices[it->second].push_back(s);
        topo.simplex_edges[s][slot++] = it->second;
      }
    }
  }

  topo.boundary_vertex.assign(n, false);
  if (mesh.dim == 2) {
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
      if (topo.edge_simplices[e].size() == 1) {
        topo.boundary_vertex[topo.edges[e][0]] = true;
        topo.boundary_vertex[topo.edges[e][1]] = true;
      }
    }
  } else {
    // A (dim-1)-face shared by exactly one full-simplex is on the boundary.
    std::map<std::array<int, 3>, std::pair<int, std::array<int, 3>>> face_count;
    for (const auto& sx : mesh.simplices) {
      for (int skip = 0; skip < 4; ++skip) {
        std::array<int, 3> f;
        int k = 0;
        for (int a = 0; a < 4; ++a)
          if (a != skip) f[k++] = sx[a];
        std::sort(f.begin(), f.end());
        auto [it, inserted] = face_count.try_emplace(f, std::make_pair(0, f));
        it->second.first++;
      }
    }
    for (auto& [f, c] : face_count)
      if (c.first == 1)
        for (int v : f) topo.boundary_vertex[v] = true;
  }

  // Components of the full-simplex adjacency graph (shared (dim-1)-face);
  // for dim 2 that is edge sharing.
  topo.simplex_component.assign(mesh.simplices.size(), -1);
  int comp = 0;
  std::vector<int> stack;
  for (int s0 = 0; s0 < static_cast<int>(mesh.simplices.size()); ++s0) {
    if (topo.simplex_component[s0] >= 0) continue;
    stack.push_back(s0);
    topo.simplex_component[s0] = comp;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      const auto& sx = mesh.simplices[s];
      for (int a = 0; a < vps; ++a)
        for (int b = a + 1; b < vps; ++b) {
          int e = topo.edge_between(sx[a], sx[b]);
          for (int t : topo.edge_simplices[e]) {
            if (topo.simplex_component[t] >= 0) continue;
            if (mesh.dim == 3) {
              // require a shared triangle face, not just an edge
              const auto& tx = mesh.simplices[t];
              int shared = 0;
              for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                  if (sx[i] == tx[j]) ++shared;
              if (shared < 3) continue;
            }
            topo.simplex_component[t] = comp;
            stack.push_back(t);
          }
        }
    }
    ++comp;
  }
  topo.component_count = comp;
  return topo;
}

void validate_mesh(const SimplicialMesh& mesh) {
  if (mesh.dim != 2 && mesh.dim != 3) throw std::runtime_error("mesh validation: dim must be 2 or 3");
  const int n = static_cast<int>(mesh.vertices.size());
  const int vps = mesh.verts_per_simplex();
  std::vector<bool> referenced(n, false);
  for (std::size_t s = 0; s < mesh.simplices.size(); ++s) {
    const auto& sx = mesh.simplices[s];
    for (int a = 0; a < vps; ++a) {
      if (sx[a] < 0 || sx[a] >= n)
        throw std::runtime_error("mesh validation: simplex " + std::to_string(s) +
                                 " references vertex index out of range: " + std::to_string(sx[a]));
      referenced[sx[a]] = true;
      for (int b = a + 1; b < vps; ++b)
        if (sx[a] == sx[b])
          throw std::runtime_error("mesh validation: simplex " + std::to_string(s) + " has repeated vertices");
    }
  }
  for (int v = 0; v < n; ++v)
    if (!referenced[v])
      throw std::runtime_error("mesh validation: vertex " + std::to_string(v) + " is not used by any simplex");
}

namespace {

struct TokenReader {
  std::ifstream in;
  int line_no = 0;
  std::istringstream line;

  explicit TokenReader(const std::string& path) : in(path) {}

  bool next_token(std::string& tok) {
    for (;;) {
      if (line >> tok) {
        if (tok[0] == '#') {
          line.str("");
          line.clear();
          continue;
        }
        return true;
      }
      std::string raw;
      if (!std::getline(in, raw)) return false;
      ++line_no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      line.str(raw);
      line.clear();
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + what);
  }

  Rat number(const char* what) {
    std::string tok;
    if (!next_token(tok)) fail(std::string("expected ") + what + ", got end of file");
    auto v = parse_number(tok);
    if (!v) fail(std::string("bad ") + what + " '" + tok + "'");
    return *v;
  }

  long integer(const char* what) {
    std::string tok;
    if (!next_token(tok)) fail(std::string("expected ") + what + ", got end of file");
    try {
      std::size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(std::string("bad ") + what + " '" + tok + "'");
    }
  }
};

}  // namespace

SimplicialMesh load_mesh(const std::string& path) {
  TokenReader rd(path);
  if (!rd.in) throw std::runtime_error("cannot open mesh file: " + path);

  std::string magic;
  if (!rd.next_token(magic) || magic != "rcm") rd.fail("expected 'rcm' header");
  SimplicialMesh mesh;
  mesh.dim = static_cast<int>(rd.integer("dimension"));
  if (mesh.dim != 2 && mesh.dim != 3) rd.fail("dimension must be 2 or 3");
  long nverts = rd.integer("vertex count");
  long nsimp = rd.integer("simplex count");
  if (nverts < 0 || nsimp < 0) rd.fail("negative count");

  mesh.vertices.reserve(nverts);
  for (long i = 0; i < nverts; ++i) {
    MeshVertex v;
    for (int c = 0; c < mesh.dim; ++c) v.coords[c] = rd.number("coordinate");
    v.f1 = rd.number("field value");
    v.f2 = rd.number("field value");
    finish_vertex(v);
    mesh.vertices.push_back(std::move(v));
  }
  mesh.simplices.reserve(nsimp);
  for (long i = 0; i < nsimp; ++i) {
    std::array<int, 4> sx{-1, -1, -1, -1};
    for (int a = 0; a < mesh.verts_per_simplex(); ++a) sx[a] = static_cast<int>(rd.integer("vertex index"));
    mesh.simplices.push_back(sx);
  }
  validate_mesh(mesh);
  return mesh;
}

void save_mesh(const SimplicialMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "rcm " << mesh.dim << " " << mesh.vertices.size() << " " << mesh.simplices.size() << "\n";
  for (const auto& v : mesh.vertices) {
    for (int c = 0; c < mesh.dim; ++c) out << number_string(v.coords[c]) << " ";
    out << number_string(v.f1) << " " << number_string(v.f2) << "\n";
  }
  for (const auto& sx : mesh.simplices) {
    for (int a = 0; a < mesh.verts_per_simplex(); ++a) out << (a ? " " : "") << sx[a];
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Order vertex_compare(const SimplicialMesh& mesh, const SosOrder& order, int u, int v) {
  const Rat& fu = mesh.field(u, order.field_selector);
  const Rat& fv = mesh.field(v, order.field_selector);
  int c = cmp(fu, fv);
  if (c != 0) return c < 0 ? Order::LESS : Order::GREATER;
  return u < v ? Order::LESS : Order::GREATER;
}

bool sos_less(const SimplicialMesh& mesh, const SosOrder& order, int u, int v) {
  if (u == v) return false;
  return vertex_compare(mesh, order, u, v) == Order::LESS;
}

Rat builtin_value(BuiltinName name, const Rat& x, const Rat& y) {
  switch (name) {
    case BuiltinName::diamond:
    case BuiltinName::eq2_f1:
      return rat_abs(x) + rat_abs(y);
    case BuiltinName::eq2_f2:
      return x >= 0 ? Rat(rat_abs(x - 1) + rat_abs(y)) : Rat(rat_abs(x + 1) + rat_abs(y));
    case BuiltinName::eq1:
      return x >= make_rat(1, 2) ? Rat(rat_abs(x - 1) + rat_abs(y))
                                 : Rat(rat_abs(x + 1) + rat_abs(y) - 1);
  }
  throw std::logic_error("unknown builtin");
}

SimplicialMesh build_builtin_pair(BuiltinName a, BuiltinName b, const Rat& extent, int resolution) {
  if (resolution < 2) throw std::runtime_error("builtin resolution must be >= 2");
  if (extent <= 0) throw std::runtime_error("builtin extent must be positive");
  const int n = resolution;
  SimplicialMesh mesh;
  mesh.dim = 2;
  mesh.vertices.reserve(static_cast<std::size_t>(n) * n);
  Rat step = 2 * extent / (n - 1);
  for (int j = 0; j < n; ++j) {
    Rat y = -extent + j * step;
    for (int i = 0; i < n; ++i) {
      Rat x = -extent + i * step;
      MeshVertex v;
      v.coords[0] = x;
      v.coords[1] = y;
      v.f1 = builtin_value(a, x, y);
      v.f2 = builtin_value(b, x, y);
      finish_vertex(v);
      mesh.vertices.push_back(std::move(v));
    }
  }
  auto id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      // diagonal from lower-left to upper-right
      mesh.simplices.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), -1});
      mesh.simplices.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1), -1});
    }
  return mesh;
}

SimplicialMesh build_builtin(const BuiltinField& spec) {
  return build_builtin_pair(spec.name, spec.name, spec.extent, spec.resolution);
}

}  // namespace reebc
