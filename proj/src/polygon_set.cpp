// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Exact planar arrangement engine behind PolygonSet. Every operation overlays
// the input walls into an arrangement (splitting at intersections, merging
// collinear overlaps per support line), labels faces/edges/vertices by the
// requested rule, then canonicalizes: walls that separate nothing are
// dissolved, collinear chains merged, and the structure rebuilt, so equal
// point sets have identical canonical form.

#include "reebc/polygon_set.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace reebc {

bool lex_less(const RPoint& a, const RPoint& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return cmp(a.y, b.y) < 0;
}

int orient(const RPoint& a, const RPoint& b, const RPoint& c) {
  Rat v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(v);
}

namespace {

struct RPointHash {
  std::size_t operator()(const RPoint& p) const { return hash_combine(hash_rat(p.x), hash_rat(p.y)); }
};

struct SegInput {
  RPoint a, b;
  int op = 0;                // operand slot, 0 or 1
  bool inside_left = false;  // labels oriented along a->b
  bool inside_right = false;
  bool in_set = true;
  int wind = 0;  // coverage mode: +1 when covered area lies left of a->b
};

struct MarkedPoint {
  RPoint p;
  int op = 0;
  bool in_set = true;
};

enum class LabelMode { Coverage, Boolean, Direct };

struct OpRule {
  bool (*face)(bool, bool);
  bool (*pt)(bool in_a, bool in_b, bool clos_a, bool clos_b);
};

bool rule_union_f(bool a, bool b) { return a || b; }
bool rule_union_p(bool a, bool b, bool, bool) { return a || b; }
bool rule_inter_f(bool a, bool b) { return a && b; }
bool rule_inter_p(bool a, bool b, bool, bool) { return a && b; }
bool rule_diff_f(bool a, bool b) { return a && !b; }
bool rule_diff_p(bool a, bool, bool, bool cb) { return a && !cb; }

const OpRule kUnion{rule_union_f, rule_union_p};
const OpRule kIntersect{rule_inter_f, rule_inter_p};
const OpRule kDifference{rule_diff_f, rule_diff_p};

// CCW order of direction vectors starting just after the +x axis.
int quad_class(int sx, int sy) {
  if (sy == 0) return sx > 0 ? 0 : 2;
  return sy > 0 ? 1 : 3;
}

bool dir_less(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
  int ca = quad_class(sgn(ax), sgn(ay));
  int cb = quad_class(sgn(bx), sgn(by));
  if (ca != cb) return ca < cb;
  return sgn(ax * by - ay * bx) > 0;
}

double pad_lo(double v) { return std::nextafter(std::nextafter(v, -1e308), -1e308); }
double pad_hi(double v) { return std::nextafter(std::nextafter(v, 1e308), 1e308); }

struct EdgeMeta {
  int wind = 0;
  bool has_src[2] = {false, false};
  bool src_in_l[2] = {false, false};
  bool src_in_r[2] = {false, false};
  bool src_set[2] = {false, false};
};

struct ArrEdge {
  int v0 = -1, v1 = -1;  // v0 < v1 lex
  EdgeMeta meta;
  int face_l = -1, face_r = -1;  // relative to v0->v1
  bool res_in_l = false, res_in_r = false, res_set = false;
  bool keep = false;
  double bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
};

struct HalfEdge {
  int from = -1, to = -1;
  int edge = -1;
  int next = -1;
  int cycle = -1;
  int out_pos = -1;
};

struct ArrVertex {
  RPoint p;
  std::vector<int> out;  // outgoing halfedges, CCW
  bool marked[2] = {false, false};
  bool mark_val[2] = {false, false};
  bool res_set = false;
  int comp = -1;
};

struct Cycle {
  std::vector<int> hes;
  int area_sign = 0;
  int face = -1;
};

struct ArrFace {
  bool inside = false;
  int wind = 0;
  bool in_op[2] = {false, false};
  int outer_cycle = -1;
  std::vector<int> hole_cycles;
};

struct Component {
  int min_vertex = -1;
  int outer_cycle = -1;
  int container_face = -1;
};

class Overlay {
 public:
  LabelMode mode = LabelMode::Coverage;
  std::vector<SegInput> segs;
  std::vector<MarkedPoint> marks;

  std::vector<ArrVertex> verts;
  std::vector<ArrEdge> edges;
  std::vector<HalfEdge> hes;
  std::vector<Cycle> cycles;
  std::vector<ArrFace> faces;
  std::vector<Component> comps;
  std::unordered_map<RPoint, int, RPointHash> vertex_ids;

  int vertex(const RPoint& p) {
    auto [it, inserted] = vertex_ids.try_emplace(p, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(ArrVertex{p});
    return it->second;
  }

  void build_arrangement();
  void build_topology();
  void resolve_faces();
  void label_faces(const OpRule* rule);
  PolygonSet finalize(const OpRule* rule, std::vector<RPoint> iso, std::vector<RPoint> punct, int depth);

  int face_of_he(int h);
  int resolve_component(int ci);
  int ray_face(const RPoint& p);  // face immediately left of p along y = p.y
};

// --- construction ----------------------------------------------------------

struct LineKey {
  mpz_class a, b, c;
  bool operator<(const LineKey& o) const {
    int t = cmp(a, o.a);
    if (t) return t < 0;
    t = cmp(b, o.b);
    if (t) return t < 0;
    return cmp(c, o.c) < 0;
  }
};

struct LineData {
  Rat A, B, C;  // A x + B y + C = 0
  bool vertical = false;
  std::vector<int> segs;
  std::vector<Rat> events;
};

LineKey line_key(const RPoint& p, const RPoint& q, Rat& A, Rat& B, Rat& C) {
  A = q.y - p.y;
  B = p.x - q.x;
  C = -(A * p.x + B * p.y);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), A.get_den().get_mpz_t(), B.get_den().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), C.get_den().get_mpz_t());
  mpz_class ia = A.get_num() * mpz_class(l / A.get_den());
  mpz_class ib = B.get_num() * mpz_class(l / B.get_den());
  mpz_class ic = C.get_num() * mpz_class(l / C.get_den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ic.get_mpz_t());
  ia /= g;
  ib /= g;
  ic /= g;
  int lead = sgn(ia) != 0 ? sgn(ia) : sgn(ib);
  if (lead < 0) {
    ia = -ia;
    ib = -ib;
    ic = -ic;
  }
  A = Rat(ia);
  B = Rat(ib);
  C = Rat(ic);
  return LineKey{ia, ib, ic};
}

Rat line_param(const LineData& ld, const RPoint& p) { return ld.vertical ? p.y : p.x; }

RPoint line_point(const LineData& ld, const Rat& t) {
  if (ld.vertical) return RPoint{-ld.C / ld.A, t};
  return RPoint{t, (-ld.C - ld.A * t) / ld.B};
}

void Overlay::build_arrangement() {
  std::map<LineKey, int> line_ids;
  std::vector<LineData> lines;
  struct SegOnLine {
    int line = -1;
    Rat t0, t1;
    bool flipped = false;
  };
  std::vector<SegOnLine> seg_ln(segs.size());

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.a == s.b) continue;
    Rat A, B, C;
    LineKey key = line_key(s.a, s.b, A, B, C);
    auto [it, inserted] = line_ids.try_emplace(key, static_cast<int>(lines.size()));
    if (inserted) {
      LineData ld;
      ld.A = A;
      ld.B = B;
      ld.C = C;
      ld.vertical = sgn(B) == 0;
      lines.push_back(std::move(ld));
    }
    int li = it->second;
    SegOnLine sl;
    sl.line = li;
    Rat ta = line_param(lines[li], s.a), tb = line_param(lines[li], s.b);
    sl.flipped = !(ta < tb);
    sl.t0 = sl.flipped ? tb : ta;
    sl.t1 = sl.flipped ? ta : tb;
    seg_ln[i] = sl;
    lines[li].segs.push_back(static_cast<int>(i));
  }

  struct Chunk {
    int line;
    Rat t0, t1;
    double bx0, bx1, by0, by1;
  };
  std::vector<Chunk> chunks;
  for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
    auto& ld = lines[li];
    std::vector<std::pair<Rat, Rat>> ivs;
    ivs.reserve(ld.segs.size());
    for (int si : ld.segs) {
      ivs.emplace_back(seg_ln[si].t0, seg_ln[si].t1);
      ld.events.push_back(seg_ln[si].t0);
      ld.events.push_back(seg_ln[si].t1);
    }
    std::sort(ivs.begin(), ivs.end(), [](const auto& a, const auto& b) {
      int c = cmp(a.first, b.first);
      if (c != 0) return c < 0;
      return cmp(a.second, b.second) < 0;
    });
    std::size_t k = 0;
    while (k < ivs.size()) {
      Rat t0 = ivs[k].first, t1 = ivs[k].second;
      std::size_t j = k + 1;
      while (j < ivs.size() && ivs[j].first <= t1) {
        if (ivs[j].second > t1) t1 = ivs[j].second;
        ++j;
      }
      RPoint p0 = line_point(ld, t0), p1 = line_point(ld, t1);
      double x0 = to_double(p0.x), x1 = to_double(p1.x);
      double y0 = to_double(p0.y), y1 = to_double(p1.y);
      chunks.push_back(Chunk{li, t0, t1, pad_lo(std::min(x0, x1)), pad_hi(std::max(x0, x1)),
                             pad_lo(std::min(y0, y1)), pad_hi(std::max(y0, y1))});
      k = j;
    }
  }

  std::sort(chunks.begin(), chunks.end(), [](const Chunk& a, const Chunk& b) { return a.bx0 < b.bx0; });
  std::vector<int> active;
  for (int ci = 0; ci < static_cast<int>(chunks.size()); ++ci) {
    const Chunk& c = chunks[ci];
    std::size_t w = 0;
    for (std::size_t ai = 0; ai < active.size(); ++ai)
      if (chunks[active[ai]].bx1 >= c.bx0) active[w++] = active[ai];
    active.resize(w);
    for (int oi : active) {
      const Chunk& o = chunks[oi];
      if (o.line == c.line) continue;
      if (o.by1 < c.by0 || c.by1 < o.by0) continue;
      LineData& l1 = lines[c.line];
      LineData& l2 = lines[o.line];
      Rat det = l1.A * l2.B - l2.A * l1.B;
      if (sgn(det) == 0) continue;
      Rat px = (l1.B * l2.C - l2.B * l1.C) / det;
      Rat py = (l2.A * l1.C - l1.A * l2.C) / det;
      RPoint p{px, py};
      Rat t1 = line_param(l1, p);
      if (t1 < c.t0 || t1 > c.t1) continue;
      Rat t2 = line_param(l2, p);
      if (t2 < o.t0 || t2 > o.t1) continue;
      l1.events.push_back(t1);
      l2.events.push_back(t2);
    }
    active.push_back(ci);
  }

  for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
    LineData& ld = lines[li];
    auto& ev = ld.events;
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
    if (ev.size() < 2) continue;

    auto idx_of = [&ev](const Rat& t) {
      auto it = std::lower_bound(ev.begin(), ev.end(), t);
      return static_cast<int>(it - ev.begin());
    };
    struct Delta {
      int seg;
      bool add;
    };
    std::vector<std::vector<Delta>> at(ev.size());
    for (int si : ld.segs) {
      at[idx_of(seg_ln[si].t0)].push_back({si, true});
      at[idx_of(seg_ln[si].t1)].push_back({si, false});
    }

    int active_count = 0;
    EdgeMeta agg;
    int inset_count = 0;
    int src_count[2] = {0, 0};
    int last_vid = -1;
    for (std::size_t e = 0; e < ev.size(); ++e) {
      if (e > 0 && active_count > 0) {
        int va = last_vid >= 0 ? last_vid : vertex(line_point(ld, ev[e - 1]));
        int vb = vertex(line_point(ld, ev[e]));
        last_vid = vb;
        ArrEdge edge;
        bool swapped = lex_less(verts[vb].p, verts[va].p);
        edge.v0 = swapped ? vb : va;
        edge.v1 = swapped ? va : vb;
        edge.meta = agg;
        if (swapped) {
          edge.meta.wind = -edge.meta.wind;
          for (int op = 0; op < 2; ++op) std::swap(edge.meta.src_in_l[op], edge.meta.src_in_r[op]);
        }
        edges.push_back(std::move(edge));
      } else {
        last_vid = -1;
      }
      for (const Delta& d : at[e]) {
        const SegInput& s = segs[d.seg];
        const SegOnLine& sl = seg_ln[d.seg];
        int k = d.add ? 1 : -1;
        active_count += k;
        int wind = s.wind;
        bool in_l = s.inside_left, in_r = s.inside_right;
        if (sl.flipped) {
          wind = -wind;
          std::swap(in_l, in_r);
        }
        agg.wind += k * wind;
        inset_count += k * (s.in_set ? 1 : 0);
        if (mode != LabelMode::Coverage) {
          src_count[s.op] += k;
          if (src_count[s.op] > 1) throw std::logic_error("overlapping walls within one operand");
          agg.has_src[s.op] = d.add;
          if (d.add) {
            agg.src_in_l[s.op] = in_l;
            agg.src_in_r[s.op] = in_r;
            agg.src_set[s.op] = s.in_set;
          }
        }
      }
      if (active_count == 0) last_vid = -1;
    }
    if (active_count != 0) throw std::logic_error("unbalanced interval sweep");
  }

  for (const auto& m : marks) {
    int v = vertex(m.p);
    verts[v].marked[m.op] = true;
    verts[v].mark_val[m.op] = m.in_set;
  }

  for (auto& e : edges) {
    double x0 = to_double(verts[e.v0].p.x), x1 = to_double(verts[e.v1].p.x);
    double y0 = to_double(verts[e.v0].p.y), y1 = to_double(verts[e.v1].p.y);
    e.bx0 = pad_lo(std::min(x0, x1));
    e.bx1 = pad_hi(std::max(x0, x1));
    e.by0 = pad_lo(std::min(y0, y1));
    e.by1 = pad_hi(std::max(y0, y1));
  }
}

void Overlay::build_topology() {
  hes.clear();
  hes.reserve(edges.size() * 2);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    hes.push_back(HalfEdge{edges[e].v0, edges[e].v1, e});
    hes.push_back(HalfEdge{edges[e].v1, edges[e].v0, e});
    verts[edges[e].v0].out.push_back(2 * e);
    verts[edges[e].v1].out.push_back(2 * e + 1);
  }
  for (auto& v : verts) {
    std::sort(v.out.begin(), v.out.end(), [&](int ha, int hb) {
      const RPoint& o = verts[hes[ha].from].p;
      const RPoint& pa = verts[hes[ha].to].p;
      const RPoint& pb = verts[hes[hb].to].p;
      return dir_less(pa.x - o.x, pa.y - o.y, pb.x - o.x, pb.y - o.y);
    });
    for (int i = 0; i < static_cast<int>(v.out.size()); ++i) hes[v.out[i]].out_pos = i;
  }
  // next = clockwise-next outgoing halfedge after the twin, so faces are
  // traced with their interior on the left
  for (int h = 0; h < static_cast<int>(hes.size()); ++h) {
    const auto& v = verts[hes[h].to];
    int pos = hes[h ^ 1].out_pos;
    int n = static_cast<int>(v.out.size());
    hes[h].next = v.out[(pos + n - 1) % n];
  }

  cycles.clear();
  for (int h0 = 0; h0 < static_cast<int>(hes.size()); ++h0) {
    if (hes[h0].cycle >= 0) continue;
    Cycle cy;
    int ci = static_cast<int>(cycles.size());
    Rat area2 = 0;
    int h = h0;
    do {
      hes[h].cycle = ci;
      cy.hes.push_back(h);
      const RPoint& a = verts[hes[h].from].p;
      const RPoint& b = verts[hes[h].to].p;
      area2 += a.x * b.y - b.x * a.y;
      h = hes[h].next;
    } while (h != h0);
    cy.area_sign = sgn(area2);
    cycles.push_back(std::move(cy));
  }

  // connected components over vertices with any incident wall
  std::vector<int> uf(verts.size());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (const auto& e : edges) {
    int a = find(e.v0), b = find(e.v1);
    if (a != b) uf[a] = b;
  }
  std::map<int, int> comp_ids;
  comps.clear();
  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    if (verts[v].out.empty()) continue;
    int root = find(v);
    auto [it, inserted] = comp_ids.try_emplace(root, static_cast<int>(comps.size()));
    if (inserted) comps.push_back(Component{});
    verts[v].comp = it->second;
    Component& c = comps[it->second];
    if (c.min_vertex < 0 || lex_less(verts[v].p, verts[c.min_vertex].p)) c.min_vertex = v;
  }
  // outer walk of a component: at its lex-min vertex every wall points into
  // the right half-plane; the cycle owning the angularly-largest such wall in
  // the upper classes (else overall) has the surrounding face on its left
  for (auto& c : comps) {
    const auto& out = verts[c.min_vertex].out;
    int pick = -1;
    bool pick_upper = false;
    for (int h : out) {
      const RPoint& o = verts[c.min_vertex].p;
      const RPoint& q = verts[hes[h].to].p;
      Rat dx = q.x - o.x, dy = q.y - o.y;
      bool upper = quad_class(sgn(dx), sgn(dy)) <= 1;
      if (pick < 0) {
        pick = h;
        pick_upper = upper;
        continue;
      }
      const RPoint& qp = verts[hes[pick].to].p;
      bool later = dir_less(qp.x - o.x, qp.y - o.y, dx, dy);
      if (pick_upper) {
        if (upper && later) pick = h;
      } else if (upper || later) {
        pick = h;
        pick_upper = upper;
      }
    }
    c.outer_cycle = hes[pick].cycle;
  }
}

int Overlay::face_of_he(int h) {
  int c = hes[h].cycle;
  if (cycles[c].face >= 0) return cycles[c].face;
  if (cycles[c].area_sign > 0) throw std::logic_error("unassigned positive cycle");
  int comp = verts[hes[h].from].comp;
  if (comps[comp].outer_cycle != c) throw std::logic_error("stray inner cycle");
  int f = resolve_component(comp);
  cycles[c].face = f;
  return f;
}

int Overlay::resolve_component(int ci) {
  Component& c = comps[ci];
  if (c.container_face >= 0) return c.container_face;
  c.container_face = ray_face(verts[c.min_vertex].p);
  return c.container_face;
}

int Overlay::ray_face(const RPoint& p) {
  bool have = false;
  Rat best_x;
  int best_edge = -1;
  double px = to_double(p.x), py = to_double(p.y);
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    const ArrEdge& e = edges[ei];
    if (py < e.by0 || py > e.by1 || e.bx0 >= px) continue;
    const RPoint& q0 = verts[e.v0].p;
    const RPoint& q1 = verts[e.v1].p;
    int cy = cmp(q0.y, q1.y);
    if (cy == 0) continue;
    const RPoint& lo = cy < 0 ? q0 : q1;
    const RPoint& hi = cy < 0 ? q1 : q0;
    if (!(lo.y <= p.y && p.y < hi.y)) continue;
    Rat x = lo.x + (p.y - lo.y) * (hi.x - lo.x) / (hi.y - lo.y);
    if (x >= p.x) continue;
    if (!have || x > best_x) {
      have = true;
      best_x = x;
      best_edge = ei;
    }
  }
  if (!have) return 0;

  const ArrEdge& e = edges[best_edge];
  RPoint hit{best_x, p.y};
  int hit_vertex = -1;
  if (hit == verts[e.v0].p) hit_vertex = e.v0;
  if (hit == verts[e.v1].p) hit_vertex = e.v1;
  if (hit_vertex < 0) {
    int side = orient(verts[e.v0].p, verts[e.v1].p, p);
    if (side == 0) throw std::logic_error("ray origin on wall");
    return face_of_he(side > 0 ? 2 * best_edge : 2 * best_edge + 1);
  }
  // crossing at a vertex: take the sector containing the +x direction, i.e.
  // the angularly-largest wall; walk right through walls lying on the ray
  int w = hit_vertex;
  for (;;) {
    const auto& out = verts[w].out;
    const RPoint& o = verts[w].p;
    int along = -1, pick = -1;
    for (int h : out) {
      const RPoint& q = verts[hes[h].to].p;
      Rat dx = q.x - o.x, dy = q.y - o.y;
      if (sgn(dy) == 0 && sgn(dx) > 0) {
        along = h;
        break;
      }
      if (pick < 0) {
        pick = h;
      } else {
        const RPoint& qp = verts[hes[pick].to].p;
        if (dir_less(qp.x - o.x, qp.y - o.y, dx, dy)) pick = h;
      }
    }
    if (along < 0) return face_of_he(pick);
    int nxt = hes[along].to;
    if (verts[nxt].p == p) throw std::logic_error("ray origin touches wall");
    if (lex_less(p, verts[nxt].p)) throw std::logic_error("ray walk passed origin");
    w = nxt;
  }
}

void Overlay::resolve_faces() {
  faces.clear();
  faces.push_back(ArrFace{});
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    if (cycles[c].area_sign > 0) {
      cycles[c].face = static_cast<int>(faces.size());
      ArrFace f;
      f.outer_cycle = c;
      faces.push_back(std::move(f));
    }
  }
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    if (cycles[c].area_sign > 0) continue;
    int f = face_of_he(cycles[c].hes[0]);
    faces[f].hole_cycles.push_back(c);
  }
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    edges[ei].face_l = cycles[hes[2 * ei].cycle].face;
    edges[ei].face_r = cycles[hes[2 * ei + 1].cycle].face;
  }
}

void Overlay::label_faces(const OpRule* rule) {
  std::vector<std::vector<std::pair<int, int>>> adj(faces.size());
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    adj[edges[ei].face_l].push_back({ei, edges[ei].face_r});
    adj[edges[ei].face_r].push_back({ei, edges[ei].face_l});
  }
  std::vector<char> seen(faces.size(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::size_t qi = 0;
  while (qi < queue.size()) {
    int f = queue[qi++];
    for (auto [ei, g] : adj[f]) {
      const ArrEdge& e = edges[ei];
      bool to_left = g == e.face_l;
      int wind_g = to_left ? faces[e.face_r].wind + e.meta.wind : faces[e.face_l].wind - e.meta.wind;
      bool g_in[2];
      for (int op = 0; op < 2; ++op) {
        if (e.meta.has_src[op])
          g_in[op] = to_left ? e.meta.src_in_l[op] : e.meta.src_in_r[op];
        else
          g_in[op] = faces[f].in_op[op];
      }
      if (!seen[g]) {
        seen[g] = 1;
        faces[g].wind = wind_g;
        faces[g].in_op[0] = g_in[0];
        faces[g].in_op[1] = g_in[1];
        queue.push_back(g);
      } else if (mode == LabelMode::Coverage) {
        if (faces[g].wind != wind_g) throw std::logic_error("inconsistent winding");
      } else if (faces[g].in_op[0] != g_in[0] || faces[g].in_op[1] != g_in[1]) {
        throw std::logic_error("inconsistent operand membership");
      }
    }
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!seen[f]) throw std::logic_error("face graph disconnected from outside");
    switch (mode) {
      case LabelMode::Coverage:
        faces[f].inside = faces[f].wind > 0;
        break;
      case LabelMode::Boolean:
        faces[f].inside = rule->face(faces[f].in_op[0], faces[f].in_op[1]);
        break;
      case LabelMode::Direct:
        faces[f].inside = faces[f].in_op[0];
        break;
    }
  }
  if (faces[0].inside) throw std::logic_error("unbounded face labeled inside");
}

// --- canonicalization -------------------------------------------------------

PolygonSet build_public(Overlay& ov);

PolygonSet Overlay::finalize(const OpRule* rule, std::vector<RPoint> iso, std::vector<RPoint> punct,
                             int depth) {
  for (auto& e : edges) {
    bool in_l = faces[e.face_l].inside;
    bool in_r = faces[e.face_r].inside;
    switch (mode) {
      case LabelMode::Coverage:
        e.res_set = true;
        break;
      case LabelMode::Direct:
        e.res_set = e.meta.src_set[0];
        break;
      case LabelMode::Boolean: {
        bool ein[2], clos[2];
        for (int op = 0; op < 2; ++op) {
          ein[op] = e.meta.has_src[op] ? e.meta.src_set[op] : faces[e.face_l].in_op[op];
          clos[op] = e.meta.has_src[op] || faces[e.face_l].in_op[op] || faces[e.face_r].in_op[op];
        }
        e.res_set = rule->pt(ein[0], ein[1], clos[0], clos[1]);
        break;
      }
    }
    e.res_in_l = in_l;
    e.res_in_r = in_r;
    e.keep = !(in_l == in_r && e.res_set == in_l);
  }

  std::vector<char> v_has_kept(verts.size(), 0);
  for (const auto& e : edges)
    if (e.keep) {
      v_has_kept[e.v0] = 1;
      v_has_kept[e.v1] = 1;
    }
  std::vector<int> v_ambient(verts.size(), -1);
  for (const auto& e : edges) {
    v_ambient[e.v0] = e.face_l;
    v_ambient[e.v1] = e.face_l;
  }
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    if (v_ambient[v] < 0) v_ambient[v] = ray_face(verts[v].p);

  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    ArrVertex& av = verts[v];
    if (mode == LabelMode::Coverage) {
      av.res_set = true;
      continue;
    }
    if (mode == LabelMode::Direct) {
      av.res_set = av.marked[0] ? av.mark_val[0] : true;
      continue;
    }
    bool vin[2], clos[2];
    for (int op = 0; op < 2; ++op) {
      if (av.marked[op]) {
        vin[op] = av.mark_val[op];
      } else {
        bool found = false;
        for (int h : av.out) {
          const ArrEdge& e = edges[hes[h].edge];
          if (e.meta.has_src[op]) {
            vin[op] = e.meta.src_set[op];
            found = true;
            break;
          }
        }
        if (!found) vin[op] = faces[v_ambient[v]].in_op[op];
      }
      clos[op] = vin[op] || faces[v_ambient[v]].in_op[op];
      for (int h : av.out) {
        const ArrEdge& e = edges[hes[h].edge];
        if (e.meta.has_src[op] || faces[e.face_l].in_op[op] || faces[e.face_r].in_op[op]) clos[op] = true;
      }
    }
    av.res_set = rule->pt(vin[0], vin[1], clos[0], clos[1]);
  }

  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    if (v_has_kept[v]) continue;
    bool ambient_inside = faces[v_ambient[v]].inside;
    if (verts[v].res_set && !ambient_inside) iso.push_back(verts[v].p);
    if (!verts[v].res_set && ambient_inside) punct.push_back(verts[v].p);
  }

  // collinear chains across label-transparent degree-2 vertices
  std::vector<std::vector<int>> v_kept(verts.size());
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    if (!edges[ei].keep) continue;
    v_kept[edges[ei].v0].push_back(ei);
    v_kept[edges[ei].v1].push_back(ei);
  }
  auto labels_away = [&](int ei, int v_from) {
    const ArrEdge& e = edges[ei];
    if (e.v0 == v_from) return std::make_pair(e.res_in_l, e.res_in_r);
    return std::make_pair(e.res_in_r, e.res_in_l);
  };
  std::vector<char> dissolve_v(verts.size(), 0);
  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    if (v_kept[v].size() != 2) continue;
    int e0 = v_kept[v][0], e1 = v_kept[v][1];
    if (edges[e0].res_set != edges[e1].res_set || edges[e0].res_set != verts[v].res_set) continue;
    int a = edges[e0].v0 == v ? edges[e0].v1 : edges[e0].v0;
    int b = edges[e1].v0 == v ? edges[e1].v1 : edges[e1].v0;
    if (orient(verts[a].p, verts[v].p, verts[b].p) != 0) continue;
    auto into = labels_away(e0, a);  // labels walking a -> v
    auto away = labels_away(e1, v);  // labels walking v -> b
    if (into != away) continue;
    dissolve_v[v] = 1;
  }

  bool changed = mode != LabelMode::Direct;
  for (const auto& e : edges)
    if (!e.keep) changed = true;
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    if (dissolve_v[v] || (!v_has_kept[v] && !verts[v].out.empty())) changed = true;

  if (!changed) {
    PolygonSet out = build_public(*this);
    out.iso_points = std::move(iso);
    out.punctures = std::move(punct);
    std::sort(out.iso_points.begin(), out.iso_points.end(), lex_less);
    out.iso_points.erase(std::unique(out.iso_points.begin(), out.iso_points.end()), out.iso_points.end());
    std::sort(out.punctures.begin(), out.punctures.end(), lex_less);
    out.punctures.erase(std::unique(out.punctures.begin(), out.punctures.end()), out.punctures.end());
    return out;
  }
  if (depth > 1) throw std::logic_error("canonical rebuild did not stabilize");

  struct KeptSeg {
    RPoint a, b;
    bool in_l, in_r, in_set;
  };
  std::vector<KeptSeg> kept;
  std::vector<char> edge_done(edges.size(), 0);
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    if (!edges[ei].keep || edge_done[ei]) continue;
    int cur = ei;
    int from = edges[ei].v0;
    int guard = 0;
    while (dissolve_v[from]) {
      int nxt_e = v_kept[from][0] == cur ? v_kept[from][1] : v_kept[from][0];
      int nxt_v = edges[nxt_e].v0 == from ? edges[nxt_e].v1 : edges[nxt_e].v0;
      cur = nxt_e;
      from = nxt_v;
      if (++guard > static_cast<int>(edges.size())) throw std::logic_error("collinear chain loop");
    }
    int e_cur = cur;
    int v_from = from;
    RPoint a = verts[v_from].p;
    auto first_labels = labels_away(e_cur, v_from);
    bool set_flag = edges[e_cur].res_set;
    for (;;) {
      edge_done[e_cur] = 1;
      int to = edges[e_cur].v0 == v_from ? edges[e_cur].v1 : edges[e_cur].v0;
      if (!dissolve_v[to]) {
        RPoint b = verts[to].p;
        KeptSeg ks;
        if (lex_less(a, b)) {
          ks.a = a;
          ks.b = b;
          ks.in_l = first_labels.first;
          ks.in_r = first_labels.second;
        } else {
          ks.a = b;
          ks.b = a;
          ks.in_l = first_labels.second;
          ks.in_r = first_labels.first;
        }
        ks.in_set = set_flag;
        kept.push_back(ks);
        break;
      }
      int nxt_e = v_kept[to][0] == e_cur ? v_kept[to][1] : v_kept[to][0];
      v_from = to;
      e_cur = nxt_e;
    }
  }

  std::vector<MarkedPoint> rebuild_marks;
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    if (v_has_kept[v] && !dissolve_v[v]) rebuild_marks.push_back({verts[v].p, 0, verts[v].res_set});

  Overlay second;
  second.mode = LabelMode::Direct;
  second.segs.reserve(kept.size());
  for (const auto& ks : kept) {
    SegInput si;
    si.a = ks.a;
    si.b = ks.b;
    si.op = 0;
    si.inside_left = ks.in_l;
    si.inside_right = ks.in_r;
    si.in_set = ks.in_set;
    second.segs.push_back(si);
  }
  second.marks = std::move(rebuild_marks);
  second.build_arrangement();
  second.build_topology();
  second.resolve_faces();
  second.label_faces(nullptr);
  return second.finalize(nullptr, std::move(iso), std::move(punct), depth + 1);
}

PolygonSet build_public(Overlay& ov) {
  PolygonSet out;
  std::vector<int> vids;
  for (int v = 0; v < static_cast<int>(ov.verts.size()); ++v)
    if (!ov.verts[v].out.empty()) vids.push_back(v);
  std::sort(vids.begin(), vids.end(), [&](int a, int b) { return lex_less(ov.verts[a].p, ov.verts[b].p); });
  std::vector<int> vmap(ov.verts.size(), -1);
  for (int i = 0; i < static_cast<int>(vids.size()); ++i) {
    vmap[vids[i]] = i;
    out.verts.push_back({ov.verts[vids[i]].p, ov.verts[vids[i]].res_set});
  }

  auto cycle_anchor = [&](int ci) {
    // (lex-min from-vertex, smallest direction) halfedge of the cycle
    const Cycle& cy = ov.cycles[ci];
    int best = -1;
    for (int h : cy.hes) {
      if (best < 0) {
        best = h;
        continue;
      }
      int vb = ov.hes[best].from, vh = ov.hes[h].from;
      if (lex_less(ov.verts[vh].p, ov.verts[vb].p)) {
        best = h;
      } else if (vh == vb) {
        const RPoint& o = ov.verts[vh].p;
        const RPoint& ph = ov.verts[ov.hes[h].to].p;
        const RPoint& pb = ov.verts[ov.hes[best].to].p;
        if (dir_less(ph.x - o.x, ph.y - o.y, pb.x - o.x, pb.y - o.y)) best = h;
      }
    }
    return best;
  };

  struct FaceKey {
    int face;
    int anchor;
  };
  std::vector<FaceKey> inside_faces;
  for (int f = 1; f < static_cast<int>(ov.faces.size()); ++f) {
    if (!ov.faces[f].inside) continue;
    inside_faces.push_back({f, cycle_anchor(ov.faces[f].outer_cycle)});
  }
  auto anchor_less = [&](int ha, int hb) {
    int va = ov.hes[ha].from, vb = ov.hes[hb].from;
    if (va != vb) return lex_less(ov.verts[va].p, ov.verts[vb].p);
    const RPoint& o = ov.verts[va].p;
    const RPoint& pa = ov.verts[ov.hes[ha].to].p;
    const RPoint& pb = ov.verts[ov.hes[hb].to].p;
    return dir_less(pa.x - o.x, pa.y - o.y, pb.x - o.x, pb.y - o.y);
  };
  std::sort(inside_faces.begin(), inside_faces.end(),
            [&](const FaceKey& a, const FaceKey& b) { return anchor_less(a.anchor, b.anchor); });
  std::vector<int> fmap(ov.faces.size(), -1);
  for (int i = 0; i < static_cast<int>(inside_faces.size()); ++i) fmap[inside_faces[i].face] = i;

  auto walk_ring = [&](int anchor) {
    std::vector<RPoint> ring;
    int h = anchor;
    do {
      ring.push_back(ov.verts[ov.hes[h].from].p);
      h = ov.hes[h].next;
    } while (h != anchor);
    return ring;
  };

  for (int i = 0; i < static_cast<int>(inside_faces.size()); ++i) {
    const ArrFace& af = ov.faces[inside_faces[i].face];
    Face f;
    f.id = i;
    f.outer = walk_ring(inside_faces[i].anchor);
    Rat area2 = 0;
    auto accum = [&area2](const std::vector<RPoint>& ring) {
      for (std::size_t k = 0; k < ring.size(); ++k) {
        const RPoint& a = ring[k];
        const RPoint& b = ring[(k + 1) % ring.size()];
        area2 += a.x * b.y - b.x * a.y;
      }
    };
    accum(f.outer);
    std::vector<int> hole_anchors;
    for (int c : af.hole_cycles) hole_anchors.push_back(cycle_anchor(c));
    std::sort(hole_anchors.begin(), hole_anchors.end(), anchor_less);
    for (int anchor : hole_anchors) {
      f.holes.push_back(walk_ring(anchor));
      accum(f.holes.back());
    }
    f.area = area2 / 2;
    if (sgn(f.area) <= 0) throw std::logic_error("face with non-positive area");
    out.faces_.push_back(std::move(f));
  }

  struct PubEdge {
    int v0, v1, fl, fr;
    bool in_set;
  };
  std::vector<PubEdge> pe;
  for (const auto& e : ov.edges) {
    if (!e.keep) continue;
    pe.push_back({vmap[e.v0], vmap[e.v1], fmap[e.face_l], fmap[e.face_r], e.res_set});
  }
  std::sort(pe.begin(), pe.end(),
            [](const PubEdge& a, const PubEdge& b) { return a.v0 != b.v0 ? a.v0 < b.v0 : a.v1 < b.v1; });
  for (const auto& e : pe) out.edges.push_back({e.v0, e.v1, e.fl, e.fr, e.in_set});

  for (const auto& e : out.edges) {
    if (e.face_left >= 0 && e.face_right >= 0 && e.face_left != e.face_right) {
      out.faces_[e.face_left].neighbors.push_back(e.face_right);
      out.faces_[e.face_right].neighbors.push_back(e.face_left);
    }
  }
  for (auto& f : out.faces_) {
    std::sort(f.neighbors.begin(), f.neighbors.end());
    f.neighbors.erase(std::unique(f.neighbors.begin(), f.neighbors.end()), f.neighbors.end());
  }
  return out;
}

PolygonSet run_overlay(LabelMode mode, const OpRule* rule, std::vector<SegInput> segs,
                       std::vector<MarkedPoint> marks) {
  Overlay ov;
  ov.mode = mode;
  ov.segs = std::move(segs);
  ov.marks = std::move(marks);
  ov.build_arrangement();
  ov.build_topology();
  ov.resolve_faces();
  ov.label_faces(rule);
  return ov.finalize(rule, {}, {}, 0);
}

void append_operand(std::vector<SegInput>& segs, std::vector<MarkedPoint>& marks, const PolygonSet& s,
                    int op) {
  for (const auto& e : s.edges) {
    SegInput si;
    si.a = s.verts[e.v0].p;
    si.b = s.verts[e.v1].p;
    si.op = op;
    si.inside_left = e.face_left >= 0;
    si.inside_right = e.face_right >= 0;
    si.in_set = e.in_set;
    segs.push_back(std::move(si));
  }
  for (const auto& v : s.verts) marks.push_back({v.p, op, v.in_set});
  for (const auto& p : s.iso_points) marks.push_back({p, op, true});
  for (const auto& p : s.punctures) marks.push_back({p, op, false});
}

PolygonSet boolean_op(const PolygonSet& a, const PolygonSet& b, const OpRule& rule) {
  std::vector<SegInput> segs;
  std::vector<MarkedPoint> marks;
  append_operand(segs, marks, a, 0);
  append_operand(segs, marks, b, 1);
  return run_overlay(LabelMode::Boolean, &rule, std::move(segs), std::move(marks));
}

}  // namespace

// --- public API -------------------------------------------------------------

Rat PolygonSet::area() const {
  Rat total = 0;
  for (const auto& f : faces_) total += f.area;
  return total;
}

bool PolygonSet::operator==(const PolygonSet& o) const {
  if (verts.size() != o.verts.size() || edges.size() != o.edges.size()) return false;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (verts[i].p != o.verts[i].p || verts[i].in_set != o.verts[i].in_set) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& a = edges[i];
    const Edge& b = o.edges[i];
    if (a.v0 != b.v0 || a.v1 != b.v1 || a.in_set != b.in_set || a.face_left != b.face_left ||
        a.face_right != b.face_right)
      return false;
  }
  return iso_points == o.iso_points && punctures == o.punctures;
}

PolygonSet convex_hull(std::span<const RPoint> points) {
  std::vector<RPoint> pts(points.begin(), points.end());
  if (pts.empty()) throw std::invalid_argument("convex_hull of no points");
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (pts.size() == 1) {
    PolygonSet out;
    out.iso_points.push_back(pts[0]);
    return out;
  }
  bool collinear = true;
  for (std::size_t i = 2; i < pts.size() && collinear; ++i)
    if (orient(pts[0], pts[1], pts[i]) != 0) collinear = false;

  std::vector<SegInput> segs;
  if (collinear) {
    SegInput si;
    si.a = pts.front();
    si.b = pts.back();
    segs.push_back(si);
    return run_overlay(LabelMode::Coverage, nullptr, std::move(segs), {});
  }

  auto chain = [&](bool upper) {
    std::vector<RPoint> h;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const RPoint& p = upper ? pts[pts.size() - 1 - i] : pts[i];
      while (h.size() >= 2 && orient(h[h.size() - 2], h[h.size() - 1], p) <= 0) h.pop_back();
      h.push_back(p);
    }
    return h;
  };
  std::vector<RPoint> ring = chain(false);
  std::vector<RPoint> upper = chain(true);
  ring.pop_back();
  upper.pop_back();
  ring.insert(ring.end(), upper.begin(), upper.end());

  for (std::size_t i = 0; i < ring.size(); ++i) {
    SegInput si;
    si.a = ring[i];
    si.b = ring[(i + 1) % ring.size()];
    si.wind = 1;
    segs.push_back(si);
  }
  return run_overlay(LabelMode::Coverage, nullptr, std::move(segs), {});
}

PolygonSet make_rect(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("make_rect needs positive extents");
  std::array<RPoint, 4> c{RPoint{x0, y0}, RPoint{x1, y0}, RPoint{x1, y1}, RPoint{x0, y1}};
  std::vector<SegInput> segs;
  for (int i = 0; i < 4; ++i) {
    SegInput si;
    si.a = c[i];
    si.b = c[(i + 1) % 4];
    si.wind = 1;
    segs.push_back(si);
  }
  return run_overlay(LabelMode::Coverage, nullptr, std::move(segs), {});
}

PolygonSet set_union(const PolygonSet& a, const PolygonSet& b) { return boolean_op(a, b, kUnion); }
PolygonSet set_difference(const PolygonSet& a, const PolygonSet& b) { return boolean_op(a, b, kDifference); }
PolygonSet set_intersection(const PolygonSet& a, const PolygonSet& b) { return boolean_op(a, b, kIntersect); }

PolygonSet union_of_hulls(const std::vector<std::vector<RPoint>>& point_sets) {
  std::vector<SegInput> segs;
  std::vector<MarkedPoint> marks;
  std::vector<RPoint> pts;
  for (const auto& input : point_sets) {
    pts.assign(input.begin(), input.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      marks.push_back({pts[0], 0, true});
      continue;
    }
    bool collinear = true;
    for (std::size_t i = 2; i < pts.size() && collinear; ++i)
      if (orient(pts[0], pts[1], pts[i]) != 0) collinear = false;
    if (collinear) {
      SegInput si;
      si.a = pts.front();
      si.b = pts.back();
      segs.push_back(si);
      continue;
    }
    auto push_chain = [&](bool upper) {
      std::vector<RPoint> h;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const RPoint& p = upper ? pts[pts.size() - 1 - i] : pts[i];
        while (h.size() >= 2 && orient(h[h.size() - 2], h[h.size() - 1], p) <= 0) h.pop_back();
        h.push_back(p);
      }
      return h;
    };
    std::vector<RPoint> ring = push_chain(false);
    std::vector<RPoint> upper = push_chain(true);
    ring.pop_back();
    upper.pop_back();
    ring.insert(ring.end(), upper.begin(), upper.end());
    for (std::size_t i = 0; i < ring.size(); ++i) {
      SegInput si;
      si.a = ring[i];
      si.b = ring[(i + 1) % ring.size()];
      si.wind = 1;
      segs.push_back(si);
    }
  }
  return run_overlay(LabelMode::Coverage, nullptr, std::move(segs), std::move(marks));
}

PolygonSet union_all_closed(std::span<const PolygonSet> parts) {
  std::vector<SegInput> segs;
  std::vector<MarkedPoint> marks;
  for (const auto& s : parts) {
    if (!s.punctures.empty()) throw std::invalid_argument("union_all_closed: operand is not closed");
    for (const auto& e : s.edges) {
      if (!e.in_set) throw std::invalid_argument("union_all_closed: operand is not closed");
      SegInput si;
      si.a = s.verts[e.v0].p;
      si.b = s.verts[e.v1].p;
      si.wind = (e.face_left >= 0 ? 1 : 0) - (e.face_right >= 0 ? 1 : 0);
      segs.push_back(std::move(si));
    }
    for (const auto& p : s.iso_points) marks.push_back({p, 0, true});
  }
  return run_overlay(LabelMode::Coverage, nullptr, std::move(segs), std::move(marks));
}

namespace {

int point_on_segment(const RPoint& a, const RPoint& b, const RPoint& p) {
  if (p == a || p == b) return 0;
  if (orient(a, b, p) != 0) return -1;
  if (cmp(std::min(a.x, b.x), p.x) <= 0 && cmp(p.x, std::max(a.x, b.x)) <= 0 &&
      cmp(std::min(a.y, b.y), p.y) <= 0 && cmp(p.y, std::max(a.y, b.y)) <= 0)
    return 1;
  return -1;
}

struct Located {
  enum Kind { Isolated, Puncture, Vertex, EdgeInterior, Face, Outside } kind;
  int index = -1;
};

// face id (or -1 for outside) immediately left of p, on the canonical set
int public_ray_face(const PolygonSet& s, const RPoint& p) {
  bool have = false;
  Rat best_x;
  int best_edge = -1;
  for (int ei = 0; ei < static_cast<int>(s.edges.size()); ++ei) {
    const auto& e = s.edges[ei];
    const RPoint& q0 = s.verts[e.v0].p;
    const RPoint& q1 = s.verts[e.v1].p;
    int cy = cmp(q0.y, q1.y);
    if (cy == 0) continue;
    const RPoint& lo = cy < 0 ? q0 : q1;
    const RPoint& hi = cy < 0 ? q1 : q0;
    if (!(lo.y <= p.y && p.y < hi.y)) continue;
    Rat x = lo.x + (p.y - lo.y) * (hi.x - lo.x) / (hi.y - lo.y);
    if (x >= p.x) continue;
    if (!have || x > best_x) {
      have = true;
      best_x = x;
      best_edge = ei;
    }
  }
  if (!have) return -1;
  const auto& e = s.edges[best_edge];
  RPoint hit{best_x, p.y};
  int hit_v = -1;
  if (hit == s.verts[e.v0].p) hit_v = e.v0;
  if (hit == s.verts[e.v1].p) hit_v = e.v1;
  if (hit_v < 0) {
    int side = orient(s.verts[e.v0].p, s.verts[e.v1].p, p);
    return side > 0 ? e.face_left : e.face_right;
  }
  int w = hit_v;
  for (;;) {
    const RPoint& o = s.verts[w].p;
    int along_other = -1;
    int pick_face = -1;
    bool have_pick = false;
    RPoint pick_d;
    for (const auto& ed : s.edges) {
      int other;
      bool canonical;
      if (ed.v0 == w) {
        other = ed.v1;
        canonical = true;
      } else if (ed.v1 == w) {
        other = ed.v0;
        canonical = false;
      } else {
        continue;
      }
      Rat dx = s.verts[other].p.x - o.x, dy = s.verts[other].p.y - o.y;
      if (sgn(dy) == 0 && sgn(dx) > 0) {
        along_other = other;
        break;
      }
      if (!have_pick || dir_less(pick_d.x, pick_d.y, dx, dy)) {
        have_pick = true;
        pick_face = canonical ? ed.face_left : ed.face_right;  // face left of w->other
        pick_d = RPoint{dx, dy};
      }
    }
    if (along_other < 0) return pick_face;
    if (s.verts[along_other].p == p || lex_less(p, s.verts[along_other].p))
      throw std::logic_error("locate ray walk reached query");
    w = along_other;
  }
}

Located locate_impl(const PolygonSet& s, const RPoint& p) {
  for (std::size_t i = 0; i < s.iso_points.size(); ++i)
    if (s.iso_points[i] == p) return {Located::Isolated, static_cast<int>(i)};
  for (std::size_t i = 0; i < s.punctures.size(); ++i)
    if (s.punctures[i] == p) return {Located::Puncture, static_cast<int>(i)};
  for (std::size_t i = 0; i < s.verts.size(); ++i)
    if (s.verts[i].p == p) return {Located::Vertex, static_cast<int>(i)};
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const auto& e = s.edges[i];
    if (point_on_segment(s.verts[e.v0].p, s.verts[e.v1].p, p) == 1)
      return {Located::EdgeInterior, static_cast<int>(i)};
  }
  int f = public_ray_face(s, p);
  if (f < 0) return {Located::Outside, -1};
  return {Located::Face, f};
}

}  // namespace

bool contains_point(const PolygonSet& s, const RPoint& p) {
  Located r = locate_impl(s, p);
  switch (r.kind) {
    case Located::Isolated:
      return true;
    case Located::Puncture:
    case Located::Outside:
      return false;
    case Located::Vertex:
      return s.verts[r.index].in_set;
    case Located::EdgeInterior:
      return s.edges[r.index].in_set;
    case Located::Face:
      return true;
  }
  return false;
}

std::optional<int> locate(const PolygonSet& s, const RPoint& p) {
  Located r = locate_impl(s, p);
  switch (r.kind) {
    case Located::Isolated:
    case Located::Puncture:
    case Located::Outside:
      return std::nullopt;
    case Located::Vertex: {
      if (!s.verts[r.index].in_set) return std::nullopt;
      int best = -1;
      for (const auto& e : s.edges) {
        if (e.v0 != r.index && e.v1 != r.index) continue;
        for (int f : {e.face_left, e.face_right})
          if (f >= 0 && (best < 0 || f < best)) best = f;
      }
      if (best < 0) return std::nullopt;
      return best;
    }
    case Located::EdgeInterior: {
      const auto& e = s.edges[r.index];
      if (!e.in_set) return std::nullopt;
      int f = std::max(e.face_left, e.face_right);
      if (f < 0) return std::nullopt;
      return f;
    }
    case Located::Face:
      return r.index;
  }
  return std::nullopt;
}

namespace {

void ring_crossings(const std::vector<RPoint>& ring, const Rat& level, std::vector<Rat>& xs) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const RPoint& a = ring[i];
    const RPoint& b = ring[(i + 1) % ring.size()];
    int cy = cmp(a.y, b.y);
    if (cy == 0) continue;
    const RPoint& lo = cy < 0 ? a : b;
    const RPoint& hi = cy < 0 ? b : a;
    if (!(lo.y <= level && level < hi.y)) continue;
    xs.push_back(lo.x + (level - lo.y) * (hi.x - lo.x) / (hi.y - lo.y));
  }
}

Rat pick_avoiding(const Rat& lo, const Rat& hi, std::span<const Rat> forbidden, long numer, long denom) {
  Rat c = lo + (hi - lo) * numer / denom;
  auto is_forbidden = [&](const Rat& v) {
    auto it = std::lower_bound(forbidden.begin(), forbidden.end(), v);
    return it != forbidden.end() && *it == v;
  };
  int guard = 0;
  while (is_forbidden(c)) {
    c = (c + hi) / 2;
    if (++guard > 4096) throw std::logic_error("cannot avoid forbidden values");
  }
  return c;
}

}  // namespace

RPoint representative_point(const PolygonSet& s, int face_id, std::span<const Rat> forbidden_x,
                            std::span<const Rat> forbidden_y, int salt) {
  if (face_id < 0 || face_id >= static_cast<int>(s.faces_.size()))
    throw std::invalid_argument("representative_point: bad face id");
  const Face& f = s.faces_[face_id];

  std::vector<Rat> ys;
  for (const auto& p : f.outer) ys.push_back(p.y);
  for (const auto& h : f.holes)
    for (const auto& p : h) ys.push_back(p.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (ys.size() < 2) throw std::logic_error("face without vertical extent");

  std::size_t gap = 0;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i)
    if (ys[i + 1] - ys[i] > ys[gap + 1] - ys[gap]) gap = i;

  int yi = salt % 5, xi = salt / 5;
  Rat level = pick_avoiding(ys[gap], ys[gap + 1], forbidden_y, 2 * yi + 1, 10);

  std::vector<Rat> xs;
  ring_crossings(f.outer, level, xs);
  for (const auto& h : f.holes) ring_crossings(h, level, xs);
  std::sort(xs.begin(), xs.end());
  if (xs.size() % 2 != 0) throw std::logic_error("odd crossing count in face slice");

  int best = -1;
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    if (xs[i] == xs[i + 1]) continue;
    if (best < 0 || xs[i + 1] - xs[i] > xs[best + 1] - xs[best]) best = static_cast<int>(i);
  }
  if (best < 0) throw std::logic_error("empty face slice");
  Rat x = pick_avoiding(xs[best], xs[best + 1], forbidden_x, 2 * (xi % 2) + 1, 4);
  return RPoint{x, level};
}

std::vector<std::pair<Rat, Rat>> inset_segments_on_line(const PolygonSet& s, int face_id, bool vertical,
                                                        const Rat& coord) {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& e : s.edges) {
    if (!e.in_set) continue;
    if (e.face_left != face_id && e.face_right != face_id) continue;
    const RPoint& a = s.verts[e.v0].p;
    const RPoint& b = s.verts[e.v1].p;
    if (vertical) {
      if (a.x == coord && b.x == coord) out.emplace_back(std::min(a.y, b.y), std::max(a.y, b.y));
    } else {
      if (a.y == coord && b.y == coord) out.emplace_back(std::min(a.x, b.x), std::max(a.x, b.x));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return cmp(a.second, b.second) < 0;
  });
  return out;
}

std::string to_svg(const PolygonSet& s, const std::vector<std::string>& face_fills, double width_px) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto see = [&](const RPoint& p) {
    double x = to_double(p.x), y = to_double(p.y);
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& v : s.verts) see(v.p);
  for (const auto& p : s.iso_points) see(p);
  if (x0 > x1) {
    x0 = y0 = 0;
    x1 = y1 = 1;
  }
  double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
  double scale = width_px / w;
  double margin = 0.03 * w;

  char buf[200];
  std::ostringstream svg;
  std::snprintf(buf, sizeof(buf), "%.12g %.12g %.12g %.12g", x0 - margin, -(y1 + margin), w + 2 * margin,
                h + 2 * margin);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << buf << "\" width=\""
      << static_cast<int>(width_px) << "\">\n";
  auto emit_ring = [&](std::ostringstream& d, const std::vector<RPoint>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%c%.12g %.12g", i == 0 ? 'M' : 'L', to_double(ring[i].x),
                    -to_double(ring[i].y));
      d << buf;
    }
    d << "Z";
  };
  for (const auto& f : s.faces_) {
    std::ostringstream d;
    emit_ring(d, f.outer);
    for (const auto& hole : f.holes) emit_ring(d, hole);
    std::string fill = f.id < static_cast<int>(face_fills.size()) ? face_fills[f.id] : std::string("#cccccc");
    svg << "<path d=\"" << d.str() << "\" fill=\"" << fill
        << "\" fill-rule=\"evenodd\" stroke=\"#333333\" stroke-width=\"" << 1.2 / scale << "\"/>\n";
  }
  for (const auto& e : s.edges) {
    if (e.face_left >= 0 || e.face_right >= 0) continue;
    std::snprintf(buf, sizeof(buf), "<line x1=\"%.12g\" y1=\"%.12g\" x2=\"%.12g\" y2=\"%.12g\"",
                  to_double(s.verts[e.v0].p.x), -to_double(s.verts[e.v0].p.y), to_double(s.verts[e.v1].p.x),
                  -to_double(s.verts[e.v1].p.y));
    svg << buf << " stroke=\"#222222\" stroke-width=\"" << 1.6 / scale << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace reebc
