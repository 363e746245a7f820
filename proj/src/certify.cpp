#include "tropmono/certify.hpp"

#include <algorithm>
#include <map>

namespace tropmono {

namespace {

struct Line {
  Pt d;  // primitive, canonical sign
  i64 c;
  auto operator<=>(const Line&) const = default;
  i64 eval(Pt p) const { return cross(d, p) - c; }
};

Line line_of(const Seg& s) {
  Pt d = primitive(s.b - s.a);
  if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -d;
  return {d, cross(d, s.a)};
}

bool graph_supported(const Subdivision& S, const WeightedGraph& g) {
  auto E = S.edges();
  for (auto& [s, m] : g.edges)
    if (!E.count(s)) return false;
  return true;
}

std::optional<Subdivision> refine_from(const Polygon& poly, const HeightFunction& h) {
  std::vector<Pt> pts;
  for (auto& [p, v] : h.values) pts.push_back(p);
  Polygon sub = Polygon::hull(pts);
  if (sub.dim() != 2 || !poly.contains_polygon(sub)) return std::nullopt;
  Subdivision S = subdivision_from_heights(sub, h);
  if (!(sub == poly)) S = extend_subdivision(poly, S);
  return unimodular_refinement(S);
}

__int128 incircle(Pt a, Pt b, Pt c, Pt d) {
  __int128 ax = a.x - d.x, ay = a.y - d.y, bx = b.x - d.x, by = b.y - d.y, cx = c.x - d.x, cy = c.y - d.y;
  __int128 a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

}  // namespace

HeightFunction crease_heights(const WeightedGraph& g, const Polygon& poly) {
  std::set<Line> lines;
  for (auto& [s, m] : g.edges) lines.insert(line_of(s));
  HeightFunction h;
  for (Pt p : poly.lattice_points()) {
    i64 v = 0;
    for (auto& L : lines) v += std::abs(L.eval(p));
    h.values[p] = v;
  }
  return h;
}

std::optional<std::vector<Cell>> constrained_triangulation(const Polygon& poly, const std::set<Seg>& required) {
  std::vector<Seg> req(required.begin(), required.end());
  for (size_t i = 0; i < req.size(); ++i) {
    if (!req[i].is_primitive() || !poly.contains(req[i].a) || !poly.contains(req[i].b)) return std::nullopt;
    for (size_t j = i + 1; j < req.size(); ++j)
      if (segments_conflict(req[i], req[j])) return std::nullopt;
  }
  auto pts = poly.lattice_points();
  std::vector<std::pair<i64, Seg>> cand;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (lattice_length(pts[i], pts[j]) == 1) {
        Pt d = pts[j] - pts[i];
        cand.push_back({dot(d, d), Seg(pts[i], pts[j])});
      }
  std::sort(cand.begin(), cand.end());
  std::set<Seg> E(required.begin(), required.end());
  std::vector<Seg> chosen(E.begin(), E.end());
  for (auto& [len, s] : cand) {
    if (E.count(s)) continue;
    bool ok = true;
    for (auto& t : chosen)
      if (segments_conflict(s, t)) {
        ok = false;
        break;
      }
    if (ok) {
      E.insert(s);
      chosen.push_back(s);
    }
  }
  std::map<Pt, std::set<Pt>> adj;
  for (auto& s : E) {
    adj[s.a].insert(s.b);
    adj[s.b].insert(s.a);
  }
  auto apex = [&](Pt a, Pt b, int side) -> std::optional<Pt> {
    for (Pt c : adj[a])
      if (adj[b].count(c) && orient(a, b, c) == side) return c;
    return std::nullopt;
  };
  // Lawson flips towards a constrained Delaunay triangulation
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = E.begin(); it != E.end(); ++it) {
      Seg s = *it;
      if (required.count(s) || segment_on_boundary(poly, s.a, s.b)) continue;
      auto c = apex(s.a, s.b, 1), d = apex(s.a, s.b, -1);
      if (!c || !d) continue;
      if (incircle(s.a, s.b, *c, *d) <= 0) continue;
      E.erase(it);
      adj[s.a].erase(s.b);
      adj[s.b].erase(s.a);
      E.insert(Seg(*c, *d));
      adj[*c].insert(*d);
      adj[*d].insert(*c);
      changed = true;
      break;
    }
  }
  std::set<Cell> cells;
  for (auto& s : E)
    for (int side : {1, -1})
      if (auto c = apex(s.a, s.b, side)) cells.insert(canonical_cell({s.a, s.b, *c}));
  i64 area2 = 0;
  for (auto& c : cells) area2 += Polygon::hull(c).twice_area();
  if (area2 != poly.twice_area()) return std::nullopt;
  return std::vector<Cell>(cells.begin(), cells.end());
}

bool verify_certificate(const AdmissibilityCertificate& c, const Polygon& poly, const Exempt& exempt,
                        std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (auto& [s, m] : c.graph.edges) {
    if (m == 0 || !s.is_primitive()) return fail("bad graph edge " + to_string(s));
    if (!poly.contains(s.a) || !poly.contains(s.b)) return fail("graph edge outside the polygon");
  }
  for (Pt v : check_balancing(c.graph, poly))
    if (!exempt.count(v)) return fail("unbalanced at " + to_string(v));
  Subdivision S;
  try {
    S = subdivision_from_heights(poly, c.witness);
  } catch (const std::exception& e) {
    return fail(std::string("witness replay: ") + e.what());
  }
  if (S.cells != c.subdivision.cells) return fail("witness does not reproduce the subdivision");
  if (!is_unimodular(S)) return fail("subdivision not unimodular");
  if (!graph_supported(S, c.graph)) return fail("graph not contained in the subdivision");
  return true;
}

std::optional<AdmissibilityCertificate> certify_admissible(const WeightedGraph& g, const Polygon& poly,
                                                           const std::optional<HeightFunction>& hint,
                                                           const Exempt& exempt) {
  for (Pt v : check_balancing(g, poly))
    if (!exempt.count(v)) throw InvalidInput("graph not balanced at " + to_string(v));
  if (has_conflicts(g)) return std::nullopt;

  auto accept = [&](const Subdivision& S, const char* method) -> std::optional<AdmissibilityCertificate> {
    if (!is_unimodular(S) || !graph_supported(S, g)) return std::nullopt;
    AdmissibilityCertificate c{g, S.witness, S, method};
    if (!verify_certificate(c, poly, exempt)) return std::nullopt;
    return c;
  };

  if (hint)
    if (auto S = refine_from(poly, *hint))
      if (auto c = accept(*S, "hint")) return c;

  {
    std::set<Line> lines;
    for (auto& [s, m] : g.edges) lines.insert(line_of(s));
    bool clean = true;
    for (auto& L : lines) {
      for (auto& [s, m] : g.edges) {
        i64 a = L.eval(s.a), b = L.eval(s.b);
        if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
          clean = false;
          break;
        }
      }
      if (!clean) break;
    }
    if (clean)
      if (auto S = refine_from(poly, crease_heights(g, poly)))
        if (auto c = accept(*S, "crease")) return c;
  }

  std::set<Seg> req;
  for (auto& [s, m] : g.edges) req.insert(s);
  if (auto cells = constrained_triangulation(poly, req))
    if (auto h = regularity_heights_for(poly, *cells)) {
      Subdivision S = subdivision_from_heights(poly, *h);
      if (auto c = accept(S, "triangulation")) return c;
    }
  return std::nullopt;
}

}  // namespace tropmono
