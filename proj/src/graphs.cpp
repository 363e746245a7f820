#include "tropmono/graphs.hpp"

#include <algorithm>

namespace tropmono {

void WeightedGraph::add(const Seg& s, i64 w) {
  if (!s.is_primitive()) throw InvalidInput("graph edge " + to_string(s) + " is not primitive");
  if (w == 0) return;
  i64& m = edges[s];
  m += w;
  if (m == 0) edges.erase(s);
}

void WeightedGraph::add_path(Pt p, Pt q, i64 w) {
  for (auto& s : primitive_pieces(p, q)) add(s, w);
}

i64 WeightedGraph::weight(const Seg& s) const {
  auto it = edges.find(s);
  return it == edges.end() ? 0 : it->second;
}

std::set<Pt> WeightedGraph::vertices() const {
  std::set<Pt> out;
  for (auto& [s, m] : edges) {
    out.insert(s.a);
    out.insert(s.b);
  }
  return out;
}

std::vector<Seg> WeightedGraph::incident(Pt v) const {
  std::vector<Seg> out;
  for (auto& [s, m] : edges)
    if (s.has_end(v)) out.push_back(s);
  return out;
}

WeightedGraph WeightedGraph::mapped(const AffineMap& A) const {
  WeightedGraph out;
  for (auto& [s, m] : edges) out.add(A.apply(s), m);
  return out;
}

WeightedGraph& WeightedGraph::operator+=(const WeightedGraph& o) {
  for (auto& [s, m] : o.edges) add(s, m);
  return *this;
}

WeightedGraph operator*(i64 k, const WeightedGraph& g) {
  WeightedGraph out;
  for (auto& [s, m] : g.edges) out.add(s, k * m);
  return out;
}

Pt balance_defect(const WeightedGraph& g, Pt v) {
  Pt sum{0, 0};
  for (auto& [s, m] : g.edges)
    if (s.has_end(v)) sum = sum + (s.other(v) - v) * m;
  return sum;
}

std::set<Pt> check_balancing(const WeightedGraph& g, const Polygon& poly) {
  std::set<Pt> bad;
  for (Pt v : g.vertices())
    if (poly.in_interior(v) && balance_defect(g, v) != Pt{0, 0}) bad.insert(v);
  return bad;
}

bool has_conflicts(const WeightedGraph& g) {
  std::vector<Seg> segs;
  for (auto& [s, m] : g.edges) segs.push_back(s);
  for (size_t i = 0; i < segs.size(); ++i)
    for (size_t j = i + 1; j < segs.size(); ++j)
      if (segments_conflict(segs[i], segs[j])) return true;
  return false;
}

// w on the boundary of the 2-dimensional convex polygon adj, u outside adj:
// [u,w] meets the interior iff u - w points strictly inward at every edge through w
static bool enters_interior(const Polygon& adj, Pt w, Pt u) {
  if (adj.dim() < 2) return false;
  for (auto& [p, q] : adj.edges()) {
    if (orient(p, q, w) != 0) continue;
    if (cross(q - p, u - w) <= 0) return false;
  }
  return true;
}

bool is_bridge(const Polygon& poly, const Polygon& adj, const Seg& s, Pt* interior_end) {
  if (!s.is_primitive() || adj.empty()) return false;
  for (int flip = 0; flip < 2; ++flip) {
    Pt u = flip ? s.b : s.a, w = flip ? s.a : s.b;
    if (!poly.on_boundary(u)) continue;
    if (!adj.contains(w)) continue;
    if (adj.dim() == 2 && adj.in_interior(w)) continue;
    if (enters_interior(adj, w, u)) continue;
    if (interior_end) *interior_end = w;
    return true;
  }
  return false;
}

std::vector<Bridge> bridges(const Polygon& poly) {
  Polygon adj = adjoint_polygon(poly);
  std::vector<Bridge> out;
  if (adj.empty()) return out;
  auto bnd = poly.boundary_points();
  for (Pt w : adj.lattice_points()) {
    if (adj.dim() == 2 && adj.in_interior(w)) continue;
    for (Pt u : bnd) {
      if (lattice_length(u, w) != 1) continue;
      Seg s(u, w);
      Pt e;
      if (is_bridge(poly, adj, s, &e)) out.push_back({s, e, s.other(e)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Loop& l) {
  return l.kind == Loop::ACycle ? "delta_v" + to_string(l.v) : "delta_sigma" + to_string(l.seg);
}

std::string to_string(const LoopKey& k) {
  switch (k.kind) {
    case 0: return "acycle" + to_string(k.v);
    case 1: return "bridge@" + to_string(k.v);
    default: return "segment" + to_string(k.seg);
  }
}

IsotopyClassifier::IsotopyClassifier(const Polygon& poly) : poly_(poly), adj_(adjoint_polygon(poly)) {}

LoopKey IsotopyClassifier::key(const Loop& l) const {
  if (l.kind == Loop::ACycle) return {0, l.v, Seg()};
  Pt e;
  if (is_bridge(poly_, adj_, l.seg, &e)) return {1, e, Seg()};
  return {2, Pt(), l.seg};
}

}  // namespace tropmono
