#include "tropmono/builders.hpp"

#include <algorithm>

namespace tropmono {

namespace {

// integers (m1, m2) with m1*e1 + m2*e2 = t; e1, e2 must be a lattice basis
std::pair<i64, i64> solve2(Pt e1, Pt e2, Pt t) {
  i64 d = cross(e1, e2);
  if (d != 1 && d != -1) throw std::logic_error("balancing system is not unimodular");
  return {cross(t, e2) * d, cross(e1, t) * d};
}

Normalization normalize_towards(const Polygon& poly, Pt kappa, Pt kappa_p) {
  for (bool swap : {false, true}) {
    Normalization N = normalize_at_vertex(poly, kappa, swap);
    if (N.map(kappa_p) == Pt{0, 1}) return N;
  }
  throw InvalidInput(to_string(kappa_p) + " is not next to " + to_string(kappa) + " on the adjoint boundary");
}

HeightFunction mapped_heights(const HeightFunction& h, const AffineMap& A) {
  HeightFunction out;
  for (auto& [p, v] : h.values) out.values[A(p)] = v;
  return out;
}

BuiltGraph pull_back(BuiltGraph b, const AffineMap& to_norm) {
  AffineMap back = to_norm.inverse();
  b.graph = b.graph.mapped(back);
  if (b.hint) b.hint = mapped_heights(*b.hint, back);
  Exempt ex;
  for (Pt p : b.exempt) ex.insert(back(p));
  b.exempt = ex;
  for (auto& [k, s] : b.named) s = back.apply(s);
  for (auto& p : b.chain) p = back(p);
  return b;
}

i64 area2(Pt a, Pt b, Pt c) { return std::abs(orient(a, b, c)); }

std::vector<Pt> triangle_points(Pt a, Pt b, Pt c) {
  i64 x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
  i64 y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
  i64 s = sgn(orient(a, b, c));
  std::vector<Pt> out;
  for (i64 x = x0; x <= x1; ++x)
    for (i64 y = y0; y <= y1; ++y) {
      Pt p{x, y};
      if (s * orient(a, b, p) >= 0 && s * orient(b, c, p) >= 0 && s * orient(c, a, p) >= 0) out.push_back(p);
    }
  return out;
}

// last lattice point of the ray x + k e inside the polygon
Pt ray_end(const Polygon& poly, Pt x, Pt e) {
  Pt p = x;
  while (poly.contains(p + e)) p = p + e;
  return p;
}

struct Sweep {
  WeightedGraph graph;
  std::vector<Pt> chain;
  Pt d1, d2;  // primitive directions of the two edges at v
};

// Normalized frame: kappa = (0,0), kappa' = (0,1). A is where the legs go.
Sweep sweep_normalized(Pt v, bool swapped, i64 m1, i64 m2, Pt top) {
  Pt K{0, 0}, Kp{0, 1};
  Pt A = swapped ? K : Kp, B = swapped ? Kp : K;
  Sweep s;
  s.chain = sweep_chain(v, A, B);
  s.d1 = primitive(A - v);
  s.d2 = primitive(s.chain[1] - v);
  i64 w1 = m1, w2 = m2;
  for (size_t k = 0; k + 1 < s.chain.size(); ++k) {
    Pt c = s.chain[k], nx = s.chain[k + 1];
    if (k > 0) {
      Pt in = primitive(s.chain[k - 1] - c);
      auto [a, b] = solve2(primitive(A - c), primitive(nx - c), in * (-w2));
      w1 = a;
      w2 = b;
    }
    s.graph.add_path(c, A, w1);
    s.graph.add_path(c, nx, w2);
  }
  // closing edges rho1 = [kappa',(-1,0)], rho2 = [kappa,kappa'], rho3 = [kappa,(-1,0)], rho4 = [kappa,(0,-1)];
  // top is the far end of the rho2 chain (kappa' itself for ordinary sweeps)
  Pt ap{-1, 0}, al{0, -1};
  Pt def = balance_defect(s.graph, top);
  auto [a1, a2] = solve2(primitive(ap - top), Pt{0, -1}, -def);
  s.graph.add(Seg(top, ap), a1);
  s.graph.add_path(K, top, a2);
  def = balance_defect(s.graph, K);
  auto [a3, a4] = solve2(primitive(ap - K), primitive(al - K), -def);
  s.graph.add(Seg(K, ap), a3);
  s.graph.add(Seg(K, al), a4);
  return s;
}

}  // namespace

std::vector<Pt> sweep_chain(Pt v, Pt pivot, Pt target) {
  std::vector<Pt> chain{v};
  Pt c = v;
  while (c != target) {
    i64 s = sgn(orient(c, pivot, target));
    if (s == 0) throw InvalidInput("sweep start is collinear with its anchors");
    std::optional<Pt> best;
    for (Pt p : triangle_points(c, pivot, target)) {
      if (p == c || s * orient(c, pivot, p) <= 0) continue;
      if (!best) {
        best = p;
        continue;
      }
      i64 o = s * orient(c, *best, p);
      if (o < 0 || (o == 0 && dot(p - c, p - c) > dot(*best - c, *best - c))) best = p;
    }
    Pt nx = *best;
    if (nx != target && area2(nx, pivot, target) >= area2(c, pivot, target))
      throw std::logic_error("sweep area did not decrease");
    chain.push_back(nx);
    c = nx;
  }
  return chain;
}

BuiltGraph build_corner_graph(const Polygon& poly, Pt kappa) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.empty() || !adj.is_vertex(kappa)) throw InvalidInput(to_string(kappa) + " is not an adjoint vertex");
  std::vector<Pt> dirs;
  for (auto& b : bridges(poly))
    if (b.interior_end == kappa) dirs.push_back(b.boundary_end - kappa);
  std::set<Pt> have(dirs.begin(), dirs.end());
  for (Pt u1 : dirs)
    for (Pt u2 : dirs) {
      if (cross(u1, u2) != 1 || !have.count(u1 + u2)) continue;
      BuiltGraph b;
      b.family = "corner";
      Seg s1(kappa, kappa + u1), s2(kappa, kappa + u2), s(kappa, kappa + u1 + u2);
      b.graph.add(s1, 1);
      b.graph.add(s2, 1);
      b.graph.add(s, -1);
      b.named = {{"sigma", s}, {"sigma1", s1}, {"sigma2", s2}};
      b.weights = {{"sigma", -1}, {"sigma1", 1}, {"sigma2", 1}};
      HeightFunction h;
      h.values = {{kappa, 0}, {kappa + u1 + u2, 0}, {kappa + u1, 1}, {kappa + u2, 1}};
      b.hint = h;
      return b;
    }
  throw InvalidInput("no corner configuration of bridges at " + to_string(kappa));
}

BuiltGraph build_side_graph(const Polygon& poly, Pt kappa, Pt xi) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.dim() != 2) throw InvalidInput("side graph needs a two-dimensional adjoint");
  bool edge = false;
  for (auto& [p, q] : adj.edges())
    if ((p == kappa && q == xi) || (p == xi && q == kappa)) edge = true;
  if (!edge) throw InvalidInput("side graph needs an adjoint edge");
  Pt e = primitive(xi - kappa);
  Pt from = kappa - e, to = xi + e;
  if (!poly.on_boundary(from) || !poly.on_boundary(to)) throw InvalidInput("side chain does not reach the boundary");
  BuiltGraph b;
  b.family = "side";
  b.graph.add_path(from, to, 1);
  b.named = {{"first", Seg(from, kappa)}, {"last", Seg(xi, to)}};
  b.weights = {{"chain", 1}};
  HeightFunction h;
  for (Pt p : poly.lattice_points()) h.values[p] = std::abs(cross(e, p - kappa));
  b.hint = h;
  return b;
}

BuiltGraph build_general_propagation(const Polygon& poly, Pt kappa, bool swap_axes, i64 a, i64 b) {
  if (a < 1 || b < 1) throw InvalidInput("propagation parameters must be positive");
  Normalization N = normalize_at_vertex(poly, kappa, swap_axes);
  Pt X{a, 0}, Y{0, b};
  if (!N.adjoint.on_boundary(X) || !N.adjoint.on_boundary(Y))
    throw InvalidInput("propagation points not on the adjoint boundary");
  i64 g = gcd64(a, b);
  BuiltGraph out;
  out.family = "propagation";
  i64 wh = -(a / g) * (b + 1), wv = -(b / g) * (a + 1);
  out.graph.add_path({-1, 0}, X, wh);
  out.graph.add_path({0, -1}, Y, wv);
  out.graph.add(Seg(Y, {-1, 0}), a / g);
  out.graph.add(Seg(X, {0, -1}), b / g);
  out.graph.add_path(Y, X, 1);
  out.named = {{"beta_b", Seg(Y, {-1, 0})}, {"beta_a", Seg(X, {0, -1})}};
  out.weights = {{"horizontal", wh}, {"vertical", wv}, {"beta_b", a / g}, {"beta_a", b / g}, {"diagonal", 1}};
  // zero along the two axes and the diagonal, raised towards the corners
  HeightFunction h;
  h.values = {{{0, 0}, 0}, {X, 0}, {Y, 0}, {{-1, 0}, 0}, {{0, -1}, 0}, {{-1, -1}, 1}};
  for (Pt p : N.polygon.lattice_points())
    if (!h.values.count(p)) {
      i64 v = 0;
      for (Seg s : {Seg({-1, 0}, X), Seg({0, -1}, Y), Seg(Y, {-1, 0}), Seg(X, {0, -1}), Seg(Y, X)}) {
        Pt d = primitive(s.b - s.a);
        v += std::abs(cross(d, p - s.a));
      }
      h.values[p] = v;
    }
  out.hint = h;
  return pull_back(out, N.map);
}

BuiltGraph build_propagation_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 a) {
  auto b = build_general_propagation(poly, kappa, swap_axes, a, 1);
  b.family = "propagation";
  b.named["sigma"] = b.named["beta_a"];
  return b;
}

BuiltGraph build_gcd1_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 m, i64 l) {
  auto b = build_general_propagation(poly, kappa, swap_axes, m, l);
  b.family = "gcd1";
  return b;
}

BuiltGraph build_gcd2_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 m, int which) {
  auto b = build_general_propagation(poly, kappa, swap_axes, m, which == 0 ? 1 : m);
  b.family = which == 0 ? "gcd2" : "gcd2prime";
  return b;
}

BuiltGraph build_gcdedges_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 l1) {
  auto b = build_general_propagation(poly, kappa, swap_axes, l1, 1);
  b.family = "gcdedges";
  b.named["sigma2"] = b.named["beta_b"];
  return b;
}

BuiltGraph build_even_bridge_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 l) {
  auto b = build_general_propagation(poly, kappa, swap_axes, l, 1);
  b.family = "even_bridge";
  b.named["sigma"] = b.named["beta_a"];
  return b;
}

std::vector<Pt> adjoint_neighbours(const Polygon& adj, Pt p) {
  std::set<Pt> out;
  for (auto& [a, b] : adj.edges()) {
    Seg e(a, b);
    if (!e.contains(p)) continue;
    Pt d = primitive(b - a);
    for (Pt q : {p + d, p - d})
      if (e.contains(q)) out.insert(q);
  }
  return {out.begin(), out.end()};
}

BuiltGraph build_ray_sweep(const Polygon& poly, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2, bool swapped) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.dim() != 2 || !adj.in_interior(v)) throw InvalidInput("ray-sweep needs v in the interior of the adjoint");
  Normalization N = normalize_towards(poly, kappa, kappa_p);
  Pt vn = N.map(v);
  Sweep s = sweep_normalized(vn, swapped, m1, m2, {0, 1});
  BuiltGraph b;
  b.family = swapped ? "ray_sweep_swapped" : "ray_sweep";
  b.graph = s.graph;
  b.exempt = {vn};
  b.chain = s.chain;
  b.named = {{"sigma1", Seg(vn, vn + s.d1)},
             {"sigma2", Seg(vn, vn + s.d2)},
             {"rho1", Seg({0, 1}, {-1, 0})},
             {"rho2", Seg({0, 0}, {0, 1})},
             {"rho3", Seg({0, 0}, {-1, 0})},
             {"rho4", Seg({0, 0}, {0, -1})}};
  for (auto& [k, sg] : b.named)
    if (k.rfind("rho", 0) == 0) b.weights[k] = s.graph.weight(sg);
  Pt A = swapped ? Pt{0, 0} : Pt{0, 1};
  HeightFunction h;
  i64 T = 2;
  for (Pt p : s.chain) T = std::max({T, std::abs(p.x) + 2, std::abs(p.y) + 2});
  for (Pt p : s.chain) h.values[p] = 0;
  h.values[A] = 1;
  h.values[{-1, 0}] = T;
  h.values[{0, -1}] = T;
  b.hint = h;
  return pull_back(b, N.map);
}

std::optional<BuiltGraph> build_diamond_graph(const Polygon& poly, Pt v, Pt kappa, Pt kappa_p, bool swapped,
                                              bool first_leg) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.dim() != 2 || !adj.in_interior(v) || !adj.is_vertex(kappa)) return std::nullopt;
  // pick xi, xi' per the two configurations
  auto other_vertex = [&](Pt from, Pt avoid_dir_point) -> std::optional<Pt> {
    const auto& vs = adj.vertices();
    size_t n = vs.size();
    for (size_t i = 0; i < n; ++i)
      if (vs[i] == from)
        for (Pt c : {vs[(i + 1) % n], vs[(i + n - 1) % n]})
          if (!Seg(from, c).contains(avoid_dir_point)) return c;
    return std::nullopt;
  };
  std::optional<Pt> xi;
  Pt base = kappa;
  if (!swapped) {
    xi = other_vertex(kappa, kappa_p);
  } else if (!adj.is_vertex(kappa_p)) {
    const auto& vs = adj.vertices();
    for (size_t i = 0; i < vs.size(); ++i) {
      Pt c = vs[(i + 1) % vs.size()];
      if (vs[i] == kappa && Seg(kappa, c).contains(kappa_p)) xi = c;
      if (c == kappa && Seg(kappa, vs[i]).contains(kappa_p)) xi = vs[i];
    }
  } else {
    xi = other_vertex(kappa_p, kappa);
    base = kappa_p;
  }
  if (!xi) return std::nullopt;
  std::optional<Pt> xip;
  for (Pt q : adjoint_neighbours(adj, *xi))
    if (!Seg(*xi, base).contains(q)) xip = q;
  if (!xip) return std::nullopt;

  BuiltGraph first = build_ray_sweep(poly, kappa, kappa_p, v, first_leg ? 0 : 1, first_leg ? 1 : 0, swapped);
  BuiltGraph unit1 = build_ray_sweep(poly, *xi, *xip, v, 1, 0, false);
  BuiltGraph unit2 = build_ray_sweep(poly, *xi, *xip, v, 0, 1, false);
  Seg target = first.named.at(first_leg ? "sigma2" : "sigma1");
  Pt e1 = primitive(unit1.named.at("sigma1").other(v) - v), e2 = primitive(unit1.named.at("sigma2").other(v) - v);
  auto [m1, m2] = solve2(e1, e2, -(target.other(v) - v));
  BuiltGraph b;
  b.family = "diamond";
  b.graph = first.graph;
  b.graph += m1 * unit1.graph;
  b.graph += m2 * unit2.graph;
  b.named = first.named;
  b.named["target"] = target;
  b.named["eta1"] = unit1.named.at("sigma1");
  b.named["eta2"] = unit1.named.at("sigma2");
  b.weights = {{"m1", m1}, {"m2", m2}};
  b.chain = first.chain;
  HeightFunction h;
  for (auto* part : {&first, &unit1}) {
    for (Pt p : part->chain) h.values[p] = 0;
  }
  h.values[kappa_p] = swapped ? 0 : 1;
  h.values[kappa] = swapped ? 1 : 0;
  h.values[*xi] = 0;
  h.values[*xip] = 1;
  b.hint = h;
  return b;
}

namespace {

struct EndPart {
  WeightedGraph graph;
  std::vector<Pt> zeros, ones;
  std::string how;
};

std::vector<EndPart> end_parts(const Polygon& poly, const Polygon& adj, Pt x, Pt other, size_t cap) {
  std::vector<EndPart> out;
  if (poly.on_boundary(x)) {
    out.push_back({});
    out.back().how = "boundary";
    return out;
  }
  Pt dout = primitive(other - x);
  if (!adj.in_interior(x)) {
    std::vector<Pt> arms;
    for (auto& [a, b] : adj.edges()) {
      Seg e(a, b);
      if (!e.contains(x)) continue;
      for (Pt xi : {a, b})
        if (xi != x) arms.push_back(primitive(xi - x));
    }
    std::vector<Pt> brs;
    for (auto& br : bridges(poly))
      if (br.interior_end == x) brs.push_back(br.boundary_end - x);
    for (Pt e : arms) {
      if (e == dout) continue;
      Pt end = ray_end(poly, x, e);
      if (!poly.on_boundary(end)) continue;
      for (Pt u : brs) {
        i64 d = cross(e, u);
        if (d != 1 && d != -1) continue;
        auto [m1, m2] = solve2(e, u, -dout);
        EndPart p;
        p.graph.add_path(x, end, m1);
        p.graph.add(Seg(x, x + u), m2);
        p.how = "arm" + to_string(e) + "+bridge" + to_string(u);
        out.push_back(p);
        if (out.size() >= cap) return out;
      }
    }
    return out;
  }
  for (Pt kappa : adj.vertices())
    for (Pt kp : adjoint_neighbours(adj, kappa))
      for (bool swapped : {true, false}) {
        BuiltGraph u1 = build_ray_sweep(poly, kappa, kp, x, 1, 0, swapped);
        BuiltGraph u2 = build_ray_sweep(poly, kappa, kp, x, 0, 1, swapped);
        Pt e1 = u1.named.at("sigma1").other(x) - x, e2 = u1.named.at("sigma2").other(x) - x;
        auto [m1, m2] = solve2(e1, e2, -dout);
        EndPart p;
        p.graph = m1 * u1.graph;
        p.graph += m2 * u2.graph;
        for (Pt c : u1.chain) p.zeros.push_back(c);
        (swapped ? p.zeros : p.ones).push_back(kp);
        (swapped ? p.ones : p.zeros).push_back(kappa);
        p.how = std::string(swapped ? "sweep'" : "sweep") + to_string(kappa) + to_string(kp);
        out.push_back(p);
        if (out.size() >= cap) return out;
      }
  return out;
}

}  // namespace

std::vector<BuiltGraph> interior_graph_candidates(const Polygon& poly, const Seg& sigma, size_t limit) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.dim() != 2) throw InvalidInput("interior graphs need a two-dimensional adjoint");
  if (!sigma.is_primitive() || !poly.contains(sigma.a) || !poly.contains(sigma.b))
    throw InvalidInput("segment is not a primitive segment of the polygon");
  if (poly.on_boundary(sigma.a) && poly.on_boundary(sigma.b)) throw InvalidInput("both ends on the boundary");
  auto pa = end_parts(poly, adj, sigma.a, sigma.b, 64), pb = end_parts(poly, adj, sigma.b, sigma.a, 64);
  std::vector<BuiltGraph> out;
  for (auto& x : pa)
    for (auto& y : pb) {
      BuiltGraph b;
      b.family = "interior";
      b.graph = x.graph;
      b.graph += y.graph;
      if (b.graph.weight(sigma) != 0) continue;
      b.graph.add(sigma, 1);
      if (has_conflicts(b.graph) || !check_balancing(b.graph, poly).empty()) continue;
      b.named = {{"sigma", sigma}};
      b.weights = {{"sigma", 1}};
      HeightFunction h;
      for (auto* part : {&x, &y}) {
        for (Pt p : part->zeros) h.values[p] = 0;
        for (Pt p : part->ones) h.values.emplace(p, 1);
      }
      if (!h.values.empty()) {
        h.values[sigma.a] = 0;
        h.values[sigma.b] = 0;
        b.hint = h;
      }
      b.weights["variant_a"] = static_cast<i64>(&x - &pa[0]);
      b.weights["variant_b"] = static_cast<i64>(&y - &pb[0]);
      out.push_back(std::move(b));
      if (out.size() >= limit) return out;
    }
  return out;
}

BuiltGraph build_interior_graph(const Polygon& poly, const Seg& sigma) {
  auto c = interior_graph_candidates(poly, sigma, 1);
  if (c.empty()) throw CertificationFailure("no conflict-free interior graph for " + to_string(sigma));
  return c.front();
}

Snake build_snake(const Polygon& poly) {
  Polygon adj = adjoint_polygon(poly);
  if (adj.empty()) throw InvalidInput("genus zero");
  Snake s;
  if (adj.dim() == 2) {
    s.kappa = adj.vertices()[0];
    Normalization N = normalize_at_vertex(poly, s.kappa, false);
    s.to_normalized = N.map;
    std::vector<Pt> rest;
    for (Pt p : N.adjoint.lattice_points())
      if (p != Pt{0, 0} && p != Pt{1, 0}) rest.push_back(p);
    std::sort(rest.begin(), rest.end(), colex_less);
    std::vector<Pt> chain{{-1, 0}, {0, 0}, {1, 0}};
    chain.insert(chain.end(), rest.begin(), rest.end());
    AffineMap back = N.map.inverse();
    for (Pt& p : chain) p = back(p);
    s.chain = chain;
    s.bridge = back.apply(Seg({0, -1}, {1, 0}));
  } else {
    // a point or a segment: walk along it starting next to the boundary
    std::vector<Pt> pts = adj.lattice_points();
    std::sort(pts.begin(), pts.end());
    s.kappa = pts.front();
    Pt start;
    bool found = false;
    Pt dir = pts.size() > 1 ? primitive(pts[1] - pts[0]) : Pt{1, 0};
    if (poly.on_boundary(s.kappa - dir) && adj.dim() == 1) {
      start = s.kappa - dir;
      found = true;
    }
    std::vector<Bridge> brs;
    for (auto& b : bridges(poly))
      if (b.interior_end == s.kappa) brs.push_back(b);
    if (!found) {
      if (brs.empty()) throw InvalidInput("no bridge at " + to_string(s.kappa));
      start = brs.front().boundary_end;
    }
    s.chain.push_back(start);
    for (Pt p : pts) s.chain.push_back(p);
    if (pts.size() >= 2) {
      std::optional<Seg> br;
      for (auto& b : bridges(poly))
        if (b.interior_end == pts[1] && !Seg(pts[0], pts[1]).contains(b.boundary_end)) {
          br = b.segment;
          break;
        }
      if (!br) throw InvalidInput("no bridge at " + to_string(pts[1]));
      s.bridge = *br;
    } else {
      for (auto& b : brs)
        if (b.boundary_end != start) {
          s.bridge = b.segment;
          break;
        }
      if (s.bridge == Seg()) s.bridge = brs.front().segment;
    }
  }
  for (size_t i = 1; i < s.chain.size(); ++i) s.segments.push_back(Seg(s.chain[i - 1], s.chain[i]));
  return s;
}

bool check_snake(const Polygon& poly, const Snake& s, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Polygon adj = adjoint_polygon(poly);
  i64 g = static_cast<i64>(poly.interior_points().size());
  if (static_cast<i64>(s.segments.size()) != g) return fail("snake length differs from the genus");
  if (!poly.on_boundary(s.chain[0])) return fail("v0 not on the boundary");
  if (!adj.is_vertex(s.chain[1]) && adj.dim() == 2) return fail("v1 not an adjoint vertex");
  std::set<Pt> seen(s.chain.begin() + 1, s.chain.end());
  if (static_cast<i64>(seen.size()) != g) return fail("chain points not distinct");
  for (auto& sg : s.segments)
    if (!sg.is_primitive()) return fail("snake segment not primitive");
  for (size_t i = 0; i < s.segments.size(); ++i)
    for (size_t j = i + 1; j < s.segments.size(); ++j)
      if (segments_conflict(s.segments[i], s.segments[j])) return fail("snake segments cross");
  Pt e;
  if (!is_bridge(poly, adj, s.bridge, &e)) return fail("snake tail is not a bridge");
  Pt want = s.chain.size() > 2 ? s.chain[2] : s.chain[1];
  if (e != want) return fail("snake bridge ends at the wrong point");
  return true;
}

BuiltGraph build_divisible_graph(const Polygon& poly, i64 d, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2) {
  if (d < 1) throw InvalidInput("divisor must be positive");
  Polygon adj = adjoint_polygon(poly);
  Normalization N = normalize_towards(poly, kappa, kappa_p);
  Pt vn = N.map(v);
  if (vn.x % d != 0 || vn.y % d != 0) throw InvalidInput("point is not in the divisible lattice");
  if (!N.adjoint.contains(vn) || vn == Pt{0, 0} || vn.x == 0) throw InvalidInput("point not usable for a sweep");
  Pt u{vn.x / d, vn.y / d};
  Pt top{0, d};
  if (!N.adjoint.on_boundary(top)) throw InvalidInput("scaled anchor outside the adjoint");
  // chain in the shrunk frame, then scaled back by d
  std::vector<Pt> chain = sweep_chain(u, {0, 1}, {0, 0});
  BuiltGraph b;
  b.family = "divisible";
  i64 w1 = m1, w2 = m2;
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    Pt c = chain[k], nx = chain[k + 1];
    if (k > 0) {
      auto [a, bb] = solve2(primitive(Pt{0, 1} - c), primitive(nx - c), primitive(chain[k - 1] - c) * (-w2));
      w1 = a;
      w2 = bb;
    }
    b.graph.add_path(c * d, top, w1);
    b.graph.add_path(c * d, nx * d, w2);
  }
  Pt ap{-1, 0}, al{0, -1};
  Pt def = balance_defect(b.graph, top);
  auto [a1, a2] = solve2(primitive(ap - top), Pt{0, -1}, -def);
  b.graph.add(Seg(top, ap), a1);
  b.graph.add_path({0, 0}, top, a2);
  def = balance_defect(b.graph, {0, 0});
  auto [a3, a4] = solve2(ap, al, -def);
  b.graph.add(Seg({0, 0}, ap), a3);
  b.graph.add(Seg({0, 0}, al), a4);
  b.exempt = {vn};
  for (Pt c : chain) b.chain.push_back(c * d);
  b.named = {{"sigma1", Seg(vn, vn + primitive(top - vn))}, {"sigma2", Seg(vn, vn + primitive(b.chain[1] - vn))}};
  b.weights = {{"rho1", a1}, {"rho2", a2}, {"rho3", a3}, {"rho4", a4}};
  HeightFunction h;
  i64 T = 2;
  for (Pt p : b.chain) T = std::max({T, std::abs(p.x) + 2, std::abs(p.y) + 2});
  for (Pt p : b.chain) h.values[p] = 0;
  h.values[top] = 1;
  h.values[ap] = T;
  h.values[al] = T;
  b.hint = h;
  (void)adj;
  return pull_back(b, N.map);
}

}  // namespace tropmono
