#include "tropmono/pipelines.hpp"

#include <algorithm>
#include <numeric>

namespace tropmono {

namespace {

int certified_rea(Engine& E, const BuiltGraph& b) {
  auto c = certify_admissible(b.graph, E.polygon(), b.hint, b.exempt);
  if (!c) throw CertificationFailure("rea: " + b.family + " graph could not be certified admissible");
  return E.axiom_rea(*c);
}

// Combines a fresh single with the previous best one for the same class when
// neither exponent divides the other.
void combine(Engine& E, std::optional<int> before, Flavor f) {
  if (!before) return;
  const Fact& old = E.fact(*before);
  auto now = E.best(old.loop, f);
  if (!now || *now == *before) return;
  i64 a = old.exponent, b = E.fact(*now).exponent;
  if (b % a == 0 || a % b == 0) return;
  int x = *before, y = *now;
  if (E.fact(x).flavor != f) x = E.project(x);
  if (E.fact(y).flavor != f) y = E.project(y);
  if (!(E.fact(y).loop == E.fact(x).loop)) y = E.bridge_transfer(y, E.fact(x).loop.seg);
  E.gcd_combine(x, y);
}

std::vector<Bridge> bridges_at(const Polygon& poly, Pt v) {
  std::vector<Bridge> out;
  for (auto& b : bridges(poly))
    if (b.interior_end == v) out.push_back(b);
  return out;
}

i64 axis_length(const Polygon& adj_normalized, Pt dir) {
  i64 l = 0;
  while (adj_normalized.contains(dir * (l + 1))) ++l;
  return l;
}

// corner and side facts that the other pipelines absorb
void ensure_adjoint_boundary(Engine& E);

}  // namespace

int pipeline_corner(Engine& E, Pt kappa) {
  auto b = build_corner_graph(E.polygon(), kappa);
  int c = E.reduce(certified_rea(E, b), false);
  auto f = E.best(Loop::segment(b.named.at("sigma")), Flavor::Geometric);
  if (!f || E.fact(*f).exponent != 1)
    throw CertificationFailure("collapse: corner graph at " + to_string(kappa) + " did not reduce to a single twist");
  (void)c;
  return *f;
}

std::vector<int> pipeline_side(Engine& E, Pt kappa, Pt xi) {
  for (Pt p : {kappa, xi})
    if (E.exponent(Loop::segment(bridges_at(E.polygon(), p).at(0).segment), Flavor::Geometric) != 1)
      pipeline_corner(E, p);
  auto b = build_side_graph(E.polygon(), kappa, xi);
  E.reduce(certified_rea(E, b), false);
  std::vector<int> out;
  for (auto& s : primitive_pieces(kappa, xi)) {
    auto f = E.best(Loop::segment(s), Flavor::Geometric);
    if (!f || E.fact(*f).exponent != 1) throw CertificationFailure("chase: side chain stuck before " + to_string(s));
    out.push_back(*f);
  }
  return out;
}

namespace {

void ensure_adjoint_boundary(Engine& E) {
  const Polygon& adj = E.classifier().adjoint();
  if (adj.empty()) return;
  for (Pt k : adj.vertices())
    if (E.exponent(Loop::segment(bridges_at(E.polygon(), k).at(0).segment), Flavor::Geometric) != 1)
      pipeline_corner(E, k);
  if (adj.dim() != 2) return;
  for (auto& [p, q] : adj.edges()) {
    bool known = true;
    for (auto& s : primitive_pieces(p, q))
      if (E.exponent(Loop::segment(s), Flavor::Geometric) != 1) known = false;
    if (!known) pipeline_side(E, p, q);
  }
}

}  // namespace

std::vector<int> pipeline_propagate(Engine& E, Pt kappa, bool swap_axes, i64 a, i64 b) {
  ensure_adjoint_boundary(E);
  auto g = build_general_propagation(E.polygon(), kappa, swap_axes, a, b);
  std::vector<Loop> targets{Loop::segment(g.named.at("beta_a")), Loop::segment(g.named.at("beta_b"))};
  std::vector<std::optional<int>> before;
  for (auto& t : targets) before.push_back(E.best(t, Flavor::Geometric));
  E.reduce(certified_rea(E, g), false);
  std::vector<int> out;
  for (size_t i = 0; i < targets.size(); ++i) {
    combine(E, before[i], Flavor::Geometric);
    if (auto f = E.best(targets[i], Flavor::Geometric)) out.push_back(*f);
  }
  return out;
}

int pipeline_gcdedges(Engine& E, Pt kappa, bool swap_axes, i64 b) {
  Normalization N = normalize_at_vertex(E.polygon(), kappa, swap_axes);
  i64 l1 = axis_length(N.adjoint, {1, 0});
  ensure_adjoint_boundary(E);
  auto g = build_general_propagation(E.polygon(), kappa, swap_axes, l1, b);
  Loop target = Loop::segment(g.named.at("beta_b"));
  auto before = E.best(target, Flavor::Geometric);
  E.reduce(certified_rea(E, g), false);
  combine(E, before, Flavor::Geometric);
  auto f = E.best(target, Flavor::Geometric);
  if (!f) throw CertificationFailure("collapse: gcdedges graph did not isolate the bridge");
  return *f;
}

void bridge_closure(Engine& E) {
  const Polygon& poly = E.polygon();
  Polygon adj = adjoint_polygon(poly);
  if (adj.dim() != 2) return;
  auto improved = [&](const std::vector<std::pair<Loop, i64>>& was) {
    for (auto& [l, e] : was) {
      i64 now = E.exponent(l, Flavor::Geometric);
      if (now != 0 && (e == 0 || now < e)) return true;
    }
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (Pt kappa : adj.vertices())
      for (bool sw : {false, true}) {
        Normalization N = normalize_at_vertex(poly, kappa, sw);
        i64 l1 = axis_length(N.adjoint, {1, 0}), l2 = axis_length(N.adjoint, {0, 1});
        for (i64 a = 1; a <= l1; ++a)
          for (i64 b = 1; b <= l2; ++b) {
            BuiltGraph g;
            try {
              g = build_general_propagation(poly, kappa, sw, a, b);
            } catch (const InvalidInput&) {
              continue;
            }
            std::vector<std::pair<Loop, i64>> was;
            for (const char* k : {"beta_a", "beta_b"}) {
              Loop l = Loop::segment(g.named.at(k));
              was.push_back({l, E.exponent(l, Flavor::Geometric)});
            }
            if (std::all_of(was.begin(), was.end(), [](auto& w) { return w.second == 1; })) continue;
            auto m = E.mark();
            try {
              pipeline_propagate(E, kappa, sw, a, b);
            } catch (const CertificationFailure&) {
              E.rollback(m);
              continue;
            }
            if (improved(was))
              changed = true;
            else
              E.rollback(m);
          }
      }
  }
}

void homological_bridge_closure(Engine& E) {
  const Polygon& poly = E.polygon();
  auto all = bridges(poly);
  const SurfaceModel& S = E.surface();
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& target : all) {
      Loop tl = Loop::segment(target.segment);
      i64 e = E.exponent(tl, Flavor::Homological);
      if (e == 1) continue;
      Pt w = target.interior_end;
      bool done = false;
      for (Pt v1 : poly.interior_points()) {
        if (done) break;
        if (v1 == w || lattice_length(v1, w) != 1) continue;
        Seg s2(v1, w);
        auto f2 = E.obtain(Loop::segment(s2), 1, true);
        if (!f2) continue;
        for (auto& b1 : bridges_at(poly, v1)) {
          auto f1 = E.obtain(Loop::segment(b1.segment), 1, true);
          if (!f1) continue;
          if (!chain_rule_identity(S, b1.segment, v1, s2, target.segment)) continue;
          auto hom = [&](int id) { return E.fact(id).flavor == Flavor::Homological ? id : E.project(id); };
          int p1 = hom(*f1), pv = hom(*E.obtain(Loop::acycle(v1), 1, false)), p2 = hom(*f2);
          auto before = E.best(tl, Flavor::Homological);
          E.chain_rule_square(p1, pv, p2, target.segment);
          combine(E, before, Flavor::Homological);
          done = true;
          break;
        }
      }
      if (E.exponent(tl, Flavor::Homological) != e) changed = true;
    }
  }
}

int pipeline_interior(Engine& E, const Seg& sigma, bool allow_homological) {
  const Polygon& poly = E.polygon();
  if (!sigma.is_primitive() || !poly.contains(sigma.a) || !poly.contains(sigma.b))
    throw InvalidInput(to_string(sigma) + " is not a primitive segment of the polygon");
  if (poly.on_boundary(sigma.a) && poly.on_boundary(sigma.b))
    throw InvalidInput(to_string(sigma) + " has both ends on the boundary");
  Loop target = Loop::segment(sigma);
  if (auto f = E.obtain(target, 1, allow_homological)) return *f;
  ensure_adjoint_boundary(E);
  if (auto f = E.obtain(target, 1, allow_homological)) return *f;
  if (is_bridge(poly, E.classifier().adjoint(), sigma))
    throw CertificationFailure("bridge_transfer: no single twist known for the class of " + to_string(sigma));
  for (auto& cand : interior_graph_candidates(poly, sigma)) {
    auto m = E.mark();
    try {
      E.reduce(certified_rea(E, cand), allow_homological);
    } catch (const CertificationFailure&) {
      E.rollback(m);
      continue;
    }
    if (auto f = E.obtain(target, 1, allow_homological)) return *f;
    E.rollback(m);
  }
  throw CertificationFailure("chase: no interior graph for " + to_string(sigma) + " reduces to a single twist");
}

int pipeline_interior_d(Engine& E, i64 d, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2) {
  auto b = build_divisible_graph(E.polygon(), d, kappa, kappa_p, v, m1, m2);
  return E.reduce(certified_rea(E, b), true);
}

int pipeline_interior_dd(Engine& E, const Seg& sigma, i64 d) {
  for (auto& cand : interior_graph_candidates(E.polygon(), sigma)) {
    auto c = certify_admissible(cand.graph, E.polygon(), cand.hint, cand.exempt);
    if (!c) continue;
    int id = E.axiom_rea(*c);
    if (d != 1) id = E.power(id, d);
    return E.reduce(id, true);
  }
  throw CertificationFailure("rea: no admissible interior graph for " + to_string(sigma));
}

std::vector<Seg> segments_off_boundary(const Polygon& poly) {
  std::vector<Seg> out;
  auto pts = poly.lattice_points();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (lattice_length(pts[i], pts[j]) != 1) continue;
      if (poly.on_boundary(pts[i]) && poly.on_boundary(pts[j])) continue;
      out.push_back(Seg(pts[i], pts[j]));
    }
  std::sort(out.begin(), out.end());
  return out;
}

SurjectivityReport derive_surjectivity(Engine& E, const SurjectivityOptions& opt) {
  const Polygon& poly = E.polygon();
  SurjectivityReport r;
  std::tie(r.analysis, r.verdict) = analyze(poly);
  if (r.analysis.g == 0) throw InvalidInput("genus zero");
  const Polygon& adj = r.analysis.adjoint;
  i64 n = r.analysis.n;

  if (r.analysis.d == 1) {
    r.status = "deferred";
    r.obstruction = "hyperelliptic case";
    return r;
  }
  if (r.analysis.d == 2 && n % 2 == 0) {
    r.status = "obstructed";
    r.obstruction = "root of order n=" + std::to_string(n);
    return r;
  }

  bool homological = false;
  if (r.analysis.d == 0) {
    pipeline_corner(E, adj.vertices()[0]);
  } else {
    for (Pt k : adj.vertices()) pipeline_corner(E, k);
    for (auto& [p, q] : adj.edges()) pipeline_side(E, p, q);
    bridge_closure(E);
    std::vector<Seg> open;
    for (auto& b : bridges(poly))
      if (E.exponent(Loop::segment(b.segment), Flavor::Geometric) != 1) open.push_back(b.segment);
    if (!open.empty()) {
      if (n == 1) throw CertificationFailure("propagate: bridge " + to_string(open[0]) + " stays a proper power");
      homological = true;
      homological_bridge_closure(E);
      for (auto& s : open)
        if (E.exponent(Loop::segment(s), Flavor::Homological) != 1)
          throw CertificationFailure("chain_rule_square: no homological twist for " + to_string(s));
    }
  }

  Snake snake = build_snake(poly);
  std::vector<int> prem;
  for (Pt p : snake.chain)
    if (poly.in_interior(p)) prem.push_back(E.axiom_acycle(p));
  std::vector<Seg> loops = snake.segments;
  loops.push_back(snake.bridge);
  for (auto& s : loops) prem.push_back(pipeline_interior(E, s, homological));
  for (int& p : prem)
    if (homological && E.fact(p).flavor == Flavor::Geometric) p = E.project(p);
  int root = E.humphries(snake, prem);
  if (homological)
    r.homological_root = root;
  else
    r.geometric_root = root;
  r.snake = snake;

  if (opt.all_segments)
    for (auto& s : segments_off_boundary(poly)) pipeline_interior(E, s, homological);

  r.status = homological ? "obstructed" : "certified";
  if (homological) r.obstruction = "root of order n=" + std::to_string(n);
  return r;
}

}  // namespace tropmono
