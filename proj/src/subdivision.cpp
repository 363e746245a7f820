#include "tropmono/subdivision.hpp"

#include <algorithm>
#include <deque>

#include "tropmono/lp.hpp"

namespace tropmono {

Cell canonical_cell(const std::vector<Pt>& pts) { return Polygon::hull(pts).vertices(); }

static std::vector<std::pair<Pt, Pt>> cell_edges(const Cell& c) {
  std::vector<std::pair<Pt, Pt>> e;
  for (size_t i = 0; i < c.size(); ++i) e.emplace_back(c[i], c[(i + 1) % c.size()]);
  return e;
}

bool segment_on_boundary(const Polygon& poly, Pt u, Pt w) {
  for (auto& [p, q] : poly.edges())
    if (orient(p, q, u) == 0 && orient(p, q, w) == 0) return true;
  return false;
}

std::set<Seg> Subdivision::edges() const {
  std::set<Seg> out;
  for (auto& c : cells)
    for (auto& [u, w] : cell_edges(c)) out.insert(Seg(u, w));
  return out;
}

std::set<Seg> Subdivision::interior_edges() const {
  std::set<Seg> out;
  for (auto& s : edges())
    if (!segment_on_boundary(polygon, s.a, s.b)) out.insert(s);
  return out;
}

std::set<Seg> Subdivision::boundary_edges() const {
  std::set<Seg> out;
  for (auto& s : edges())
    if (segment_on_boundary(polygon, s.a, s.b)) out.insert(s);
  return out;
}

std::set<Pt> Subdivision::vertices() const {
  std::set<Pt> out;
  for (auto& c : cells) out.insert(c.begin(), c.end());
  return out;
}

bool Subdivision::supports(const Seg& s) const {
  for (auto& e : edges())
    if (e.contains(s.a) && e.contains(s.b)) return true;
  return false;
}

Affine affine_through(Pt p0, const Q& h0, Pt p1, const Q& h1, Pt p2, const Q& h2) {
  Pt d1 = p1 - p0, d2 = p2 - p0;
  i64 D = cross(d1, d2);
  if (D == 0) throw std::logic_error("affine_through: collinear points");
  Q e1 = h1 - h0, e2 = h2 - h0;
  Affine A;
  A.b = (e1 * d2.y - e2 * d1.y) / D;
  A.c = (e2 * d1.x - e1 * d2.x) / D;
  A.a = h0 - A.b * p0.x - A.c * p0.y;
  return A;
}

static Affine cell_affine(const std::vector<Pt>& c, const std::map<Pt, Q>& h) {
  for (size_t k = 2; k < c.size(); ++k)
    if (orient(c[0], c[1], c[k]) != 0) return affine_through(c[0], h.at(c[0]), c[1], h.at(c[1]), c[k], h.at(c[k]));
  throw std::logic_error("degenerate cell");
}

Subdivision subdivision_from_heights(const Polygon& poly, const HeightFunction& hf) {
  if (poly.dim() != 2) throw InvalidInput("not two-dimensional");
  for (auto& [p, v] : hf.values)
    if (!poly.contains(p)) throw InvalidInput("height support point " + to_string(p) + " outside the polygon");
  for (Pt v : poly.vertices())
    if (!hf.values.count(v)) throw InvalidInput("height support does not span the polygon");
  const auto& H = hf.values;
  std::vector<std::pair<Pt, Q>> pts(H.begin(), H.end());

  Pt v0 = poly.vertices()[0], v1 = poly.vertices()[1];
  Seg first(v0, v1);
  Pt start = v1;
  {
    Pt d = v1 - v0;
    bool have = false;
    Q best;
    i64 best_t = 0;
    for (auto& [p, hp] : pts) {
      if (p == v0 || !first.contains(p)) continue;
      i64 t = dot(p - v0, d);
      Q s = (hp - H.at(v0)) / t;
      if (!have || s < best || (s == best && t > best_t)) {
        have = true;
        best = s;
        best_t = t;
        start = p;
      }
    }
  }

  std::deque<std::pair<Pt, Pt>> work{{v0, start}};
  std::set<std::pair<Pt, Pt>> done;
  std::set<Cell> cells;
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    if (done.count({a, b})) continue;
    Pt e = b - a;
    const Q& ha = H.at(a);
    Q slope = (H.at(b) - ha) / dot(e, e);
    bool have = false;
    Q best;
    std::vector<Pt> arg;
    for (auto& [q, hq] : pts) {
      i64 c = cross(e, q - a);
      if (c <= 0) continue;
      Q s = (hq - ha - slope * dot(q - a, e)) / c;
      if (!have || s < best) {
        best = s;
        arg.clear();
        have = true;
      }
      if (s == best) arg.push_back(q);
    }
    if (!have) throw std::logic_error("lower hull walk left the polygon");
    arg.push_back(a);
    arg.push_back(b);
    Cell cell = canonical_cell(arg);
    cells.insert(cell);
    for (auto& [u, w] : cell_edges(cell)) {
      done.insert({u, w});
      if (!segment_on_boundary(poly, u, w) && !done.count({w, u})) work.push_back({w, u});
    }
  }
  Subdivision S{poly, std::vector<Cell>(cells.begin(), cells.end()), hf};
  i64 area2 = 0;
  for (auto& c : S.cells) area2 += Polygon::hull(c).twice_area();
  if (area2 != poly.twice_area()) throw std::logic_error("lower hull cells do not tile the polygon");
  return S;
}

bool is_unimodular(const Subdivision& s) {
  for (auto& c : s.cells)
    if (c.size() != 3 || std::abs(orient(c[0], c[1], c[2])) != 1) return false;
  return true;
}

static std::vector<Cell> sorted_canonical(const std::vector<Cell>& cells) {
  std::vector<Cell> out;
  for (auto& c : cells) out.push_back(canonical_cell(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<HeightFunction> regularity_heights_for(const Polygon& poly, const std::vector<Cell>& cells) {
  std::map<Pt, int> idx;
  for (auto& c : cells)
    for (Pt p : c) idx.emplace(p, 0);
  int n = 0;
  for (auto& [p, i] : idx) i = n++;
  const int t = n;
  i64 area2 = 0;
  for (auto& c : cells) area2 += Polygon::hull(c).twice_area();
  if (area2 != poly.twice_area()) throw InvalidInput("target cells do not tile the polygon");

  std::map<std::pair<Pt, Pt>, int> side;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    for (auto& e : cell_edges(cells[i])) side[e] = i;

  auto apex = [](const Cell& c, Pt u, Pt w) {
    for (Pt p : c)
      if (orient(u, w, p) != 0) return p;
    throw InvalidInput("degenerate cell");
  };

  lp::Problem prob;
  prob.num_vars = n + 1;
  prob.objective.assign(n + 1, Q(0));
  prob.objective[t] = 1;
  for (auto& [e, i] : side) {
    auto [u, w] = e;
    if (segment_on_boundary(poly, u, w)) continue;
    auto it = side.find({w, u});
    if (it == side.end()) throw InvalidInput("target complex has an unmatched interior edge " + to_string(Seg(u, w)));
    if (!(u < w)) continue;
    Pt p = apex(cells[i], u, w), q = apex(cells[it->second], u, w);
    Q D = orient(u, w, p);
    lp::Constraint c;
    c.terms = {{idx[q], 1},
               {idx[u], -Q(orient(w, p, q)) / D},
               {idx[w], -Q(orient(p, u, q)) / D},
               {idx[p], -Q(orient(u, w, q)) / D},
               {t, -1}};
    c.sense = lp::Sense::GE;
    c.rhs = 0;
    prob.rows.push_back(c);
  }
  for (auto& cell : cells) {
    if (cell.size() <= 3) continue;
    Pt a = cell[0], b = cell[1], c0{};
    bool found = false;
    for (Pt p : cell)
      if (orient(a, b, p) != 0) {
        c0 = p;
        found = true;
        break;
      }
    if (!found) throw InvalidInput("degenerate cell");
    Q D = orient(a, b, c0);
    for (Pt q : cell) {
      if (q == a || q == b || q == c0) continue;
      lp::Constraint c;
      c.terms = {{idx[q], 1},
                 {idx[a], -Q(orient(b, c0, q)) / D},
                 {idx[b], -Q(orient(c0, a, q)) / D},
                 {idx[c0], -Q(orient(a, b, q)) / D}};
      c.sense = lp::Sense::EQ;
      prob.rows.push_back(c);
    }
  }
  lp::Constraint cap;
  cap.terms = {{t, 1}};
  cap.sense = lp::Sense::LE;
  cap.rhs = 1;
  prob.rows.push_back(cap);

  auto sol = lp::maximize(prob);
  if (sol.status != lp::Status::Optimal || sgn(sol.value) <= 0) return std::nullopt;
  mpz_class den = 1;
  for (int i = 0; i < n; ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), sol.x[i].get_den_mpz_t());
  HeightFunction h;
  for (auto& [p, i] : idx) h.values[p] = sol.x[i] * den;
  auto S = subdivision_from_heights(poly, h);
  if (S.cells != sorted_canonical(cells)) throw std::logic_error("regularity witness does not replay");
  return h;
}

Subdivision extend_subdivision(const Polygon& poly, const Subdivision& inner) {
  if (!poly.contains_polygon(inner.polygon)) throw InvalidInput("inner polygon not contained in the outer polygon");
  if (poly == inner.polygon) return inner;
  Q top = 0;
  for (auto& [p, v] : inner.witness.values) { Q av = abs(v); if (av > top) top = av; }
  mpz_class H = 1;
  while (H <= top) H *= 2;
  for (int it = 0; it < 256; ++it, H *= 2) {
    HeightFunction w = inner.witness;
    for (Pt k : poly.vertices())
      if (!inner.polygon.contains(k)) w.values[k] = H;
    auto S = subdivision_from_heights(poly, w);
    std::vector<Cell> inside;
    for (auto& c : S.cells) {
      bool in = true;
      for (Pt p : c) in = in && inner.polygon.contains(p);
      if (in) inside.push_back(c);
    }
    if (inside == inner.cells) return S;
  }
  throw CertificationFailure("extension search did not converge");
}

Subdivision unimodular_refinement(const Subdivision& S) {
  const Polygon& P = S.polygon;
  std::vector<std::vector<Pt>> cells(S.cells.begin(), S.cells.end());
  std::map<Pt, Q> h;
  for (auto& c : cells)
    for (Pt v : c) h[v] = S.witness.values.at(v);

  auto in_cell = [](const std::vector<Pt>& c, Pt p) {
    for (size_t i = 0; i < c.size(); ++i)
      if (orient(c[i], c[(i + 1) % c.size()], p) < 0) return false;
    return true;
  };
  auto unimod = [](const std::vector<Pt>& c) { return c.size() == 3 && std::abs(orient(c[0], c[1], c[2])) == 1; };

  for (Pt p : P.lattice_points()) {
    std::vector<int> aff;
    bool need = false;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
      if (in_cell(cells[i], p)) {
        aff.push_back(i);
        need = need || !unimod(cells[i]);
      }
    if (!need) continue;
    std::set<int> affset(aff.begin(), aff.end());
    Q nu = cell_affine(cells[aff[0]], h)(p);
    Q bound = 1;
    std::vector<std::vector<Pt>> fresh;
    for (int i : aff) {
      std::vector<Pt> c = cells[i];
      Affine A = cell_affine(c, h);
      if (std::find(c.begin(), c.end(), p) == c.end()) {
        for (size_t k = 0; k < c.size(); ++k)
          if (Seg(c[k], c[(k + 1) % c.size()]).contains_in_relative_interior(p)) {
            c.insert(c.begin() + k + 1, p);
            break;
          }
      }
      size_t m = c.size();
      std::vector<size_t> corners;
      for (size_t k = 0; k < m; ++k)
        if (orient(c[(k + m - 1) % m], c[k], c[(k + 1) % m]) != 0) corners.push_back(k);
      for (size_t r = 0; r < corners.size(); ++r) {
        size_t from = corners[r], to = corners[(r + 1) % corners.size()];
        std::vector<Pt> run;
        for (size_t k = from;; k = (k + 1) % m) {
          run.push_back(c[k]);
          if (k == to) break;
        }
        if (std::find(run.begin(), run.end(), p) != run.end()) continue;
        Pt f0 = run.front(), f1 = run.back();
        if (!segment_on_boundary(P, f0, f1)) {
          bool found = false;
          for (int j = 0; j < static_cast<int>(cells.size()) && !found; ++j) {
            if (affset.count(j)) continue;
            const auto& cj = cells[j];
            if (std::find(cj.begin(), cj.end(), f0) == cj.end() || std::find(cj.begin(), cj.end(), f1) == cj.end())
              continue;
            for (Pt q : cj)
              if (orient(f0, f1, q) < 0) {
                Q margin = h.at(q) - A(q);
                if (sgn(margin) <= 0) throw std::logic_error("refinement: current heights not strictly convex");
                Q lam = Q(-orient(f0, f1, q)) / orient(f0, f1, p);
                bound = std::min(bound, Q(margin / lam));
                found = true;
                break;
              }
          }
          if (!found) throw std::logic_error("refinement: neighbour cell not found");
        }
        run.push_back(p);
        fresh.push_back(run);
      }
    }
    Q eps = 1;
    while (eps >= bound) eps /= 2;
    h[p] = nu - eps;
    std::vector<std::vector<Pt>> next;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
      if (!affset.count(i)) next.push_back(std::move(cells[i]));
    for (auto& c : fresh) next.push_back(std::move(c));
    cells = std::move(next);
  }
  HeightFunction w;
  w.values = h;
  auto out = subdivision_from_heights(P, w);
  std::vector<Cell> mine;
  for (auto& c : cells) mine.push_back(c);
  if (out.cells != sorted_canonical(mine)) throw std::logic_error("pulling heights do not replay");
  if (!is_unimodular(out)) throw std::logic_error("refinement is not unimodular");
  return out;
}

TropicalCurve dual_tropical_curve(const Subdivision& S) {
  TropicalCurve T;
  std::map<std::pair<Pt, Pt>, int> side;
  for (int i = 0; i < static_cast<int>(S.cells.size()); ++i) {
    Affine A = cell_affine(S.cells[i], S.witness.values);
    T.vertices.push_back({A.b, A.c});
    for (auto& e : cell_edges(S.cells[i])) side[e] = i;
  }
  for (int i = 0; i < static_cast<int>(S.cells.size()); ++i)
    for (auto& [u, w] : cell_edges(S.cells[i])) {
      i64 len = lattice_length(u, w);
      Pt d = primitive(w - u);
      if (segment_on_boundary(S.polygon, u, w)) {
        T.rays.push_back({i, {d.y, -d.x}, Seg(u, w), len});
      } else if (u < w) {
        T.edges.push_back({i, side.at({w, u}), Seg(u, w), len});
      }
    }
  return T;
}

static Pt primitive_of(const Q& x, const Q& y) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
  mpz_class a = mpz_class(x * den), b = mpz_class(y * den);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g == 0) return {0, 0};
  a /= g;
  b /= g;
  return {a.get_si(), b.get_si()};
}

bool check_tropical_curve(const Subdivision& S, const TropicalCurve& C, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (C.vertices.size() != S.cells.size()) return fail("vertex count differs from cell count");
  if (C.edges.size() != S.interior_edges().size()) return fail("bounded edge count differs from interior edge count");
  if (C.rays.size() != S.boundary_edges().size()) return fail("ray count differs from boundary edge count");
  std::vector<Pt> sum(C.vertices.size(), Pt{0, 0});
  for (auto& e : C.edges) {
    Q dx = C.vertices[e.to].x - C.vertices[e.from].x, dy = C.vertices[e.to].y - C.vertices[e.from].y;
    Pt d = primitive_of(dx, dy);
    if (d == Pt{0, 0}) return fail("bounded edge of zero length");
    Pt s = e.dual.b - e.dual.a;
    if (dot(d, s) != 0) return fail("bounded edge not orthogonal to its dual");
    sum[e.from] = sum[e.from] + d * e.weight;
    sum[e.to] = sum[e.to] - d * e.weight;
  }
  for (auto& r : C.rays) {
    Pt s = r.dual.b - r.dual.a;
    if (dot(r.direction, s) != 0) return fail("ray not orthogonal to its dual");
    sum[r.from] = sum[r.from] + r.direction * r.weight;
  }
  for (size_t i = 0; i < sum.size(); ++i)
    if (sum[i] != Pt{0, 0}) return fail("balancing fails at vertex " + std::to_string(i));
  return true;
}

}  // namespace tropmono
