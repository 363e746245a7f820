#include "tropmono/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropmono {

i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Pt primitive(Pt v) {
  i64 g = gcd64(v.x, v.y);
  if (g == 0) return v;
  return {v.x / g, v.y / g};
}

i64 lattice_length(Pt a, Pt b) { return gcd64(b.x - a.x, b.y - a.y); }

bool colex_less(Pt a, Pt b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

std::string to_string(Pt p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

std::string to_string(const Seg& s) { return "[" + to_string(s.a) + "," + to_string(s.b) + "]"; }

bool Seg::contains(Pt p) const {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_conflict(const Seg& s, const Seg& t) {
  if (s == t) return false;
  i64 o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  if (o1 == 0 && o2 == 0) {
    Pt d = s.b - s.a;
    i64 t0 = dot(d, t.a - s.a), t1 = dot(d, t.b - s.a);
    if (t0 > t1) std::swap(t0, t1);
    return std::max<i64>(0, t0) < std::min(dot(d, d), t1);
  }
  i64 o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (sgn(o1) * sgn(o2) < 0 && sgn(o3) * sgn(o4) < 0) return true;
  auto bad = [](const Seg& host, Pt p) { return host.contains(p) && !host.has_end(p); };
  return bad(t, s.a) || bad(t, s.b) || bad(s, t.a) || bad(s, t.b);
}

std::vector<Seg> primitive_pieces(Pt p, Pt q) {
  i64 n = lattice_length(p, q);
  Pt d = primitive(q - p);
  std::vector<Seg> out;
  for (i64 i = 0; i < n; ++i) out.emplace_back(p + d * i, p + d * (i + 1));
  return out;
}

Polygon Polygon::hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Polygon P;
  if (pts.size() <= 1) {
    P.v_ = pts;
    return P;
  }
  // monotone chain, collinear points dropped
  std::vector<Pt> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3)
    P.v_ = {pts.front(), pts.back()};
  else
    P.v_ = h;
  return P;
}

int Polygon::dim() const {
  if (v_.empty()) return -1;
  if (v_.size() == 1) return 0;
  if (v_.size() == 2) return 1;
  return 2;
}

std::vector<std::pair<Pt, Pt>> Polygon::edges() const {
  std::vector<std::pair<Pt, Pt>> e;
  if (dim() == 1) {
    e.emplace_back(v_[0], v_[1]);
  } else if (dim() == 2) {
    for (size_t i = 0; i < v_.size(); ++i) e.emplace_back(v_[i], v_[(i + 1) % v_.size()]);
  }
  return e;
}

std::vector<i64> Polygon::edge_lengths() const {
  std::vector<i64> out;
  for (auto& [a, b] : edges()) out.push_back(lattice_length(a, b));
  return out;
}

i64 Polygon::twice_area() const {
  if (dim() < 2) return 0;
  i64 s = 0;
  for (size_t i = 0; i < v_.size(); ++i) s += cross(v_[i], v_[(i + 1) % v_.size()]);
  return s;
}

bool Polygon::contains(Pt p) const {
  switch (dim()) {
    case -1: return false;
    case 0: return p == v_[0];
    case 1: return Seg(v_[0], v_[1]).contains(p);
    default:
      for (size_t i = 0; i < v_.size(); ++i)
        if (orient(v_[i], v_[(i + 1) % v_.size()], p) < 0) return false;
      return true;
  }
}

bool Polygon::in_interior(Pt p) const {
  if (dim() < 2) return false;
  for (size_t i = 0; i < v_.size(); ++i)
    if (orient(v_[i], v_[(i + 1) % v_.size()], p) <= 0) return false;
  return true;
}

bool Polygon::is_vertex(Pt p) const { return std::find(v_.begin(), v_.end(), p) != v_.end(); }

bool Polygon::contains_polygon(const Polygon& o) const {
  for (Pt p : o.vertices())
    if (!contains(p)) return false;
  return true;
}

std::vector<Pt> Polygon::lattice_points() const {
  std::vector<Pt> out;
  if (v_.empty()) return out;
  i64 x0 = v_[0].x, x1 = v_[0].x, y0 = v_[0].y, y1 = v_[0].y;
  for (Pt p : v_) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  for (i64 x = x0; x <= x1; ++x)
    for (i64 y = y0; y <= y1; ++y)
      if (contains({x, y})) out.push_back({x, y});
  return out;
}

std::vector<Pt> Polygon::interior_points() const {
  std::vector<Pt> out;
  for (Pt p : lattice_points())
    if (in_interior(p)) out.push_back(p);
  return out;
}

std::vector<Pt> Polygon::boundary_points() const {
  std::vector<Pt> out;
  for (Pt p : lattice_points())
    if (!in_interior(p)) out.push_back(p);
  return out;
}

std::string to_string(const Polygon& p) {
  std::string s = "conv{";
  for (size_t i = 0; i < p.vertices().size(); ++i) s += (i ? "," : "") + to_string(p.vertices()[i]);
  return s + "}";
}

AffineMap AffineMap::inverse() const {
  i64 d = det();
  if (d != 1 && d != -1) throw InvalidInput("affine map is not unimodular");
  AffineMap r;
  r.m = {m[3] * d, -m[1] * d, -m[2] * d, m[0] * d};
  Pt lt = r.linear(t);
  r.t = {-lt.x, -lt.y};
  return r;
}

AffineMap AffineMap::then(const AffineMap& o) const {
  AffineMap r;
  r.m = {o.m[0] * m[0] + o.m[1] * m[2], o.m[0] * m[1] + o.m[1] * m[3], o.m[2] * m[0] + o.m[3] * m[2],
         o.m[2] * m[1] + o.m[3] * m[3]};
  r.t = o(t);
  return r;
}

Polygon AffineMap::apply(const Polygon& p) const {
  std::vector<Pt> pts;
  for (Pt q : p.vertices()) pts.push_back((*this)(q));
  return Polygon::hull(pts);
}

bool is_smooth(const Polygon& p) {
  if (p.dim() < 2) throw InvalidInput("not two-dimensional");
  const auto& v = p.vertices();
  size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    Pt a = primitive(v[(i + 1) % n] - v[i]);
    Pt b = primitive(v[(i + n - 1) % n] - v[i]);
    if (std::abs(cross(a, b)) != 1) return false;
  }
  return true;
}

Polygon adjoint_polygon(const Polygon& p) {
  if (p.dim() < 2) throw InvalidInput("not two-dimensional");
  return Polygon::hull(p.interior_points());
}

i64 root_order(const Polygon& adj) {
  switch (adj.dim()) {
    case -1: throw InvalidInput("genus zero");
    case 0: return 1;
    case 1: return lattice_length(adj.vertices()[0], adj.vertices()[1]);
    default: {
      i64 g = 0;
      for (i64 l : adj.edge_lengths()) g = std::gcd(g, l);
      return g;
    }
  }
}

Normalization normalize_at_vertex(const Polygon& p, Pt kappa, bool swap_axes) {
  Polygon adj = adjoint_polygon(p);
  if (adj.dim() != 2) throw InvalidInput("adjoint polygon is not two-dimensional");
  const auto& v = adj.vertices();
  auto it = std::find(v.begin(), v.end(), kappa);
  if (it == v.end()) throw InvalidInput("point " + to_string(kappa) + " is not a vertex of the adjoint polygon");
  size_t i = it - v.begin(), n = v.size();
  Pt e1 = primitive(v[(i + 1) % n] - kappa), e2 = primitive(v[(i + n - 1) % n] - kappa);
  if (swap_axes) std::swap(e1, e2);
  i64 d = cross(e1, e2);
  if (d != 1 && d != -1) throw InvalidInput("adjoint polygon not smooth at " + to_string(kappa));
  AffineMap A;
  A.m = {e2.y * d, -e2.x * d, -e1.y * d, e1.x * d};
  Pt lk = A.linear(kappa);
  A.t = {-lk.x, -lk.y};
  Normalization out{A, A.apply(p), A.apply(adj)};
  if (!out.polygon.on_boundary({0, -1}) || !out.polygon.on_boundary({-1, 0}))
    throw InvalidInput("normalization anchors (0,-1),(-1,0) not on the boundary");
  return out;
}

std::vector<Divisor> divisibility(const Polygon& adj) {
  std::vector<Divisor> out;
  if (adj.dim() != 2) return out;
  i64 n = root_order(adj);
  auto pts = adj.lattice_points();
  for (i64 d = 2; d <= n; ++d) {
    bool ok = true;
    Pt k0 = adj.vertices()[0];
    for (Pt v : adj.vertices())
      if ((v.x - k0.x) % d != 0 || (v.y - k0.y) % d != 0) ok = false;
    if (!ok) continue;
    std::vector<std::vector<Pt>> per_vertex;
    for (Pt k : adj.vertices()) {
      std::vector<Pt> sel;
      for (Pt p : pts)
        if ((p.x - k.x) % d == 0 && (p.y - k.y) % d == 0) sel.push_back(p);
      per_vertex.push_back(sel);
    }
    for (auto& s : per_vertex)
      if (s != per_vertex[0]) throw std::logic_error("divisibility depends on the base vertex");
    out.push_back({d, per_vertex[0]});
  }
  return out;
}

std::string to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Yes: return "surjective";
    case VerdictValue::No: return "not-surjective";
    case VerdictValue::HyperellipticDeferred: return "hyperelliptic-deferred";
    default: return "not-applicable";
  }
}

static bool adjoint_lengths_match(const Polygon& p, const Polygon& adj) {
  const auto& v = p.vertices();
  size_t n = v.size();
  std::vector<Pt> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = primitive(v[(i + 1) % n] - v[i]);
  for (size_t i = 0; i < n; ++i) {
    Pt s = w[(i + n - 1) % n] + w[(i + 1) % n];
    if (cross(w[i], s) != 0) return false;
    i64 k = dot(s, w[i]) / dot(w[i], w[i]);
    i64 predicted = lattice_length(v[i], v[(i + 1) % n]) + k - 2;
    i64 actual = 0;
    for (auto& [a, b] : adj.edges())
      if (primitive(b - a) == w[i]) actual = lattice_length(a, b);
    if (predicted != actual) return false;
  }
  return true;
}

std::pair<PolygonAnalysis, Verdict> analyze(const Polygon& p) {
  if (p.dim() < 2) throw InvalidInput("not two-dimensional");
  PolygonAnalysis a;
  a.smooth = is_smooth(p);
  if (!a.smooth) throw InvalidInput("polygon not smooth");
  for (Pt q : p.lattice_points()) (p.in_interior(q) ? a.g : a.b)++;
  a.adjoint = adjoint_polygon(p);
  a.d = a.adjoint.dim();
  Verdict v;
  if (a.g == 0) return {a, v};
  a.n = root_order(a.adjoint);
  if (a.d == 0) {
    v.mu = v.algebraic_mu = VerdictValue::Yes;
  } else if (a.d == 1) {
    v.mu = v.algebraic_mu = VerdictValue::HyperellipticDeferred;
  } else {
    for (auto& dv : divisibility(a.adjoint)) a.divisors.push_back(dv.d);
    a.adjoint_length_check = adjoint_lengths_match(p, a.adjoint);
    std::string why = "root of order n=" + std::to_string(a.n);
    if (a.n == 1) {
      v.mu = VerdictValue::Yes;
    } else {
      v.mu = VerdictValue::No;
      v.mu_reason = why;
    }
    if (a.n % 2 == 1) {
      v.algebraic_mu = VerdictValue::Yes;
    } else {
      v.algebraic_mu = VerdictValue::No;
      v.algebraic_mu_reason = why;
    }
  }
  return {a, v};
}

}  // namespace tropmono
