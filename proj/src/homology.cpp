#include "tropmono/homology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace tropmono {

IMat IMat::identity(int n) {
  IMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat operator*(const IMat& x, const IMat& y) {
  IMat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      i64 v = x(i, k);
      if (!v) continue;
      for (int j = 0; j < x.n; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

IMat power(const IMat& m, int k) {
  IMat r = IMat::identity(m.n);
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

IVec operator*(const IMat& m, const IVec& v) {
  IVec out(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

IMat standard_form(int g) {
  IMat j(2 * g);
  for (int i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

bool is_symplectic(const IMat& m) {
  int g = m.n / 2;
  IMat j = standard_form(g);
  IMat t(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int k = 0; k < m.n; ++k) t(i, k) = m(k, i);
  return t * j * m == j;
}

i64 symplectic_pairing(const IVec& x, const IVec& y) {
  size_t g = x.size() / 2;
  i64 s = 0;
  for (size_t i = 0; i < g; ++i) s += x[i] * y[g + i] - x[g + i] * y[i];
  return s;
}

IMat transvection(const IVec& c) {
  int n = static_cast<int>(c.size());
  IMat m = IMat::identity(n);
  // column j is e_j + <e_j, c> c
  for (int j = 0; j < n; ++j) {
    IVec e(n, 0);
    e[j] = 1;
    i64 p = symplectic_pairing(e, c);
    if (!p) continue;
    for (int i = 0; i < n; ++i) m(i, j) += p * c[i];
  }
  return m;
}

namespace {

// Diagonalizes by unimodular row and column operations; returns the nonzero diagonal.
std::vector<mpz_class> diagonalize(std::vector<std::vector<mpz_class>> m) {
  std::vector<mpz_class> diag;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  size_t k = 0;
  while (k < rows && k < cols) {
    // pivot: smallest absolute value, preferring units
    size_t pi = rows, pj = cols;
    mpz_class best;
    for (size_t i = k; i < rows && !(pi < rows && best == 1); ++i)
      for (size_t j = k; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        mpz_class a = abs(m[i][j]);
        if (pi == rows || a < best) {
          best = a;
          pi = i;
          pj = j;
          if (best == 1) break;
        }
      }
    if (pi == rows) break;
    std::swap(m[k], m[pi]);
    if (pj != k)
      for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = k + 1; i < rows; ++i) {
        if (m[i][k] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][k].get_mpz_t(), m[k][k].get_mpz_t());
        for (size_t j = k; j < cols; ++j)
          if (m[k][j] != 0) m[i][j] -= q * m[k][j];
        if (m[i][k] != 0) {
          std::swap(m[k], m[i]);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < cols; ++j) {
        if (m[k][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[k][j].get_mpz_t(), m[k][k].get_mpz_t());
        for (size_t i = k; i < rows; ++i)
          if (m[i][k] != 0) m[i][j] -= q * m[i][k];
        if (m[k][j] != 0) {
          for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs(m[k][k]));
    ++k;
  }
  return diag;
}

size_t rank_of(const std::vector<std::vector<mpz_class>>& m) { return diagonalize(m).size(); }

int half(Pt d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

bool angle_less(Pt a, Pt b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace

std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m) {
  auto d = diagonalize(std::move(m));
  // turn an arbitrary diagonal into the divisibility chain
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]), l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  return d;
}

SurfaceModel SurfaceModel::build(const Polygon& poly) {
  if (poly.dim() != 2) throw InvalidInput("not two-dimensional");
  if (poly.interior_points().empty()) throw InvalidInput("genus zero");
  HeightFunction h;
  for (Pt v : poly.vertices()) h.values[v] = 0;
  return build(unimodular_refinement(subdivision_from_heights(poly, h)));
}

SurfaceModel SurfaceModel::build(const Subdivision& s) {
  if (!is_unimodular(s)) throw InvalidInput("surface model needs a unimodular subdivision");
  if (s.polygon.interior_points().empty()) throw InvalidInput("genus zero");
  SurfaceModel m;
  m.poly_ = s.polygon;
  m.tri_ = s;
  m.construct();
  return m;
}

int SurfaceModel::index_of(Pt v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw InvalidInput(to_string(v) + " is not an interior lattice point");
  return it->second;
}

void SurfaceModel::construct() {
  auto es = tri_.edges();
  tedges_.assign(es.begin(), es.end());
  for (size_t i = 0; i < tedges_.size(); ++i) tedge_index_[tedges_[i]] = static_cast<int>(i);
  b_ = static_cast<i64>(poly_.boundary_points().size());

  std::map<Pt, std::vector<int>> around;
  for (size_t i = 0; i < tedges_.size(); ++i) {
    around[tedges_[i].a].push_back(static_cast<int>(i));
    around[tedges_[i].b].push_back(static_cast<int>(i));
  }
  for (auto& [p, ids] : around) {
    std::sort(ids.begin(), ids.end(),
              [&](int x, int y) { return angle_less(tedges_[x].other(p) - p, tedges_[y].other(p) - p); });
    for (int e : ids) vertex_[{p, e}] = static_cast<int>(nv_++);
  }
  copy1_.resize(tedges_.size());
  copy2_.resize(tedges_.size());
  for (size_t i = 0; i < tedges_.size(); ++i) {
    int va = vertex_.at({tedges_[i].a, static_cast<int>(i)}), vb = vertex_.at({tedges_[i].b, static_cast<int>(i)});
    copy1_[i] = static_cast<int>(edges_.size());
    edges_.push_back({va, vb, 0, static_cast<int>(i), {}});
    copy2_[i] = static_cast<int>(edges_.size());
    edges_.push_back({va, vb, 1, static_cast<int>(i), {}});
  }
  std::map<std::pair<Pt, int>, int> arc_from;  // arc starting at the given t-edge, counterclockwise
  for (auto& [p, ids] : around) {
    bool bnd = poly_.on_boundary(p);
    size_t k = ids.size();
    for (size_t i = 0; i < k; ++i) {
      int e0 = ids[i], e1 = ids[(i + 1) % k];
      Pt d0 = tedges_[e0].other(p) - p, d1 = tedges_[e1].other(p) - p;
      if (bnd && cross(d0, d1) <= 0) continue;
      int id = static_cast<int>(edges_.size());
      edges_.push_back({vertex_.at({p, e0}), vertex_.at({p, e1}), 2, -1, p});
      arc_from[{p, e0}] = id;
      arcs_at_[p].push_back(id);
    }
  }
  for (size_t t = 0; t < tri_.cells.size(); ++t) {
    const Cell& c = tri_.cells[t];
    if (c.size() != 3) throw std::logic_error("triangulation cell is not a triangle");
    Face f1, f2;
    f1.triangle = f2.triangle = static_cast<int>(t);
    for (int i = 0; i < 3; ++i) {
      Pt p = c[i], q = c[(i + 1) % 3], r = c[(i + 2) % 3];
      int e = tedge_index_.at(Seg(p, q));
      int sg = tedges_[e].a == p ? 1 : -1;
      int arc = arc_from.at({q, tedge_index_.at(Seg(q, r))});
      if (edges_[arc].to != vertex_.at({q, e})) throw std::logic_error("corner arc mismatch");
      f1.boundary.push_back({copy1_[e], sg});
      f1.boundary.push_back({arc, -1});
      f2.boundary.push_back({copy2_[e], -sg});
      f2.boundary.push_back({arc, 1});
    }
    faces_.push_back(f1);
    faces_.push_back(f2);
  }
  for (size_t i = 0; i < tedges_.size(); ++i)
    if (segment_on_boundary(poly_, tedges_[i].a, tedges_[i].b))
      faces_.push_back({{{copy1_[i], 1}, {copy2_[i], -1}}, -1});

  // boundary maps, d1 d2 = 0
  size_t E = edges_.size(), F = faces_.size();
  std::vector<std::vector<mpz_class>> d1(nv_, std::vector<mpz_class>(E)), d2(E, std::vector<mpz_class>(F));
  for (size_t j = 0; j < E; ++j) {
    d1[edges_[j].to][j] += 1;
    d1[edges_[j].from][j] -= 1;
  }
  for (size_t f = 0; f < F; ++f) {
    IVec chain(E, 0);
    for (auto [e, sg] : faces_[f].boundary) {
      d2[e][f] += sg;
      chain[e] += sg;
    }
    for (i64 x : boundary1(chain))
      if (x) throw std::logic_error("face boundary is not a cycle");
  }

  interior_ = poly_.interior_points();
  std::sort(interior_.begin(), interior_.end(), colex_less);
  for (size_t i = 0; i < interior_.size(); ++i) index_[interior_[i]] = static_cast<int>(i);

  // tree towards the boundary, breadth first, deterministic
  std::queue<Pt> q;
  std::set<Pt> seen;
  for (auto& [p, ids] : around)
    if (poly_.on_boundary(p)) {
      seen.insert(p);
      q.push(p);
    }
  while (!q.empty()) {
    Pt p = q.front();
    q.pop();
    for (int e : around[p]) {
      Pt r = tedges_[e].other(p);
      if (seen.insert(r).second) {
        parent_[r] = p;
        q.push(r);
      }
    }
  }

  size_t r1 = rank_of(d1), r2 = rank_of(d2);
  rank_h1_ = static_cast<i64>(E - r1 - r2);

  int g = static_cast<int>(interior_.size());
  std::vector<IVec> basis;
  for (Pt v : interior_) basis.push_back(cycle_acycle(v));
  for (Pt v : interior_) basis.push_back(cycle_b(v));
  bool cycles = true;
  for (auto& c : basis)
    for (i64 x : boundary1(c))
      if (x) cycles = false;
  std::vector<std::vector<mpz_class>> N(E, std::vector<mpz_class>(2 * g + F));
  for (size_t i = 0; i < E; ++i) {
    for (int j = 0; j < 2 * g; ++j) N[i][j] = basis[j][i];
    for (size_t f = 0; f < F; ++f) N[i][2 * g + f] = d2[i][f];
  }
  auto inv = diagonalize(N);
  bool unit = std::all_of(inv.begin(), inv.end(), [](const mpz_class& x) { return x == 1; });
  basis_ok_ = cycles && unit && inv.size() == E - r1 && rank_h1_ == 2 * g;

  pairing_ok_ = true;
  for (Pt v : interior_)
    for (Pt w : interior_) {
      if (phi(v, cycle_b(w)) != (v == w ? 1 : 0)) pairing_ok_ = false;
      if (phi(v, cycle_acycle(w)) != 0) pairing_ok_ = false;
    }

  // edge loops against b_a - b_b, all at once: rank of [d2 | differences] must stay r2
  std::vector<std::vector<mpz_class>> M = d2;
  bool closed = true;
  for (auto& e : tedges_) {
    IVec c = cycle_edge(e), ba = cycle_b(e.a), bb = cycle_b(e.b);
    for (size_t i = 0; i < E; ++i) M[i].push_back(c[i] - ba[i] + bb[i]);
    for (i64 x : boundary1(c))
      if (x) closed = false;
  }
  edge_classes_ok_ = closed && rank_of(M) == r2;
}

IVec SurfaceModel::boundary1(const IVec& chain) const {
  IVec out(nv_, 0);
  for (size_t j = 0; j < edges_.size(); ++j)
    if (chain[j]) {
      out[edges_[j].to] += chain[j];
      out[edges_[j].from] -= chain[j];
    }
  return out;
}

IVec SurfaceModel::cycle_acycle(Pt v) const {
  IVec c(edges_.size(), 0);
  auto it = arcs_at_.find(v);
  if (it == arcs_at_.end() || !poly_.in_interior(v)) throw InvalidInput(to_string(v) + " is not interior");
  for (int a : it->second) c[a] += 1;
  return c;
}

IVec SurfaceModel::cycle_edge(const Seg& e) const {
  IVec c(edges_.size(), 0);
  int i = tedge_index_.at(e);
  c[copy1_[i]] += 1;
  c[copy2_[i]] -= 1;
  return c;
}

IVec SurfaceModel::cycle_b(Pt v) const {
  IVec c(edges_.size(), 0);
  Pt p = v;
  while (!poly_.on_boundary(p)) {
    Pt r = parent_.at(p);
    Seg e(p, r);
    int i = tedge_index_.at(e);
    int sg = e.a == p ? 1 : -1;
    c[copy1_[i]] += sg;
    c[copy2_[i]] -= sg;
    p = r;
  }
  return c;
}

i64 SurfaceModel::phi(Pt v, const IVec& cycle) const {
  i64 s = 0;
  for (size_t i = 0; i < tedges_.size(); ++i) {
    if (!tedges_[i].has_end(v)) continue;
    s += cycle[copy1_[i]] * (tedges_[i].a == v ? 1 : -1);
  }
  return s;
}

IVec SurfaceModel::loop_class(const Loop& l) const {
  int g = static_cast<int>(interior_.size());
  IVec x(2 * g, 0);
  if (l.kind == Loop::ACycle) {
    x[index_of(l.v)] = 1;
    return x;
  }
  if (!poly_.contains(l.seg.a) || !poly_.contains(l.seg.b)) throw InvalidInput("segment outside the polygon");
  if (!poly_.on_boundary(l.seg.a)) x[g + index_of(l.seg.a)] += 1;
  if (!poly_.on_boundary(l.seg.b)) x[g + index_of(l.seg.b)] -= 1;
  return x;
}

i64 SurfaceModel::intersection(const Loop& l1, const Loop& l2) const {
  return symplectic_pairing(loop_class(l1), loop_class(l2));
}

bool SurfaceModel::pants_check(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::vector<int> parent(faces_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::map<int, std::vector<int>> by_arc;
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].triangle < 0) continue;  // punctures
    for (auto [e, sg] : faces_[f].boundary)
      if (edges_[e].kind == 2) by_arc[e].push_back(static_cast<int>(f));
  }
  for (auto& [e, fs] : by_arc)
    for (size_t i = 1; i < fs.size(); ++i) parent[find(fs[i])] = find(fs[0]);
  std::map<int, std::vector<int>> comps;
  for (size_t f = 0; f < faces_.size(); ++f)
    if (faces_[f].triangle >= 0) comps[find(static_cast<int>(f))].push_back(static_cast<int>(f));
  if (comps.size() != tri_.cells.size())
    return fail("expected " + std::to_string(tri_.cells.size()) + " pieces, got " + std::to_string(comps.size()));
  for (auto& [r, fs] : comps) {
    std::set<int> verts, arcs;
    i64 cut_sides = 0;
    for (int f : fs)
      for (auto [e, sg] : faces_[f].boundary) {
        verts.insert(edges_[e].from);
        verts.insert(edges_[e].to);
        if (edges_[e].kind == 2)
          arcs.insert(e);
        else
          ++cut_sides;
      }
    i64 chi = static_cast<i64>(verts.size()) - static_cast<i64>(arcs.size()) - cut_sides + static_cast<i64>(fs.size());
    if (chi != -1) return fail("piece with Euler characteristic " + std::to_string(chi));
  }
  return true;
}

bool pants_check(const Subdivision& s, std::string* why) {
  if (!is_unimodular(s)) {
    if (why) *why = "subdivision not unimodular";
    return false;
  }
  return SurfaceModel::build(s).pants_check(why);
}

std::uint64_t symplectic_group_order(int g, std::uint64_t p) {
  std::uint64_t r = 1;
  for (int i = 0; i < g * g; ++i) r *= p;
  std::uint64_t pk = 1;
  for (int i = 1; i <= g; ++i) {
    pk *= p * p;
    r *= pk - 1;
  }
  return r;
}

namespace {

using Bits = std::uint64_t;

Bits pack2(const IMat& m) {
  Bits b = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (((m(i, j) % 2) + 2) % 2) b |= Bits(1) << (i * m.n + j);
  return b;
}

Bits mul2(Bits x, Bits y, int n) {
  Bits rowmask = (Bits(1) << n) - 1, out = 0;
  for (int i = 0; i < n; ++i) {
    Bits row = 0, xi = (x >> (i * n)) & rowmask;
    while (xi) {
      int k = __builtin_ctzll(xi);
      xi &= xi - 1;
      row ^= (y >> (k * n)) & rowmask;
    }
    out |= row << (i * n);
  }
  return out;
}

}  // namespace

std::uint64_t subgroup_order_mod_p(const std::vector<IMat>& gens, int p, std::uint64_t limit) {
  if (gens.empty()) return 1;
  int n = gens[0].n;
  if (p == 2 && n * n <= 64) {
    std::vector<Bits> g;
    for (auto& m : gens) g.push_back(pack2(m));
    Bits id = pack2(IMat::identity(n));
    std::unordered_set<Bits> seen;
    seen.reserve(1 << 21);
    std::vector<Bits> frontier{id};
    seen.insert(id);
    while (!frontier.empty()) {
      std::vector<Bits> next;
      for (Bits x : frontier)
        for (Bits y : g) {
          Bits z = mul2(x, y, n);
          if (seen.insert(z).second) {
            next.push_back(z);
            if (seen.size() > limit) return 0;
          }
        }
      frontier.swap(next);
    }
    return seen.size();
  }
  if (p < 2 || p > 127) throw InvalidInput("modulus must be between 2 and 127");
  auto reduce = [&](const IMat& m) {
    std::string s(static_cast<size_t>(n) * n, '\0');
    for (size_t i = 0; i < s.size(); ++i) s[i] = static_cast<char>(((m.a[i] % p) + p) % p);
    return s;
  };
  auto mul = [&](const std::string& x, const std::string& y) {
    std::string z(x.size(), '\0');
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int k = 0; k < n; ++k) s += x[i * n + k] * y[k * n + j];
        z[i * n + j] = static_cast<char>(s % p);
      }
    return z;
  };
  std::vector<std::string> g;
  for (auto& m : gens) g.push_back(reduce(m));
  std::unordered_set<std::string> seen;
  std::vector<std::string> frontier{reduce(IMat::identity(n))};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (auto& x : frontier)
      for (auto& y : g) {
        auto z = mul(x, y);
        if (seen.insert(z).second) {
          next.push_back(z);
          if (seen.size() > limit) return 0;
        }
      }
    frontier.swap(next);
  }
  return seen.size();
}

bool chain_rule_identity(const SurfaceModel& s, const Seg& s1, Pt v1, const Seg& s2, const Seg& sigma) {
  IMat m1 = s.twist_matrix(Loop::segment(s1)), mv = s.twist_matrix(Loop::acycle(v1)),
       m2 = s.twist_matrix(Loop::segment(s2)), ms = s.twist_matrix(Loop::segment(sigma));
  return power(m1 * mv * m2, 4) == ms * ms;
}

}  // namespace tropmono
