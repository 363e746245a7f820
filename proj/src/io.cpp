#include "tropmono/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace tropmono {

namespace {

constexpr i64 kCoordLimit = i64(1) << 24;

i64 int_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string("expected an integer for ") + what);
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<i64>::max()))
    throw InvalidInput(std::string("integer out of range for ") + what);
  return j.get<i64>();
}

i64 coord(const json& j) {
  i64 v = int_from_json(j, "coordinate");
  if (v > kCoordLimit || v < -kCoordLimit) throw InvalidInput("coordinate out of range");
  return v;
}

}  // namespace

json to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(static_cast<i64>(z.get_si()));
  return json(z.get_str());
}

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<i64>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("bad integer string");
    return z;
  }
  throw InvalidInput("expected an integer");
}

json to_json(const Q& q) { return json::array({to_json(mpz_class(q.get_num())), to_json(mpz_class(q.get_den()))}); }

Q rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("rational must be [num, den]");
  mpz_class n = mpz_from_json(j[0]), d = mpz_from_json(j[1]);
  if (d == 0) throw InvalidInput("zero denominator");
  Q q(n, d);
  q.canonicalize();
  return q;
}

json to_json(Pt p) { return json::array({p.x, p.y}); }

Pt pt_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("point must be [x, y]");
  return {coord(j[0]), coord(j[1])};
}

json to_json(const Seg& s) { return json::array({to_json(s.a), to_json(s.b)}); }

Seg seg_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("segment must be [[x1,y1],[x2,y2]]");
  return Seg(pt_from_json(j[0]), pt_from_json(j[1]));
}

json to_json(const Polygon& p) {
  json v = json::array();
  for (Pt q : p.vertices()) v.push_back(to_json(q));
  return json{{"vertices", v}};
}

Polygon polygon_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw InvalidInput("polygon must be {\"vertices\": [[x,y], ...]}");
  std::vector<Pt> pts;
  for (auto& q : j["vertices"]) pts.push_back(pt_from_json(q));
  Polygon P = Polygon::hull(pts);
  if (P.dim() != 2) throw InvalidInput("not two-dimensional");
  for (Pt q : pts)
    if (!P.on_boundary(q)) throw InvalidInput("polygon not convex");
  // the listed boundary must go once around, counterclockwise or clockwise
  size_t n = pts.size();
  int turn = 0;
  for (size_t i = 0; i < n; ++i) {
    i64 o = orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
    if (o == 0) continue;
    if (turn == 0) turn = sgn(o);
    if (sgn(o) != turn) throw InvalidInput("polygon not convex");
  }
  return P;
}

json to_json(const WeightedGraph& g) {
  json e = json::array();
  for (auto& [s, m] : g.edges) e.push_back(json::array({to_json(s.a), to_json(s.b), m}));
  return json{{"edges", e}};
}

WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
    throw InvalidInput("graph must be {\"edges\": [[[x1,y1],[x2,y2],m], ...]}");
  WeightedGraph g;
  for (auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3) throw InvalidInput("graph edge must be [[x1,y1],[x2,y2],m]");
    Seg s(pt_from_json(e[0]), pt_from_json(e[1]));
    if (!s.is_primitive()) throw InvalidInput("graph edge " + to_string(s) + " is not primitive");
    i64 m = int_from_json(e[2], "weight");
    if (m == 0) throw InvalidInput("zero weight");
    if (g.edges.count(s)) throw InvalidInput("repeated graph edge " + to_string(s));
    g.add(s, m);
  }
  return g;
}

json to_json(const HeightFunction& h) {
  json a = json::array();
  for (auto& [p, v] : h.values) {
    json r = to_json(v);
    a.push_back(json::array({p.x, p.y, r[0], r[1]}));
  }
  return a;
}

HeightFunction heights_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("heights must be [[x,y,num,den], ...]");
  HeightFunction h;
  for (auto& r : j) {
    if (!r.is_array() || r.size() != 4) throw InvalidInput("height must be [x,y,num,den]");
    Pt p{coord(r[0]), coord(r[1])};
    if (h.values.count(p)) throw InvalidInput("repeated height at " + to_string(p));
    h.values[p] = rational_from_json(json::array({r[2], r[3]}));
  }
  return h;
}

json to_json(const Subdivision& s) {
  auto pts = s.polygon.lattice_points();
  std::map<Pt, size_t> idx;
  json P = json::array();
  for (size_t i = 0; i < pts.size(); ++i) {
    idx[pts[i]] = i;
    P.push_back(to_json(pts[i]));
  }
  json cells = json::array();
  for (auto& c : s.cells) {
    json cj = json::array();
    for (Pt p : c) cj.push_back(idx.at(p));
    cells.push_back(cj);
  }
  return json{{"points", P}, {"heights", to_json(s.witness)}, {"cells", cells}};
}

Subdivision subdivision_from_json(const Polygon& poly, const json& j) {
  if (!j.is_object() || !j.contains("heights")) throw InvalidInput("subdivision needs heights");
  Subdivision S = subdivision_from_heights(poly, heights_from_json(j["heights"]));
  if (j.contains("cells")) {
    auto pts = poly.lattice_points();
    std::vector<Cell> cells;
    for (auto& c : j["cells"]) {
      std::vector<Pt> v;
      for (auto& i : c) {
        i64 k = int_from_json(i, "cell index");
        if (k < 0 || k >= static_cast<i64>(pts.size())) throw InvalidInput("cell index out of range");
        v.push_back(pts[k]);
      }
      cells.push_back(canonical_cell(v));
    }
    std::sort(cells.begin(), cells.end());
    if (cells != S.cells) throw InvalidInput("cells do not match the heights");
  }
  return S;
}

json to_json(const Loop& l) {
  if (l.kind == Loop::ACycle) return json{{"acycle", to_json(l.v)}};
  return json{{"segment", to_json(l.seg)}};
}

Loop loop_from_json(const json& j) {
  if (j.is_object() && j.size() == 1 && j.contains("acycle")) return Loop::acycle(pt_from_json(j["acycle"]));
  if (j.is_object() && j.size() == 1 && j.contains("segment")) return Loop::segment(seg_from_json(j["segment"]));
  throw InvalidInput("loop must be {\"acycle\": [x,y]} or {\"segment\": [[..],[..]]}");
}

json to_json(const IMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json r = json::array();
    for (int k = 0; k < m.n; ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const IVec& v) { return json(v); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tropmono
