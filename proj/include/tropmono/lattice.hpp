#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tropmono {

using i64 = std::int64_t;
using Q = mpq_class;

// exit code 2 at the CLI
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 3 at the CLI
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Pt {
  i64 x = 0;
  i64 y = 0;
  auto operator<=>(const Pt&) const = default;
  Pt operator+(Pt o) const { return {x + o.x, y + o.y}; }
  Pt operator-(Pt o) const { return {x - o.x, y - o.y}; }
  Pt operator-() const { return {-x, -y}; }
  Pt operator*(i64 k) const { return {x * k, y * k}; }
};

inline i64 cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }
inline i64 dot(Pt a, Pt b) { return a.x * b.x + a.y * b.y; }
inline i64 orient(Pt a, Pt b, Pt c) { return cross(b - a, c - a); }
inline int sgn(i64 v) { return (v > 0) - (v < 0); }

i64 gcd64(i64 a, i64 b);
// direction divided by the gcd of its coordinates; (0,0) stays (0,0)
Pt primitive(Pt v);
i64 lattice_length(Pt a, Pt b);
bool colex_less(Pt a, Pt b);
std::string to_string(Pt p);

// Unordered pair of lattice points, stored with a < b.
struct Seg {
  Pt a, b;
  Seg() = default;
  Seg(Pt p, Pt q) : a(p < q ? p : q), b(p < q ? q : p) {
    if (p == q) throw InvalidInput("degenerate segment");
  }
  auto operator<=>(const Seg&) const = default;
  bool is_primitive() const { return lattice_length(a, b) == 1; }
  bool has_end(Pt p) const { return p == a || p == b; }
  Pt other(Pt p) const { return p == a ? b : a; }
  // closed segment membership
  bool contains(Pt p) const;
  bool contains_in_relative_interior(Pt p) const { return contains(p) && !has_end(p); }
};

std::string to_string(const Seg& s);

// True when the two closed segments share a point that is not a common endpoint
// (proper crossing, T-touch, or collinear overlap).
bool segments_conflict(const Seg& s, const Seg& t);

// All primitive segments on [p,q] in order from p.
std::vector<Seg> primitive_pieces(Pt p, Pt q);

class Polygon {
 public:
  Polygon() = default;
  static Polygon hull(std::vector<Pt> pts);

  const std::vector<Pt>& vertices() const { return v_; }
  bool empty() const { return v_.empty(); }
  int dim() const;
  // CCW edges (v_i, v_{i+1}); a 1-dimensional polygon has the single edge (v0, v1)
  std::vector<std::pair<Pt, Pt>> edges() const;
  std::vector<i64> edge_lengths() const;
  i64 twice_area() const;
  Q area() const { return Q(twice_area(), 2); }

  bool contains(Pt p) const;
  bool in_interior(Pt p) const;
  bool on_boundary(Pt p) const { return contains(p) && !in_interior(p); }
  bool is_vertex(Pt p) const;
  bool contains_polygon(const Polygon& o) const;

  std::vector<Pt> lattice_points() const;
  std::vector<Pt> interior_points() const;
  std::vector<Pt> boundary_points() const;

  bool operator==(const Polygon& o) const { return v_ == o.v_; }

 private:
  std::vector<Pt> v_;  // CCW, starts at the lexicographically smallest vertex
};

std::string to_string(const Polygon& p);

struct AffineMap {
  std::array<i64, 4> m{1, 0, 0, 1};  // row-major
  Pt t{0, 0};
  Pt operator()(Pt p) const { return {m[0] * p.x + m[1] * p.y + t.x, m[2] * p.x + m[3] * p.y + t.y}; }
  Pt linear(Pt p) const { return {m[0] * p.x + m[1] * p.y, m[2] * p.x + m[3] * p.y}; }
  i64 det() const { return m[0] * m[3] - m[1] * m[2]; }
  AffineMap inverse() const;
  AffineMap then(const AffineMap& o) const;  // o after *this
  Polygon apply(const Polygon& p) const;
  Seg apply(const Seg& s) const { return Seg((*this)(s.a), (*this)(s.b)); }
  bool operator==(const AffineMap&) const = default;
};

bool is_smooth(const Polygon& p);
Polygon adjoint_polygon(const Polygon& p);
i64 root_order(const Polygon& adjoint);

struct Normalization {
  AffineMap map;     // original -> normalized
  Polygon polygon;   // image of the input polygon
  Polygon adjoint;   // image of the adjoint
};

// kappa must be a vertex of the 2-dimensional adjoint. With swap_axes == false the
// adjoint edge leaving kappa counterclockwise goes to the x-axis.
Normalization normalize_at_vertex(const Polygon& p, Pt kappa, bool swap_axes = false);

struct Divisor {
  i64 d;
  std::vector<Pt> points;  // Delta_a(d), lex order
};
std::vector<Divisor> divisibility(const Polygon& adjoint);

enum class VerdictValue { Yes, No, HyperellipticDeferred, NotApplicable };
std::string to_string(VerdictValue v);

struct Verdict {
  VerdictValue mu = VerdictValue::NotApplicable;
  VerdictValue algebraic_mu = VerdictValue::NotApplicable;
  std::string mu_reason;
  std::string algebraic_mu_reason;
};

struct PolygonAnalysis {
  i64 g = 0;
  i64 b = 0;
  Polygon adjoint;
  int d = -1;
  i64 n = 0;
  bool smooth = false;
  std::vector<i64> divisors;
  // adjoint edge lengths agree with l - D^2 - 2 (only meaningful when d == 2)
  bool adjoint_length_check = true;
};

std::pair<PolygonAnalysis, Verdict> analyze(const Polygon& p);

}  // namespace tropmono
