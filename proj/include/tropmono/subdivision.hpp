#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropmono/lattice.hpp"

namespace tropmono {

struct HeightFunction {
  std::map<Pt, Q> values;
  bool operator==(const HeightFunction&) const = default;
};

// CCW vertex list of a 2-cell starting at its lexicographically smallest vertex
using Cell = std::vector<Pt>;

Cell canonical_cell(const std::vector<Pt>& pts);

struct Subdivision {
  Polygon polygon;
  std::vector<Cell> cells;  // sorted
  HeightFunction witness;

  std::set<Seg> edges() const;
  std::set<Seg> interior_edges() const;
  std::set<Seg> boundary_edges() const;
  std::set<Pt> vertices() const;
  // true if s lies on some edge of the subdivision
  bool supports(const Seg& s) const;
};

// affine function a + b*x + c*y
struct Affine {
  Q a, b, c;
  Q operator()(Pt p) const { return a + b * p.x + c * p.y; }
};
Affine affine_through(Pt p0, const Q& h0, Pt p1, const Q& h1, Pt p2, const Q& h2);

bool segment_on_boundary(const Polygon& poly, Pt u, Pt w);

Subdivision subdivision_from_heights(const Polygon& poly, const HeightFunction& h);

bool is_unimodular(const Subdivision& s);

// Heights inducing exactly the given complex, or nullopt when it is not regular.
// Cells may list flat vertices (vertices of neighbouring cells lying on an edge).
std::optional<HeightFunction> regularity_heights_for(const Polygon& poly, const std::vector<Cell>& cells);

Subdivision extend_subdivision(const Polygon& poly, const Subdivision& inner);

Subdivision unimodular_refinement(const Subdivision& s);

struct TropicalCurve {
  struct Vertex {
    Q x, y;
  };
  struct Edge {
    int from, to;
    Seg dual;
    i64 weight;
  };
  struct Ray {
    int from;
    Pt direction;
    Seg dual;
    i64 weight;
  };
  std::vector<Vertex> vertices;  // one per cell, in cell order
  std::vector<Edge> edges;
  std::vector<Ray> rays;
};

TropicalCurve dual_tropical_curve(const Subdivision& s);

// balancing at every vertex, orthogonality to dual edges, and the three cardinality equalities
bool check_tropical_curve(const Subdivision& s, const TropicalCurve& c, std::string* why = nullptr);

}  // namespace tropmono
