#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tropmono/lattice.hpp"

namespace tropmono {

// Primitive segments with nonzero integer weights.
struct WeightedGraph {
  std::map<Seg, i64> edges;

  // accumulates; an entry reaching zero is dropped
  void add(const Seg& s, i64 w);
  // every primitive piece of [p,q]
  void add_path(Pt p, Pt q, i64 w);
  i64 weight(const Seg& s) const;
  bool empty() const { return edges.empty(); }
  std::set<Pt> vertices() const;
  std::vector<Seg> incident(Pt v) const;
  WeightedGraph mapped(const AffineMap& A) const;
  WeightedGraph& operator+=(const WeightedGraph& o);
  bool operator==(const WeightedGraph&) const = default;
};

WeightedGraph operator*(i64 k, const WeightedGraph& g);

// sum of weight * primitive direction out of v
Pt balance_defect(const WeightedGraph& g, Pt v);

// interior vertices of the polygon where balancing fails
std::set<Pt> check_balancing(const WeightedGraph& g, const Polygon& poly);

// two graph edges overlapping or crossing away from common endpoints
bool has_conflicts(const WeightedGraph& g);

struct Bridge {
  Seg segment;
  Pt interior_end;
  Pt boundary_end;
  auto operator<=>(const Bridge&) const = default;
};

// true when s is a bridge; fills the end on the adjoint boundary
bool is_bridge(const Polygon& poly, const Polygon& adjoint, const Seg& s, Pt* interior_end = nullptr);
std::vector<Bridge> bridges(const Polygon& poly);

struct Loop {
  enum Kind { ACycle = 0, Segment = 1 };
  Kind kind = ACycle;
  Pt v;     // ACycle
  Seg seg;  // Segment
  static Loop acycle(Pt p) { return {ACycle, p, Seg()}; }
  static Loop segment(const Seg& s) { return {Segment, Pt(), s}; }
  auto operator<=>(const Loop&) const = default;
};
std::string to_string(const Loop& l);

// Isotopy key: A-cycles by point, bridges by their end on the adjoint boundary,
// any other segment by itself.
struct LoopKey {
  int kind = 0;  // 0 acycle, 1 bridge class, 2 segment
  Pt v;
  Seg seg;
  auto operator<=>(const LoopKey&) const = default;
};
std::string to_string(const LoopKey& k);

class IsotopyClassifier {
 public:
  explicit IsotopyClassifier(const Polygon& poly);
  LoopKey key(const Loop& l) const;
  LoopKey key(const Seg& s) const { return key(Loop::segment(s)); }
  const Polygon& polygon() const { return poly_; }
  const Polygon& adjoint() const { return adj_; }

 private:
  Polygon poly_, adj_;
};

}  // namespace tropmono
