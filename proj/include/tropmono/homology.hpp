#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tropmono/graphs.hpp"
#include "tropmono/subdivision.hpp"

namespace tropmono {

using IVec = std::vector<i64>;

struct IMat {
  int n = 0;
  std::vector<i64> a;  // row-major n x n
  IMat() = default;
  explicit IMat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
  static IMat identity(int n);
  i64& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  i64 operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  bool operator==(const IMat&) const = default;
};
IMat operator*(const IMat& x, const IMat& y);
IMat power(const IMat& m, int k);
IVec operator*(const IMat& m, const IVec& v);

// J = [[0, I], [-I, 0]] in the basis (a_1..a_g, b_1..b_g)
IMat standard_form(int g);
bool is_symplectic(const IMat& m);
// x -> x + <x,c> c
IMat transvection(const IVec& c);
// <x,y> = x^T J y
i64 symplectic_pairing(const IVec& x, const IVec& y);

// Invariant factors (nonzero diagonal of the Smith form), nonnegative.
std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m);

// Doubled blown-up polygon. Cells: a vertex for every (lattice point, incident
// edge of the triangulation); the two copies of every edge; arcs of the small
// circles between consecutive edges; two hexagons per triangle and a bigon per
// boundary edge filling the puncture.
class SurfaceModel {
 public:
  static SurfaceModel build(const Polygon& poly);
  static SurfaceModel build(const Subdivision& unimodular);

  const Polygon& polygon() const { return poly_; }
  const Subdivision& triangulation() const { return tri_; }
  i64 genus() const { return static_cast<i64>(interior_.size()); }
  i64 punctures() const { return b_; }
  i64 num_vertices() const { return nv_; }
  i64 num_edges() const { return static_cast<i64>(edges_.size()); }
  i64 num_faces() const { return static_cast<i64>(faces_.size()); }
  i64 euler_characteristic() const { return nv_ - num_edges() + num_faces(); }
  i64 rank_h1() const { return rank_h1_; }
  // a_v, b_v together with the boundaries span the cycles (SNF check)
  bool basis_verified() const { return basis_ok_; }
  // <a_v, b_w> = delta_vw computed cellularly
  bool pairing_verified() const { return pairing_ok_; }
  // every triangulation edge loop has the class b_a - b_b
  bool edge_classes_verified() const { return edge_classes_ok_; }

  const std::vector<Pt>& interior() const { return interior_; }  // colex order
  int index_of(Pt v) const;

  IVec loop_class(const Loop& l) const;
  i64 intersection(const Loop& l1, const Loop& l2) const;
  IMat twist_matrix(const Loop& l) const { return transvection(loop_class(l)); }

  // cutting along every edge loop leaves one pair of pants per triangle
  bool pants_check(std::string* why = nullptr) const;

  // explicit integer 1-cycles on the cell complex
  IVec cycle_acycle(Pt v) const;
  IVec cycle_edge(const Seg& e) const;  // oriented from e.a to e.b
  IVec cycle_b(Pt v) const;
  // cellular pairing with a_v: copy-1 edges at v counted away from v
  i64 phi(Pt v, const IVec& cycle) const;
  IVec boundary1(const IVec& chain) const;  // vertex coefficients

 private:
  struct Edge {
    int from, to;
    int kind;  // 0 copy1, 1 copy2, 2 arc
    int tedge;
    Pt at;  // arcs only
  };
  struct Face {
    std::vector<std::pair<int, int>> boundary;  // (edge, sign)
    int triangle;                                // -1 for bigons
  };
  void construct();

  Polygon poly_;
  Subdivision tri_;
  i64 b_ = 0;
  i64 nv_ = 0;
  std::vector<Seg> tedges_;
  std::map<Seg, int> tedge_index_;
  std::map<std::pair<Pt, int>, int> vertex_;  // (point, t-edge) -> vertex
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::map<Pt, std::vector<int>> arcs_at_;
  std::vector<int> copy1_, copy2_;  // per t-edge
  std::vector<Pt> interior_;
  std::map<Pt, int> index_;
  std::map<Pt, Pt> parent_;  // tree towards the boundary
  i64 rank_h1_ = 0;
  bool basis_ok_ = false, pairing_ok_ = false, edge_classes_ok_ = false;
};

// BFS closure of the matrices reduced mod p; stops at limit elements (returns 0 then).
std::uint64_t subgroup_order_mod_p(const std::vector<IMat>& gens, int p, std::uint64_t limit = 50'000'000);

// |Sp(2g, F_p)| = p^{g^2} prod_{i=1..g} (p^{2i} - 1)
std::uint64_t symplectic_group_order(int g, std::uint64_t p);

// (M1 Mv M2)^4 == Msigma^2
bool chain_rule_identity(const SurfaceModel& s, const Seg& s1, Pt v1, const Seg& s2, const Seg& sigma);

bool pants_check(const Subdivision& unimodular, std::string* why = nullptr);

}  // namespace tropmono
