#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropmono/certify.hpp"
#include "tropmono/graphs.hpp"
#include "tropmono/subdivision.hpp"

namespace tropmono {

// Output of every constructor, in the coordinates of the input polygon.
struct BuiltGraph {
  std::string family;
  WeightedGraph graph;
  std::optional<HeightFunction> hint;  // partial heights supporting the graph
  Exempt exempt;                       // interior points allowed to be unbalanced
  std::map<std::string, Seg> named;    // distinguished segments (sigma, rho1, ...)
  std::map<std::string, i64> weights;  // distinguished weights for reporting
  std::vector<Pt> chain;               // ray-sweep chain, when relevant
};

// Corner graph at a vertex kappa of the adjoint: three bridges at kappa with
// directions u1, u2, u1+u2 and weights +1, +1, -1.
BuiltGraph build_corner_graph(const Polygon& poly, Pt kappa);

// Chain through the adjoint edge [kappa, xi], extended by one step at both ends.
BuiltGraph build_side_graph(const Polygon& poly, Pt kappa, Pt xi);

// Graph P(a,b) normalized at kappa (x-axis along the adjoint edge leaving kappa
// counterclockwise unless swap_axes). Edges, with g = gcd(a,b):
//   H: (-1,0)..(a,0), weight -(a/g)(b+1)     V: (0,-1)..(0,b), weight -(b/g)(a+1)
//   [(0,b),(-1,0)], weight a/g               [(a,0),(0,-1)], weight b/g
//   D: (0,b)..(a,0), weight 1
BuiltGraph build_general_propagation(const Polygon& poly, Pt kappa, bool swap_axes, i64 a, i64 b);

BuiltGraph build_propagation_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 a);
BuiltGraph build_gcd1_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 m, i64 l);
// which = 0 for G, 1 for G'
BuiltGraph build_gcd2_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 m, int which);
BuiltGraph build_gcdedges_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 l1);
BuiltGraph build_even_bridge_graph(const Polygon& poly, Pt kappa, bool swap_axes, i64 l);

// Sweep chain from v towards `target` inside conv(v, pivot, target): each step
// rotates the ray from the current point towards pivot until it meets a lattice
// point, keeping the farthest one on that ray.
std::vector<Pt> sweep_chain(Pt v, Pt pivot, Pt target);

// G^{m1,m2}_{kappa,kappa',v}; with swapped the legs go to kappa and the chain ends at kappa'.
BuiltGraph build_ray_sweep(const Polygon& poly, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2, bool swapped = false);

// kappa' candidates: the two lattice points of the adjoint boundary next to kappa
std::vector<Pt> adjoint_neighbours(const Polygon& adjoint, Pt p);

// Ray-sweep graph at v with its two v-edges in the given proportions, plus a
// second ray-sweep graph at v anchored at the next vertex xi, balanced at v.
// first_leg selects which of the two v-edges of the first graph carries weight 1.
std::optional<BuiltGraph> build_diamond_graph(const Polygon& poly, Pt v, Pt kappa, Pt kappa_p, bool swapped,
                                              bool first_leg);

// All candidate interior graphs for sigma (at most `limit`), in search order.
std::vector<BuiltGraph> interior_graph_candidates(const Polygon& poly, const Seg& sigma, size_t limit = 64);
// First candidate that is conflict free; throws InvalidInput when both ends are on the boundary.
BuiltGraph build_interior_graph(const Polygon& poly, const Seg& sigma);

struct Snake {
  std::vector<Pt> chain;        // v0 .. vg
  std::vector<Seg> segments;    // sigma_1 .. sigma_g
  Seg bridge;                   // sigma
  Pt kappa;
  AffineMap to_normalized;
};
Snake build_snake(const Polygon& poly);
// chain intersections: consecutive +-1, others 0, checked combinatorially
bool check_snake(const Polygon& poly, const Snake& s, std::string* why = nullptr);

// h^{-1}(G_{kappa,kappa',u}) scaled by d around kappa, plus the closing edges,
// with u = kappa + (v - kappa)/d.
BuiltGraph build_divisible_graph(const Polygon& poly, i64 d, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2);

}  // namespace tropmono
