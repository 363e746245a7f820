#include <doctest.h>

#include "polygons.hpp"
#include "tropmono/builders.hpp"
#include "tropmono/certify.hpp"

using namespace tropmono;
using fixtures::square;
using fixtures::triangle;

namespace {

bool balanced_except(const BuiltGraph& b, const Polygon& P) {
  for (Pt v : check_balancing(b.graph, P))
    if (!b.exempt.count(v)) return false;
  return true;
}

bool certifies(const BuiltGraph& b, const Polygon& P) {
  auto c = certify_admissible(b.graph, P, b.hint, b.exempt);
  return c && verify_certificate(*c, P, b.exempt);
}

}  // namespace

TEST_CASE("weighted graph arithmetic") {
  WeightedGraph g;
  g.add_path({0, 0}, {3, 0}, 2);
  CHECK(g.edges.size() == 3);
  g.add(Seg({0, 0}, {1, 0}), -2);
  CHECK(g.edges.size() == 2);
  CHECK(g.weight(Seg({1, 0}, {2, 0})) == 2);
  CHECK_THROWS_AS(g.add(Seg({0, 0}, {2, 0}), 1), InvalidInput);
  WeightedGraph h = 3 * g;
  CHECK(h.weight(Seg({2, 0}, {3, 0})) == 6);
  CHECK(g.incident({2, 0}).size() == 2);
}

TEST_CASE("balancing") {
  Polygon P = triangle(4);
  WeightedGraph g;
  g.add_path({0, 1}, {3, 1}, 1);
  CHECK(check_balancing(g, P).empty());
  g.add(Seg({1, 1}, {1, 2}), 1);
  CHECK(check_balancing(g, P) == std::set<Pt>{{1, 1}, {1, 2}});
  CHECK(balance_defect(g, {1, 1}) == Pt{0, 1});
}

TEST_CASE("bridges and isotopy keys") {
  Polygon P = triangle(4);
  Polygon A = adjoint_polygon(P);
  Pt e;
  CHECK(is_bridge(P, A, Seg({0, 0}, {1, 1}), &e));
  CHECK(e == Pt{1, 1});
  CHECK(is_bridge(P, A, Seg({0, 2}, {1, 2})));
  CHECK_FALSE(is_bridge(P, A, Seg({1, 1}, {2, 1})));
  IsotopyClassifier iso(P);
  CHECK(iso.key(Seg({0, 0}, {1, 1})) == iso.key(Seg({0, 1}, {1, 1})));
  CHECK_FALSE(iso.key(Seg({0, 0}, {1, 1})) == iso.key(Seg({1, 0}, {2, 1})));
  CHECK(iso.key(Seg({1, 1}, {2, 1})).kind == 2);
  CHECK(iso.key(Loop::acycle({1, 1})).kind == 0);
  for (auto& b : bridges(P)) CHECK(A.on_boundary(b.interior_end));
}

TEST_CASE("corner and side graphs") {
  Polygon P = triangle(6);
  Polygon A = adjoint_polygon(P);
  for (Pt k : A.vertices()) {
    auto b = build_corner_graph(P, k);
    CHECK(b.graph.edges.size() == 3);
    CHECK(balanced_except(b, P));
    CHECK(certifies(b, P));
  }
  for (auto& [p, q] : A.edges()) {
    auto b = build_side_graph(P, p, q);
    CHECK(b.graph.edges.size() == 5);
    CHECK(certifies(b, P));
  }
  CHECK_THROWS_AS(build_corner_graph(P, {2, 2}), InvalidInput);
}

TEST_CASE("propagation weights") {
  Polygon P = triangle(6);
  for (i64 a = 1; a <= 3; ++a) {
    auto b = build_propagation_graph(P, {1, 1}, false, a);
    CHECK(b.weights.at("horizontal") == -2 * a);
    CHECK(b.weights.at("vertical") == -a - 1);
    CHECK(balanced_except(b, P));
    CHECK(certifies(b, P));
  }
  auto g = build_gcd1_graph(P, {1, 1}, false, 2, 3);
  CHECK(g.weights.at("vertical") == -(3 * 2 / 1 + 3 / 1));
  auto e = build_even_bridge_graph(P, {1, 1}, true, 2);
  CHECK(e.weights.at("horizontal") == -4);
  auto ge = build_gcdedges_graph(P, {1, 1}, false, 3);
  CHECK(ge.weights.at("horizontal") == -6);
  CHECK(ge.weights.at("beta_b") == 3);
  // balancing at (0,1) of the normalized frame forces -(l1 + 1) on the vertical chain
  CHECK(ge.weights.at("vertical") == -4);
  CHECK_THROWS_AS(build_propagation_graph(P, {1, 1}, false, 4), InvalidInput);
}

TEST_CASE("ray-sweep chain of the large rectangle") {
  Polygon P = Polygon::hull({{-1, -1}, {18, -1}, {18, 6}, {-1, 6}});
  auto b = build_ray_sweep(P, {0, 0}, {0, 1}, {16, 4}, 1, 1, false);
  CHECK(b.chain == std::vector<Pt>{{16, 4}, {1, 1}, {0, 0}});
  CHECK(b.exempt == Exempt{{16, 4}});
  CHECK(balanced_except(b, P));
  CHECK(certifies(b, P));
  CHECK(sweep_chain({16, 4}, {0, 1}, {0, 0}) == b.chain);
}

TEST_CASE("interior candidates exist for every segment of the quartic") {
  Polygon P = triangle(4);
  for (Pt a : P.lattice_points())
    for (Pt c : P.lattice_points()) {
      if (!(a < c) || lattice_length(a, c) != 1) continue;
      if (P.on_boundary(a) && P.on_boundary(c)) continue;
      auto cand = interior_graph_candidates(P, Seg(a, c), 2);
      CAPTURE(to_string(Seg(a, c)));
      REQUIRE_FALSE(cand.empty());
      CHECK(cand[0].graph.weight(Seg(a, c)) != 0);
      CHECK(check_balancing(cand[0].graph, P).empty());
    }
  CHECK_THROWS_AS(build_interior_graph(P, Seg({0, 0}, {1, 0})), InvalidInput);
}

TEST_CASE("snakes") {
  for (auto P : {triangle(3), triangle(4), triangle(6), square(3), square(4), square(2)}) {
    Snake s = build_snake(P);
    std::string why;
    CHECK_MESSAGE(check_snake(P, s, &why), why);
    CHECK(s.segments.size() == P.interior_points().size());
  }
}

TEST_CASE("admissibility certificates reject bad graphs") {
  Polygon P = triangle(4);
  WeightedGraph g;
  g.add(Seg({1, 1}, {2, 1}), 1);
  CHECK_THROWS_AS(certify_admissible(g, P), InvalidInput);
  WeightedGraph x;
  x.add_path({0, 1}, {3, 1}, 1);
  x.add(Seg({1, 0}, {2, 2}), 1);  // crosses the line y = 1 off the lattice
  bool rejected = false;
  try {
    rejected = !certify_admissible(x, P).has_value();
  } catch (const InvalidInput&) {
    rejected = true;
  }
  CHECK(rejected);
  auto b = build_corner_graph(P, {1, 1});
  auto c = certify_admissible(b.graph, P, b.hint);
  REQUIRE(c);
  AdmissibilityCertificate bad = *c;
  bad.witness.values[{1, 1}] += 100;
  CHECK_FALSE(verify_certificate(bad, P));
}
