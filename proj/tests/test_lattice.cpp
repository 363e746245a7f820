#include <doctest.h>

#include "oracles.hpp"
#include "polygons.hpp"
#include "tropmono/lattice.hpp"

using namespace tropmono;
using fixtures::square;
using fixtures::triangle;

TEST_CASE("primitive directions and lattice length") {
  CHECK(primitive({4, -6}) == Pt{2, -3});
  CHECK(primitive({0, 0}) == Pt{0, 0});
  CHECK(lattice_length({0, 0}, {6, 3}) == 3);
  CHECK(lattice_length({1, 1}, {2, 3}) == 1);
  CHECK(Seg({2, 1}, {0, 0}).a == Pt{0, 0});
  CHECK_THROWS_AS(Seg({1, 1}, {1, 1}), InvalidInput);
}

TEST_CASE("segment conflicts") {
  CHECK(segments_conflict(Seg({0, 0}, {2, 2}), Seg({0, 2}, {2, 0})));
  CHECK(segments_conflict(Seg({0, 0}, {2, 0}), Seg({1, 0}, {1, 1})));   // T-touch
  CHECK(segments_conflict(Seg({0, 0}, {2, 0}), Seg({1, 0}, {3, 0})));   // overlap
  CHECK_FALSE(segments_conflict(Seg({0, 0}, {1, 0}), Seg({1, 0}, {1, 1})));
  CHECK_FALSE(segments_conflict(Seg({0, 0}, {1, 0}), Seg({0, 1}, {1, 1})));
}

TEST_CASE("polygon basics against the enumeration oracle") {
  for (auto& [name, P] : fixtures::table()) {
    CAPTURE(name);
    auto c = oracle::count_points(P.vertices());
    CHECK(static_cast<i64>(P.interior_points().size()) == c.interior);
    CHECK(static_cast<i64>(P.boundary_points().size()) == c.boundary);
    // Pick
    CHECK(P.twice_area() == 2 * c.interior + c.boundary - 2);
  }
  CHECK(Polygon::hull({{0, 0}, {2, 2}, {1, 1}}).dim() == 1);
  CHECK(Polygon::hull({{3, 3}}).dim() == 0);
}

TEST_CASE("smoothness") {
  CHECK(is_smooth(triangle(4)));
  CHECK(is_smooth(square(3)));
  CHECK_FALSE(is_smooth(Polygon::hull({{0, 0}, {3, 0}, {0, 2}})));
  CHECK_FALSE(is_smooth(Polygon::hull({{0, 0}, {2, 1}, {1, 2}})));
}

TEST_CASE("adjoint polygon and root order") {
  CHECK(adjoint_polygon(triangle(4)) == Polygon::hull({{1, 1}, {2, 1}, {1, 2}}));
  CHECK(adjoint_polygon(triangle(3)).dim() == 0);
  CHECK(adjoint_polygon(triangle(2)).empty());
  for (auto& [name, P] : fixtures::table()) {
    CAPTURE(name);
    auto pts = oracle::interior_points(P.vertices());
    Polygon A = adjoint_polygon(P);
    if (A.dim() == 2) CHECK(root_order(A) == oracle::root_order(pts));
  }
  CHECK(root_order(adjoint_polygon(triangle(6))) == 3);
  CHECK(root_order(adjoint_polygon(square(4))) == 2);
}

TEST_CASE("normalization at an adjoint vertex") {
  Polygon P = triangle(6);
  Polygon A = adjoint_polygon(P);
  for (Pt k : A.vertices())
    for (bool sw : {false, true}) {
      Normalization N = normalize_at_vertex(P, k, sw);
      CHECK(std::abs(N.map.det()) == 1);
      CHECK(N.map(k) == Pt{0, 0});
      CHECK(N.adjoint.is_vertex({0, 0}));
      CHECK(N.adjoint.contains({1, 0}));
      CHECK(N.adjoint.contains({0, 1}));
      CHECK(N.polygon.on_boundary({-1, 0}));
      CHECK(N.polygon.on_boundary({0, -1}));
      AffineMap back = N.map.inverse();
      CHECK(back.apply(N.polygon) == P);
    }
  CHECK_THROWS_AS(normalize_at_vertex(P, {2, 2}), InvalidInput);
}

TEST_CASE("divisibility of the adjoint") {
  auto d6 = divisibility(adjoint_polygon(triangle(6)));
  REQUIRE(d6.size() == 1);
  CHECK(d6[0].d == 3);
  CHECK(divisibility(adjoint_polygon(triangle(4))).empty());
}

TEST_CASE("verdict table logic") {
  struct Row {
    Polygon p;
    i64 g;
    int d;
    i64 n;
    VerdictValue mu, amu;
  };
  std::vector<Row> rows = {
      {triangle(3), 1, 0, 1, VerdictValue::Yes, VerdictValue::Yes},
      {triangle(4), 3, 2, 1, VerdictValue::Yes, VerdictValue::Yes},
      {triangle(6), 10, 2, 3, VerdictValue::No, VerdictValue::Yes},
      {square(2), 1, 0, 1, VerdictValue::Yes, VerdictValue::Yes},
      {square(3), 4, 2, 1, VerdictValue::Yes, VerdictValue::Yes},
      {square(4), 9, 2, 2, VerdictValue::No, VerdictValue::No},
  };
  for (auto& r : rows) {
    auto [a, v] = analyze(r.p);
    CHECK(a.g == r.g);
    CHECK(a.d == r.d);
    CHECK(a.n == r.n);
    CHECK(v.mu == r.mu);
    CHECK(v.algebraic_mu == r.amu);
  }
  auto [a, v] = analyze(fixtures::rect12());
  CHECK(a.g == 0);
  CHECK(v.mu == VerdictValue::NotApplicable);
  CHECK_THROWS_WITH_AS(analyze(Polygon::hull({{0, 0}, {3, 0}, {0, 2}})), "polygon not smooth", InvalidInput);
  CHECK_THROWS_WITH_AS(analyze(Polygon::hull({{0, 0}, {3, 0}})), "not two-dimensional", InvalidInput);
}

TEST_CASE("hyperelliptic polygons are deferred") {
  Polygon P = Polygon::hull({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
  auto [a, v] = analyze(P);
  CHECK(a.d == 1);
  CHECK(v.mu == VerdictValue::HyperellipticDeferred);
}
