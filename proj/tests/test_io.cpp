#include <doctest.h>

#include "polygons.hpp"
#include "tropmono/commands.hpp"

using namespace tropmono;
using fixtures::triangle;

TEST_CASE("rationals and big integers") {
  Q q(mpz_class(-3), mpz_class(6));
  q.canonicalize();
  CHECK(to_json(q) == json::array({-1, 2}));
  CHECK(rational_from_json(json::array({4, -8})) == Q(-1, 2));
  CHECK_THROWS_AS(rational_from_json(json::array({1, 0})), InvalidInput);
  mpz_class big("123456789012345678901234567890");
  CHECK(to_json(big).is_string());
  CHECK(mpz_from_json(to_json(big)) == big);
}

TEST_CASE("polygon round trip") {
  Polygon P = triangle(4);
  CHECK(polygon_from_json(to_json(P)) == P);
  CHECK_THROWS_WITH_AS(polygon_from_json(json::parse(R"({"vertices":[[0,0],[4,0],[1,1],[0,4]]})")),
                       "polygon not convex", InvalidInput);
  CHECK_THROWS_WITH_AS(polygon_from_json(json::parse(R"({"vertices":[[0,0],[1,1],[2,2]]})")),
                       "not two-dimensional", InvalidInput);
  CHECK_THROWS_AS(polygon_from_json(json::parse(R"({"vertices":[[0,0],[100000000,0],[0,1]]})")), InvalidInput);
  CHECK_THROWS_AS(polygon_from_json(json::parse(R"({"points":[]})")), InvalidInput);
}

TEST_CASE("graph round trip") {
  WeightedGraph g;
  g.add_path({0, 0}, {2, 2}, -3);
  g.add(Seg({1, 1}, {1, 2}), 5);
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges":[[[0,0],[2,0],1]]})")), InvalidInput);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges":[[[0,0],[1,0],0]]})")), InvalidInput);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges":[[[0,0],[1,0],1],[[1,0],[0,0],2]]})")), InvalidInput);
}

TEST_CASE("subdivision round trip") {
  Polygon P = triangle(4);
  HeightFunction h;
  for (Pt p : P.lattice_points()) h.values[p] = Q(p.x * p.x + p.y * p.y + p.x * p.y);
  Subdivision S = subdivision_from_heights(P, h);
  json j = to_json(S);
  Subdivision back = subdivision_from_json(P, j);
  CHECK(back.cells == S.cells);
  CHECK(heights_from_json(j["heights"]) == h);
}

TEST_CASE("loops") {
  CHECK(loop_from_json(to_json(Loop::acycle({1, 2}))) == Loop::acycle({1, 2}));
  Loop s = Loop::segment(Seg({0, 0}, {1, 1}));
  CHECK(loop_from_json(to_json(s)) == s);
  CHECK(parse_loop("v:1,1") == Loop::acycle({1, 1}));
  CHECK(parse_loop("s:1,1,0,0") == s);
  CHECK_THROWS_AS(parse_loop("x:1"), InvalidInput);
  CHECK_THROWS_AS(parse_point("1"), InvalidInput);
}

TEST_CASE("facts and certificates survive serialization") {
  Engine E(triangle(3));
  auto rep = derive_surjectivity(E);
  json cert = E.certificate(rep.geometric_root);
  CHECK(cert["schema"] == "1");
  json again = json::parse(dump(cert));
  CHECK(replay_certificate(again));
  for (auto& n : E.nodes()) CHECK(fact_from_json(to_json(n.conclusion)) == n.conclusion);
}

TEST_CASE("reports") {
  json a = analyze_report(triangle(4));
  CHECK(a["schema"] == "1");
  CHECK(a["g"] == 3);
  json v = verdict_report(triangle(3), false);
  CHECK(v["mu"] == "surjective");
  json sq = verdict_report(fixtures::square(4), false);
  CHECK(sq["mu"] == "not-surjective");
  CHECK(dump(v) == dump(verdict_report(triangle(3), false)));
}
