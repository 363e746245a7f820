#include <doctest.h>

#include "polygons.hpp"
#include "tropmono/pipelines.hpp"

using namespace tropmono;
using fixtures::square;
using fixtures::triangle;

TEST_CASE("acycle axiom") {
  Engine E(triangle(3));
  int id = E.axiom_acycle({1, 1});
  const Fact& f = E.fact(id);
  CHECK(f.shape == Fact::Single);
  CHECK(f.flavor == Flavor::Geometric);
  CHECK(f.exponent == 1);
  CHECK(E.axiom_acycle({1, 1}) == id);  // deduplicated
  CHECK_THROWS_AS(E.axiom_acycle({0, 0}), RuleError);
  CHECK_THROWS_AS(E.axiom_acycle({5, 5}), RuleError);
  CHECK(E.exponent(Loop::acycle({1, 1}), Flavor::Homological) == 1);
}

TEST_CASE("rule preconditions") {
  Engine E(triangle(4));
  int a = E.axiom_acycle({1, 1});
  int b = E.axiom_acycle({2, 1});
  CHECK_THROWS_AS(E.gcd_combine(a, b), RuleError);
  CHECK(E.fact(E.gcd_combine(a, a)).exponent == 1);
  int h = E.project(a);
  CHECK(E.fact(h).flavor == Flavor::Homological);
  CHECK_THROWS_AS(E.project(h), RuleError);
  CHECK_THROWS_AS(E.bridge_transfer(a, Seg({0, 0}, {1, 1})), RuleError);
  CHECK_THROWS_AS(E.chase(a, {1, 1}), RuleError);
  CHECK_THROWS_AS(E.power(a, 2), RuleError);

  int corner = pipeline_corner(E, {1, 1});
  const Fact& c = E.fact(corner);
  CHECK(c.shape == Fact::Single);
  CHECK(c.exponent == 1);
  std::vector<Seg> same, other;
  for (auto& br : bridges(E.polygon())) (br.interior_end == Pt{1, 1} ? same : other).push_back(br.segment);
  REQUIRE(same.size() >= 2);
  REQUIRE(!other.empty());
  CHECK_THROWS_AS(E.bridge_transfer(corner, other[0]), RuleError);
  Seg target = same[0] == c.loop.seg ? same[1] : same[0];
  CHECK(E.fact(E.bridge_transfer(corner, target)).exponent == 1);
  CHECK_THROWS_AS(E.humphries(build_snake(triangle(4)), {}), RuleError);
}

TEST_CASE("chain relation rule") {
  Engine E(triangle(4));
  SurjectivityReport r = derive_surjectivity(E);
  REQUIRE(r.snake);
  const Snake& s = *r.snake;
  auto hom = [&](const Loop& l) { return *E.obtain(l, 1, true); };
  int s1 = E.project(hom(Loop::segment(s.segments[0])));
  int v1 = E.project(hom(Loop::acycle(s.chain[1])));
  int s2 = E.project(hom(Loop::segment(s.segments[1])));
  int sq = E.chain_rule_square(s1, v1, s2, s.bridge);
  CHECK(E.fact(sq).exponent == 2);
  CHECK(E.fact(sq).flavor == Flavor::Homological);
  CHECK_THROWS_AS(E.chain_rule_square(s1, v1, s2, s.segments[0]), RuleError);
}

TEST_CASE("side pipeline on deg-6") {
  Engine E(triangle(6));
  auto ids = pipeline_side(E, {1, 1}, {4, 1});
  CHECK(ids.size() == 3);
  for (int id : ids) CHECK(E.fact(id).exponent == 1);
}

TEST_CASE("derivations") {
  struct Row {
    Polygon p;
    std::string status;
  };
  for (auto& r : std::vector<Row>{{triangle(3), "certified"}, {triangle(4), "certified"}, {square(3), "certified"},
                                  {square(4), "obstructed"}, {square(2), "certified"}}) {
    Engine E(r.p);
    SurjectivityReport rep = derive_surjectivity(E);
    CHECK(rep.status == r.status);
    if (rep.status == "certified") {
      REQUIRE(rep.geometric_root);
      CHECK(E.fact(*rep.geometric_root).shape == Fact::Generates);
      std::string why;
      CHECK_MESSAGE(replay_certificate(E.certificate(rep.geometric_root), &why), why);
    }
  }
}

TEST_CASE("deg-4 covers every segment geometrically") {
  Engine E(triangle(4));
  SurjectivityOptions opt;
  opt.all_segments = true;
  derive_surjectivity(E, opt);
  for (auto& s : segments_off_boundary(E.polygon())) CHECK(E.exponent(Loop::segment(s), Flavor::Geometric) == 1);
  std::string why;
  CHECK_MESSAGE(replay_certificate(E.certificate(), &why), why);
}

TEST_CASE("mark and rollback") {
  Engine E(triangle(4));
  auto m = E.mark();
  pipeline_corner(E, {1, 1});
  CHECK(E.nodes().size() > m.nodes);
  E.rollback(m);
  CHECK(E.nodes().size() == m.nodes);
  CHECK(E.exponent(Loop::acycle({1, 1}), Flavor::Geometric) == 0);
}

TEST_CASE("replay rejects tampering") {
  Engine E(triangle(3));
  SurjectivityReport rep = derive_surjectivity(E);
  json cert = E.certificate(rep.geometric_root);
  CHECK(replay_certificate(cert));
  json bad = cert;
  bad["nodes"][0]["digest"] = "0";
  CHECK_FALSE(replay_certificate(bad));
  bad = cert;
  bad["nodes"].back()["premises"] = json::array();
  CHECK_FALSE(replay_certificate(bad));
  bad = cert;
  bad["polygon"]["vertices"][1] = json::array({4, 0});
  CHECK_FALSE(replay_certificate(bad));
}

TEST_CASE("digests depend on the polygon") {
  Fact f;
  f.loop = Loop::acycle({1, 1});
  f.exponent = 1;
  auto d = node_digest("acycle", json{{"v", json::array({1, 1})}}, {}, f);
  CHECK(d == node_digest("acycle", json{{"v", json::array({1, 1})}}, {}, f));
  CHECK(d != node_digest("acycle", json{{"v", json::array({1, 2})}}, {}, f));
  Engine A(triangle(3)), B(triangle(4));
  CHECK(A.node(A.axiom_acycle({1, 1})).digest != B.node(B.axiom_acycle({1, 1})).digest);
}
