// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: acceptance [--expect-fail N]...  Exit status is 0 when the failing
// criteria are exactly the expected ones.
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "polygons.hpp"
#include "tropmono/commands.hpp"

using namespace tropmono;
using fixtures::square;
using fixtures::triangle;
using clk = std::chrono::steady_clock;

namespace {

constexpr double kVerdictSeconds = 1.0;
constexpr double kEngineSeconds = 30.0;
constexpr double kClosureSeconds = 60.0;
constexpr int kRandomHeights = 200;
constexpr int kCorruptions = 1000;
constexpr std::uint64_t kSeed = 0x5eed;

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

struct Result {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

// ---- 1 ----------------------------------------------------------------------

void verdict_table(Result& r) {
  double worst = 0;
  for (auto& [name, P] : fixtures::table()) {
    auto t0 = clk::now();
    auto [a, v] = analyze(P);
    json report = verdict_report(P, false);  // includes the certified derivation
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    r.require(dt < kVerdictSeconds, name + " slow");

    auto c = oracle::count_points(P.vertices());
    auto inner = oracle::interior_points(P.vertices());
    i64 g = c.interior;
    int d = g == 0 ? -1 : g == 1 ? 0 : (oracle::root_order(inner) == 0 ? 1 : 2);
    i64 n = d == 2 ? oracle::root_order(inner) : d == 0 ? 1 : 0;
    r.require(a.g == g, name + " g");
    r.require(a.b == c.boundary, name + " b");
    if (g == 0) {
      r.require(v.mu == VerdictValue::NotApplicable && v.algebraic_mu == VerdictValue::NotApplicable, name + " g=0");
      continue;
    }
    r.require(a.d == d, name + " d");
    if (d != 1) r.require(a.n == n, name + " n");
    bool mu = d == 0 || (d == 2 && n == 1);
    bool amu = mu || (d == 2 && n % 2 == 1);
    r.require(v.mu == (mu ? VerdictValue::Yes : VerdictValue::No), name + " mu");
    r.require(v.algebraic_mu == (amu ? VerdictValue::Yes : VerdictValue::No), name + " [mu]");
    r.require(report["mu"] == to_string(v.mu), name + " report");
  }
  r.detail << " slowest " << worst << "s";
}

// ---- 2 ----------------------------------------------------------------------

bool refinement_ok(const Polygon& P, const Subdivision& S, std::string& why) {
  Subdivision U = unimodular_refinement(S);
  if (static_cast<i64>(U.cells.size()) != P.twice_area()) return why = "cell count", false;
  for (auto& c : U.cells)
    if (c.size() != 3 || Polygon::hull(c).twice_area() != 1) return why = "cell area", false;
  Subdivision again = subdivision_from_heights(P, U.witness);
  if (again.cells != U.cells || dump(to_json(again)) != dump(to_json(U))) return why = "witness replay", false;
  return check_tropical_curve(U, dual_tropical_curve(U), &why);
}

void subdivision_suite(Result& r) {
  for (auto& [name, P] : fixtures::table()) {
    HeightFunction flat;
    for (Pt v : P.vertices()) flat.values[v] = 0;
    std::string why;
    r.require(refinement_ok(P, subdivision_from_heights(P, flat), why), name + " " + why);
  }
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  Polygon P = triangle(4);
  int ok = 0;
  for (int t = 0; t < kRandomHeights; ++t) {
    HeightFunction h;
    for (Pt p : P.lattice_points()) {
      Q q(num(rng), den(rng));
      q.canonicalize();
      h.values[p] = q;
    }
    Subdivision S = subdivision_from_heights(P, h);
    std::string why;
    bool good = subdivision_from_heights(P, S.witness).cells == S.cells && refinement_ok(P, S, why);
    ok += good;
    if (!good) r.require(false, "random heights #" + std::to_string(t) + " " + why);
  }
  r.detail << " random " << ok << "/" << kRandomHeights;
}

// ---- 3 ----------------------------------------------------------------------

void builder_suite(Result& r) {
  int checked = 0;
  auto admit = [&](const std::string& name, const Polygon& P, const BuiltGraph& b) {
    ++checked;
    auto bad = check_balancing(b.graph, P);
    for (Pt e : b.exempt) bad.erase(e);
    r.require(bad.empty(), name + " unbalanced");
    auto c = certify_admissible(b.graph, P, b.hint, b.exempt);
    r.require(c && verify_certificate(*c, P, b.exempt), name + " not certified");
  };
  auto weight = [&](const std::string& name, i64 got, i64 quoted) {
    if (got != quoted) r.require(false, name + ": got " + std::to_string(got) + ", stated " + std::to_string(quoted));
  };

  for (Polygon P : {triangle(4), triangle(6), square(3), square(4)}) {
    Polygon A = adjoint_polygon(P);
    for (Pt k : A.vertices()) admit("corner", P, build_corner_graph(P, k));
    for (auto& [p, q] : A.edges()) admit("side", P, build_side_graph(P, p, q));
  }

  Polygon T6 = triangle(6);
  for (bool sw : {false, true}) {
    for (i64 a = 1; a <= 3; ++a) {
      auto b = build_propagation_graph(T6, {1, 1}, sw, a);
      admit("propagation", T6, b);
      weight("propagation horizontal a=" + std::to_string(a), b.weights.at("horizontal"), -2 * a);
      weight("propagation vertical a=" + std::to_string(a), b.weights.at("vertical"), -a - 1);
    }
    for (auto [m, l] : {std::pair<i64, i64>{2, 3}, {3, 3}, {3, 2}, {1, 3}}) {
      auto b = build_gcd1_graph(T6, {1, 1}, sw, m, l);
      admit("gcd1", T6, b);
      i64 g = std::gcd(m, l);
      weight("gcd1 m=" + std::to_string(m) + " l=" + std::to_string(l), b.weights.at("vertical"), -(l * m / g + l / g));
    }
    for (i64 m = 1; m <= 3; ++m)
      for (int which : {0, 1}) admit("gcd2", T6, build_gcd2_graph(T6, {1, 1}, sw, m, which));
    auto ge = build_gcdedges_graph(T6, {1, 1}, sw, 3);
    admit("gcdedges", T6, ge);
    weight("gcdedges horizontal", ge.weights.at("horizontal"), -2 * 3);
    weight("gcdedges vertical", ge.weights.at("vertical"), -2);
    for (i64 l = 1; l <= 3; ++l) {
      auto eb = build_even_bridge_graph(T6, {1, 1}, sw, l);
      admit("even-bridge", T6, eb);
      weight("even-bridge horizontal", eb.weights.at("horizontal"), -2 * l);
    }
  }

  Polygon big = Polygon::hull({{-1, -1}, {18, -1}, {18, 6}, {-1, 6}});
  auto rs = build_ray_sweep(big, {0, 0}, {0, 1}, {16, 4}, 1, 1, false);
  admit("ray-sweep", big, rs);
  r.require(rs.exempt == Exempt{{16, 4}}, "ray-sweep exempt set");
  r.require(rs.chain == std::vector<Pt>{{16, 4}, {1, 1}, {0, 0}}, "ray-sweep chain");

  Polygon T4 = triangle(4);
  for (auto& s : segments_off_boundary(T4)) admit("interior " + to_string(s), T4, build_interior_graph(T4, s));

  Polygon S4 = square(4);
  for (auto& dv : divisibility(adjoint_polygon(S4)))
    admit("divisible d=" + std::to_string(dv.d), S4, build_divisible_graph(S4, dv.d, {1, 1}, {1, 2}, {3, 3}, 1, 1));
  r.detail << " graphs " << checked;
}

// ---- 4 ----------------------------------------------------------------------

void engine_coverage(Result& r) {
  auto t0 = clk::now();
  {
    Polygon P = triangle(4);
    Engine E(P);
    SurjectivityOptions opt;
    opt.all_segments = true;
    SurjectivityReport rep = derive_surjectivity(E, opt);
    int covered = 0, total = 0;
    auto pts = P.lattice_points();
    for (Pt a : pts)
      for (Pt b : pts) {
        if (!(a < b) || std::gcd(std::abs(b.x - a.x), std::abs(b.y - a.y)) != 1) continue;
        if (oracle::side(P.vertices(), a) == 0 && oracle::side(P.vertices(), b) == 0) continue;
        ++total;
        auto id = E.best(Loop::segment(Seg(a, b)), Flavor::Geometric);
        bool ok = id && E.fact(*id).shape == Fact::Single && E.fact(*id).exponent == 1 &&
                  E.fact(*id).loop == Loop::segment(Seg(a, b));
        if (!ok) {
          auto got = E.obtain(Loop::segment(Seg(a, b)), 1, false);
          ok = got && E.fact(*got).flavor == Flavor::Geometric;
        }
        covered += ok;
      }
    r.require(covered == total, "deg-4 coverage");
    r.require(rep.geometric_root && E.fact(*rep.geometric_root).shape == Fact::Generates, "deg-4 snake");
    std::string why;
    r.require(rep.geometric_root && replay_certificate(E.certificate(rep.geometric_root), &why), "deg-4 replay " + why);
    r.detail << " deg-4 " << covered << "/" << total;
  }
  {
    Polygon P = triangle(6);
    Engine E(P);
    int cube = pipeline_gcdedges(E, {1, 1}, false, 1);
    r.require(E.fact(cube).exponent == 3 && E.fact(cube).shape == Fact::Single, "deg-6 gcdedges cube");
    SurjectivityReport rep = derive_surjectivity(E);
    int cubes = 0;
    for (auto& br : bridges(P)) {
      i64 e = E.exponent(Loop::segment(br.segment), Flavor::Geometric);
      r.require(e == 1 || e == 3, "deg-6 bridge " + to_string(br.segment));
      cubes += e == 3;
      r.require(E.exponent(Loop::segment(br.segment), Flavor::Homological) == 1, "deg-6 homological bridge");
    }
    r.require(!rep.geometric_root, "deg-6 geometric generation claimed");
    r.require(rep.homological_root && E.fact(*rep.homological_root).shape == Fact::Generates, "deg-6 homological snake");
    std::string why;
    r.require(rep.homological_root && replay_certificate(E.certificate(rep.homological_root), &why),
              "deg-6 replay " + why);
    r.detail << " deg-6 cubed bridges " << cubes;
  }
  double dt = seconds_since(t0);
  r.require(dt < kEngineSeconds, "slow");
  r.detail << " " << dt << "s";
}

// ---- 5 ----------------------------------------------------------------------

std::vector<Loop> all_loops(const SurfaceModel& S) {
  std::vector<Loop> out;
  for (Pt v : S.interior()) out.push_back(Loop::acycle(v));
  for (auto& e : S.triangulation().edges()) out.push_back(Loop::segment(e));
  return out;
}

void homology_suite(Result& r) {
  size_t pairs = 0;
  for (Polygon P : {triangle(3), triangle(4), square(3)}) {
    SurfaceModel S = SurfaceModel::build(P);
    auto loops = all_loops(S);
    std::vector<IMat> M;
    for (auto& l : loops) {
      M.push_back(S.twist_matrix(l));
      r.require(is_symplectic(M.back()), "not symplectic " + to_string(l));
    }
    for (size_t i = 0; i < loops.size(); ++i)
      for (size_t j = 0; j < loops.size(); ++j) {
        i64 k = S.intersection(loops[i], loops[j]);
        if (k == 0) r.require(M[i] * M[j] == M[j] * M[i], "commutation");
        if (std::abs(k) == 1) r.require(M[i] * M[j] * M[i] == M[j] * M[i] * M[j], "braid");
        ++pairs;
      }
  }
  for (Polygon P : {triangle(4), triangle(6)}) {
    SurfaceModel S = SurfaceModel::build(P);
    Snake s = build_snake(P);
    r.require(chain_rule_identity(S, s.segments[0], s.chain[1], s.segments[1], s.bridge), "chain rule");
  }
  {
    SurfaceModel S = SurfaceModel::build(triangle(3));
    std::vector<IMat> gens = {S.twist_matrix(Loop::acycle({1, 1})), S.twist_matrix(Loop::segment(Seg({0, 0}, {1, 1})))};
    r.require(subgroup_order_mod_p(gens, 2) == oracle::sp_order(1, 2), "SL2(F2)");
    r.require(subgroup_order_mod_p(gens, 3) == oracle::sp_order(1, 3), "SL2(F3)");
  }
  {
    Polygon P = triangle(4);
    SurfaceModel S = SurfaceModel::build(P);
    Snake s = build_snake(P);
    std::vector<IMat> gens;
    for (Pt v : s.chain)
      if (P.in_interior(v)) gens.push_back(S.twist_matrix(Loop::acycle(v)));
    for (auto& q : s.segments) gens.push_back(S.twist_matrix(Loop::segment(q)));
    gens.push_back(S.twist_matrix(Loop::segment(s.bridge)));
    auto t0 = clk::now();
    std::uint64_t order = subgroup_order_mod_p(gens, 2);
    double dt = seconds_since(t0);
    r.require(gens.size() == 7, "snake size");
    r.require(order == oracle::sp_order(3, 2), "Sp(6,F2) order " + std::to_string(order));
    r.require(dt < kClosureSeconds, "closure slow");
    r.detail << " pairs " << pairs << ", |<7 twists> mod 2| = " << order << " in " << dt << "s";
  }
}

// ---- 6 ----------------------------------------------------------------------

void collect_leaves(const json& j, const json::json_pointer& at, std::vector<json::json_pointer>& out) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) collect_leaves(v, at / k, out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], at / i, out);
  } else {
    out.push_back(at);
  }
}

json corrupted(json v, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  if (v.is_boolean()) return !v.get<bool>();
  if (v.is_number_integer()) {
    i64 x = v.get<i64>();
    switch (pick(rng)) {
      case 0: return x + 1;
      case 1: return x - 1;
      default: return x == 0 ? i64{2} : -x;
    }
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.empty()) return "x";
    std::uniform_int_distribution<size_t> pos(0, s.size() - 1);
    size_t p = pos(rng);
    s[p] = s[p] == '1' ? '2' : '1';
    return s;
  }
  if (v.is_null()) return 0;
  return nullptr;
}

void certificate_integrity(Result& r) {
  std::vector<json> certs;
  for (Polygon P : {triangle(3), triangle(4), triangle(6), square(3)}) {
    Engine E(P);
    auto rep = derive_surjectivity(E);
    std::optional<int> root = rep.geometric_root ? rep.geometric_root : rep.homological_root;
    if (!root) continue;
    certs.push_back(E.certificate(root));
    r.require(replay_certificate(certs.back()), "pristine certificate rejected");
  }
  std::mt19937_64 rng(kSeed);
  int caught = 0, by_digest = 0;
  for (int t = 0; t < kCorruptions; ++t) {
    const json& base = certs[t % certs.size()];
    std::vector<json::json_pointer> leaves;
    collect_leaves(base, json::json_pointer(), leaves);
    std::uniform_int_distribution<size_t> pick(0, leaves.size() - 1);
    auto at = leaves[pick(rng)];
    json bad = base;
    bad[at] = corrupted(base[at], rng);
    std::string why;
    bool accepted = replay_certificate(bad, &why);
    if (!accepted) {
      ++caught;
      by_digest += why.find("digest") != std::string::npos;
    } else {
      r.require(false, "accepted corruption at " + at.to_string());
    }
  }
  r.detail << " caught " << caught << "/" << kCorruptions << " (" << by_digest << " only by digest)";
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) expected.insert(std::atoi(argv[++i]));

  struct Criterion {
    int id;
    const char* name;
    std::function<void(Result&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "verdict table", verdict_table},       {2, "subdivision suite", subdivision_suite},
      {3, "builder suite", builder_suite},       {4, "engine coverage", engine_coverage},
      {5, "homology suite", homology_suite},     {6, "certificate integrity", certificate_integrity},
  };
  std::set<int> failed;
  for (auto& c : criteria) {
    Result r;
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << " exception: " << e.what();
    }
    if (!r.pass) failed.insert(c.id);
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ":" << r.detail.str() << std::endl;
  }
  std::cout << failed.size() << " of " << criteria.size() << " criteria failed";
  if (!expected.empty()) std::cout << (failed == expected ? " (as expected)" : " (unexpected)");
  std::cout << "\n";
  return failed == expected ? 0 : 1;
}
