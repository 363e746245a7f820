#include "tropmono/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace tropmono {

std::string to_string(Flavor f) { return f == Flavor::Geometric ? "geometric" : "homological"; }

namespace {

const char* shape_name(Fact::Shape s) {
  switch (s) {
    case Fact::Single: return "single";
    case Fact::Composite: return "composite";
    default: return "generates";
  }
}

Flavor weaker(Flavor a, Flavor b) { return (a == Flavor::Homological || b == Flavor::Homological) ? Flavor::Homological : Flavor::Geometric; }

Fact single(Flavor f, const Loop& l, i64 k) {
  Fact x;
  x.flavor = f;
  x.shape = Fact::Single;
  x.loop = l;
  x.exponent = k;
  return x;
}

Fact composite(Flavor f, const WeightedGraph& g) {
  Fact x;
  x.flavor = f;
  x.shape = Fact::Composite;
  x.graph = g;
  return x;
}

[[noreturn]] void fail(const std::string& rule, const std::string& msg) { throw RuleError(rule + ": " + msg); }

void expect_keys(const std::string& rule, const json& params, std::initializer_list<const char*> keys) {
  if (!params.is_object() || params.size() != keys.size()) fail(rule, "unexpected parameters");
  for (const char* k : keys)
    if (!params.contains(k)) fail(rule, std::string("missing parameter ") + k);
}

std::string hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

i64 get_int(const std::string& rule, const json& j) {
  if (!j.is_number_integer()) fail(rule, "expected an integer parameter");
  return j.get<i64>();
}

}  // namespace

json to_json(const Fact& f) {
  json j{{"flavor", to_string(f.flavor)}, {"shape", shape_name(f.shape)}};
  if (f.shape == Fact::Single) {
    j["loop"] = to_json(f.loop);
    j["exponent"] = f.exponent;
  } else if (f.shape == Fact::Composite) {
    j["graph"] = to_json(f.graph);
  }
  return j;
}

Fact fact_from_json(const json& j) {
  if (!j.is_object() || !j.contains("flavor") || !j.contains("shape")) throw InvalidInput("malformed fact");
  Fact f;
  std::string fl = j["flavor"].is_string() ? j["flavor"].get<std::string>() : "";
  if (fl == "geometric")
    f.flavor = Flavor::Geometric;
  else if (fl == "homological")
    f.flavor = Flavor::Homological;
  else
    throw InvalidInput("unknown flavor");
  std::string sh = j["shape"].is_string() ? j["shape"].get<std::string>() : "";
  if (sh == "single") {
    f.shape = Fact::Single;
    f.loop = loop_from_json(j.at("loop"));
    if (!j.at("exponent").is_number_integer()) throw InvalidInput("bad exponent");
    f.exponent = j["exponent"].get<i64>();
  } else if (sh == "composite") {
    f.shape = Fact::Composite;
    f.graph = graph_from_json(j.at("graph"));
  } else if (sh == "generates") {
    f.shape = Fact::Generates;
  } else {
    throw InvalidInput("unknown shape");
  }
  return f;
}

std::uint64_t node_digest(const std::string& rule, const json& params, const std::vector<std::uint64_t>& premises,
                          const Fact& conclusion) {
  std::string s = rule + "|" + params.dump() + "|";
  for (auto d : premises) s += hex(d) + ",";
  s += "|" + to_json(conclusion).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Engine::Engine(const Polygon& poly) : poly_(poly), iso_(poly) {
  if (poly.dim() != 2) throw InvalidInput("not two-dimensional");
  if (poly.interior_points().empty()) throw InvalidInput("genus zero");
}

const SurfaceModel& Engine::surface() const {
  if (!surface_) surface_ = std::make_shared<SurfaceModel>(SurfaceModel::build(poly_));
  return *surface_;
}

Fact Engine::conclude(const std::string& rule, const json& params, const std::vector<int>& premises) const {
  auto prem = [&](size_t i) -> const Fact& {
    if (premises.size() <= i) fail(rule, "missing premise");
    int id = premises[i];
    if (id < 0 || id >= static_cast<int>(nodes_.size())) fail(rule, "premise out of range");
    return nodes_[id].conclusion;
  };
  auto count = [&](size_t n) {
    if (premises.size() != n) fail(rule, "expected " + std::to_string(n) + " premises");
  };

  if (rule == "acycle") {
    expect_keys(rule, params, {"v"});
    count(0);
    Pt v = pt_from_json(params["v"]);
    if (!poly_.in_interior(v)) fail(rule, to_string(v) + " is not an interior lattice point");
    return single(Flavor::Geometric, Loop::acycle(v), 1);
  }
  if (rule == "rea") {
    expect_keys(rule, params, {"graph", "witness"});
    count(0);
    WeightedGraph g = graph_from_json(params["graph"]);
    if (g.empty()) fail(rule, "empty graph");
    AdmissibilityCertificate c;
    c.graph = g;
    c.witness = heights_from_json(params["witness"]);
    try {
      c.subdivision = subdivision_from_heights(poly_, c.witness);
    } catch (const std::exception& e) {
      fail(rule, std::string("witness: ") + e.what());
    }
    std::string why;
    if (!verify_certificate(c, poly_, {}, &why)) fail(rule, why);
    std::vector<IVec> cls;
    for (auto& [s, m] : g.edges) cls.push_back(surface().loop_class(Loop::segment(s)));
    for (size_t i = 0; i < cls.size(); ++i)
      for (size_t j = i + 1; j < cls.size(); ++j)
        if (symplectic_pairing(cls[i], cls[j]) != 0) fail(rule, "graph loops intersect");
    return composite(Flavor::Geometric, g);
  }
  if (rule == "chase") {
    expect_keys(rule, params, {"v"});
    count(2);
    Pt v = pt_from_json(params["v"]);
    const Fact& c = prem(0);
    const Fact& a = prem(1);
    if (c.shape != Fact::Composite) fail(rule, "first premise is not a composite fact");
    if (a.shape != Fact::Single || !(a.loop == Loop::acycle(v)) || a.exponent != 1)
      fail(rule, "second premise is not the A-cycle at " + to_string(v));
    if (!poly_.in_interior(v)) fail(rule, to_string(v) + " is not interior");
    auto inc = c.graph.incident(v);
    if (inc.size() != 1) fail(rule, to_string(v) + " does not have valency one");
    i64 w = c.graph.weight(inc[0]);
    if (w != 1 && w != -1) fail(rule, "weight " + std::to_string(w) + " is not +-1");
    return single(weaker(c.flavor, a.flavor), Loop::segment(inc[0]), 1);
  }
  if (rule == "absorb") {
    expect_keys(rule, params, {"segment", "times"});
    count(2);
    Seg s = seg_from_json(params["segment"]);
    i64 t = get_int(rule, params["times"]);
    const Fact& c = prem(0);
    const Fact& k = prem(1);
    if (c.shape != Fact::Composite || k.shape != Fact::Single) fail(rule, "premise shapes");
    if (!(k.loop == Loop::segment(s))) fail(rule, "known fact is not about " + to_string(s));
    if (!c.graph.edges.count(s)) fail(rule, to_string(s) + " is not in the graph");
    if (t == 0) fail(rule, "zero multiplier");
    WeightedGraph g = c.graph;
    g.add(s, -t * k.exponent);
    return composite(weaker(c.flavor, k.flavor), g);
  }
  if (rule == "bridge_transfer") {
    expect_keys(rule, params, {"segment"});
    count(1);
    Seg s = seg_from_json(params["segment"]);
    const Fact& k = prem(0);
    if (k.shape != Fact::Single || k.loop.kind != Loop::Segment) fail(rule, "premise is not a segment fact");
    if (k.loop.seg == s) fail(rule, "transfer to the same segment");
    Pt e1, e2;
    if (!is_bridge(poly_, iso_.adjoint(), k.loop.seg, &e1) || !is_bridge(poly_, iso_.adjoint(), s, &e2))
      fail(rule, "not a bridge");
    if (!(e1 == e2)) fail(rule, "bridges end at different interior points");
    return single(k.flavor, Loop::segment(s), k.exponent);
  }
  if (rule == "gcd") {
    expect_keys(rule, params, {});
    count(2);
    const Fact& a = prem(0);
    const Fact& b = prem(1);
    if (a.shape != Fact::Single || b.shape != Fact::Single) fail(rule, "premises are not single facts");
    if (!(a.loop == b.loop)) fail(rule, "premises concern different loops");
    if (a.flavor != b.flavor) fail(rule, "premises have different flavors");
    return single(a.flavor, a.loop, std::gcd(a.exponent, b.exponent));
  }
  if (rule == "project") {
    expect_keys(rule, params, {});
    count(1);
    Fact f = prem(0);
    if (f.flavor != Flavor::Geometric) fail(rule, "premise already homological");
    f.flavor = Flavor::Homological;
    return f;
  }
  if (rule == "chain_rule_square") {
    expect_keys(rule, params, {"s1", "v1", "s2", "sigma"});
    count(3);
    Seg s1 = seg_from_json(params["s1"]), s2 = seg_from_json(params["s2"]), sg = seg_from_json(params["sigma"]);
    Pt v1 = pt_from_json(params["v1"]);
    Loop want[3] = {Loop::segment(s1), Loop::acycle(v1), Loop::segment(s2)};
    for (size_t i = 0; i < 3; ++i) {
      const Fact& f = prem(i);
      if (f.shape != Fact::Single || f.flavor != Flavor::Homological || !(f.loop == want[i]) || f.exponent != 1)
        fail(rule, "premise " + std::to_string(i) + " is not the homological fact for " + to_string(want[i]));
    }
    if (!poly_.in_interior(v1)) fail(rule, "v1 not interior");
    if (!chain_rule_identity(surface(), s1, v1, s2, sg)) fail(rule, "matrix identity does not hold");
    return single(Flavor::Homological, Loop::segment(sg), 2);
  }
  if (rule == "merge") {
    expect_keys(rule, params, {"from", "to"});
    count(1);
    Seg from = seg_from_json(params["from"]), to = seg_from_json(params["to"]);
    const Fact& c = prem(0);
    if (c.shape != Fact::Composite) fail(rule, "premise is not composite");
    if (from == to || !c.graph.edges.count(from) || !c.graph.edges.count(to)) fail(rule, "segments not in the graph");
    if (!(iso_.key(from) == iso_.key(to))) fail(rule, "segments are not isotopic");
    WeightedGraph g = c.graph;
    i64 m = g.weight(from);
    g.add(from, -m);
    g.add(to, m);
    return composite(c.flavor, g);
  }
  if (rule == "collapse") {
    expect_keys(rule, params, {"segment"});
    count(1);
    Seg s = seg_from_json(params["segment"]);
    const Fact& c = prem(0);
    if (c.shape != Fact::Composite || !c.graph.edges.count(s)) fail(rule, "segment not in the composite");
    i64 sum = 0;
    for (auto& [t, m] : c.graph.edges) {
      if (!(iso_.key(t) == iso_.key(s))) fail(rule, "graph has more than one isotopy class");
      sum += m;
    }
    if (sum == 0) fail(rule, "weights cancel");
    return single(c.flavor, Loop::segment(s), std::abs(sum));
  }
  if (rule == "power") {
    expect_keys(rule, params, {"k"});
    count(1);
    i64 k = get_int(rule, params["k"]);
    const Fact& c = prem(0);
    if (c.shape != Fact::Composite) fail(rule, "premise is not composite");
    if (k == 0 || k == 1) fail(rule, "trivial power");
    return composite(c.flavor, k * c.graph);
  }
  if (rule == "humphries") {
    expect_keys(rule, params, {"chain", "segments", "bridge"});
    Snake s;
    if (!params["chain"].is_array() || !params["segments"].is_array()) fail(rule, "malformed snake");
    for (auto& p : params["chain"]) s.chain.push_back(pt_from_json(p));
    for (auto& q : params["segments"]) s.segments.push_back(seg_from_json(q));
    s.bridge = seg_from_json(params["bridge"]);
    std::string why;
    if (!check_snake(poly_, s, &why)) fail(rule, "not a snake: " + why);
    std::vector<Loop> want;
    for (Pt p : s.chain)
      if (poly_.in_interior(p)) want.push_back(Loop::acycle(p));
    for (auto& q : s.segments) want.push_back(Loop::segment(q));
    want.push_back(Loop::segment(s.bridge));
    count(want.size());
    Flavor fl = Flavor::Geometric;
    for (size_t i = 0; i < want.size(); ++i) {
      const Fact& f = prem(i);
      if (f.shape != Fact::Single || !(f.loop == want[i]) || f.exponent != 1)
        fail(rule, "premise " + std::to_string(i) + " is not tau for " + to_string(want[i]));
      fl = weaker(fl, f.flavor);
    }
    Fact g;
    g.flavor = fl;
    g.shape = Fact::Generates;
    return g;
  }
  fail(rule, "unknown rule");
}

int Engine::add(Node n) {
  n.conclusion = conclude(n.rule, n.params, n.premises);
  std::vector<std::uint64_t> pd;
  for (int p : n.premises) pd.push_back(nodes_[p].digest);
  n.digest = node_digest(n.rule, n.params, pd, n.conclusion) ^ node_digest("polygon", to_json(poly_), {}, Fact{});
  auto it = by_digest_.find(n.digest);
  if (it != by_digest_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  by_digest_[n.digest] = id;
  nodes_.push_back(std::move(n));
  offer(id);
  return id;
}

void Engine::offer(int id) {
  const Fact& f = nodes_[id].conclusion;
  if (f.shape != Fact::Single) return;
  LoopKey k = iso_.key(f.loop);
  std::vector<int> slots{static_cast<int>(Flavor::Homological)};
  if (f.flavor == Flavor::Geometric) slots.push_back(static_cast<int>(Flavor::Geometric));
  for (int s : slots) {
    auto it = store_.find({k, s});
    if (it == store_.end() || nodes_[it->second].conclusion.exponent > f.exponent ||
        (nodes_[it->second].conclusion.exponent == f.exponent &&
         nodes_[it->second].conclusion.flavor != f.flavor && f.flavor == static_cast<Flavor>(s)))
      store_[{k, s}] = id;
  }
}

void Engine::rollback(const Mark& m) {
  nodes_.resize(m.nodes);
  for (auto it = by_digest_.begin(); it != by_digest_.end();)
    it = it->second >= static_cast<int>(m.nodes) ? by_digest_.erase(it) : std::next(it);
  store_ = m.store;
}

int Engine::axiom_acycle(Pt v) { return add({"acycle", json{{"v", to_json(v)}}, {}, {}, 0}); }

int Engine::axiom_rea(const AdmissibilityCertificate& cert) {
  return add({"rea", json{{"graph", to_json(cert.graph)}, {"witness", to_json(cert.witness)}}, {}, {}, 0});
}

int Engine::chase(int c, Pt v) {
  auto a = obtain(Loop::acycle(v), 1, false);
  if (!a) fail("chase", "no A-cycle at " + to_string(v));
  return add({"chase", json{{"v", to_json(v)}}, {c, *a}, {}, 0});
}

int Engine::absorb(int c, int s, i64 times) {
  const Fact& k = fact(s);
  if (k.shape != Fact::Single || k.loop.kind != Loop::Segment) fail("absorb", "known fact is not about a segment");
  return add({"absorb", json{{"segment", to_json(k.loop.seg)}, {"times", times}}, {c, s}, {}, 0});
}

int Engine::bridge_transfer(int s, const Seg& target) {
  return add({"bridge_transfer", json{{"segment", to_json(target)}}, {s}, {}, 0});
}

int Engine::gcd_combine(int a, int b) { return add({"gcd", json::object(), {a, b}, {}, 0}); }

int Engine::project(int g) { return add({"project", json::object(), {g}, {}, 0}); }

int Engine::chain_rule_square(int s1, int v1, int s2, const Seg& sigma) {
  const Fact &f1 = fact(s1), &fv = fact(v1), &f2 = fact(s2);
  return add({"chain_rule_square",
              json{{"s1", to_json(f1.loop.seg)}, {"v1", to_json(fv.loop.v)}, {"s2", to_json(f2.loop.seg)},
                   {"sigma", to_json(sigma)}},
              {s1, v1, s2},
              {},
              0});
}

int Engine::merge(int c, const Seg& from, const Seg& to) {
  return add({"merge", json{{"from", to_json(from)}, {"to", to_json(to)}}, {c}, {}, 0});
}

int Engine::collapse(int c) {
  const Fact& f = fact(c);
  if (f.shape != Fact::Composite || f.graph.empty()) fail("collapse", "premise is not a nonempty composite");
  return add({"collapse", json{{"segment", to_json(f.graph.edges.begin()->first)}}, {c}, {}, 0});
}

int Engine::power(int c, i64 k) { return add({"power", json{{"k", k}}, {c}, {}, 0}); }

int Engine::humphries(const Snake& s, const std::vector<int>& premises) {
  json chain = json::array(), segs = json::array();
  for (Pt p : s.chain) chain.push_back(to_json(p));
  for (auto& q : s.segments) segs.push_back(to_json(q));
  return add({"humphries", json{{"chain", chain}, {"segments", segs}, {"bridge", to_json(s.bridge)}}, premises, {}, 0});
}

std::optional<int> Engine::best(const Loop& l, Flavor f) const {
  auto it = store_.find({iso_.key(l), static_cast<int>(f)});
  if (it == store_.end()) return std::nullopt;
  return it->second;
}

i64 Engine::exponent(const Loop& l, Flavor f) const {
  auto b = best(l, f);
  return b ? fact(*b).exponent : 0;
}

std::optional<int> Engine::obtain(const Loop& l, i64 divides, bool allow_homological) {
  if (l.kind == Loop::ACycle) {
    if (!poly_.in_interior(l.v)) return std::nullopt;
    return axiom_acycle(l.v);
  }
  auto pick = [&](Flavor f) -> std::optional<int> {
    auto b = best(l, f);
    if (!b) return std::nullopt;
    i64 e = fact(*b).exponent;
    if (divides != 0 && divides % e != 0) return std::nullopt;
    return b;
  };
  auto b = pick(Flavor::Geometric);
  if (!b && allow_homological) b = pick(Flavor::Homological);
  if (!b) return std::nullopt;
  if (!(fact(*b).loop == l)) b = bridge_transfer(*b, l.seg);
  return b;
}

int Engine::reduce(int c, bool allow_homological) {
  for (;;) {
    const Fact& f = fact(c);
    if (f.shape != Fact::Composite || f.graph.empty()) return c;
    WeightedGraph g = f.graph;
    bool moved = false;
    for (auto& [s, m] : g.edges)
      if (auto k = obtain(Loop::segment(s), m, allow_homological)) {
        c = absorb(c, *k, m / fact(*k).exponent);
        moved = true;
        break;
      }
    if (moved) continue;
    std::map<LoopKey, Seg> first;
    for (auto& [s, m] : g.edges) {
      LoopKey k = iso_.key(s);
      if (k.kind != 1) continue;
      auto it = first.find(k);
      if (it == first.end()) {
        first[k] = s;
      } else {
        c = merge(c, s, it->second);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (g.edges.size() == 1) return collapse(c);
    for (Pt v : g.vertices()) {
      if (!poly_.in_interior(v)) continue;
      auto inc = g.incident(v);
      if (inc.size() != 1 || std::abs(g.weight(inc[0])) != 1) continue;
      chase(c, v);
      moved = true;
      break;
    }
    if (!moved) return c;
  }
}

json Engine::certificate(std::optional<int> root) const {
  std::vector<int> keep;
  if (root) {
    std::vector<char> need(nodes_.size(), 0);
    std::vector<int> stack{*root};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (need[x]) continue;
      need[x] = 1;
      for (int p : nodes_[x].premises) stack.push_back(p);
    }
    for (size_t i = 0; i < nodes_.size(); ++i)
      if (need[i]) keep.push_back(static_cast<int>(i));
  } else {
    keep.resize(nodes_.size());
    std::iota(keep.begin(), keep.end(), 0);
  }
  std::map<int, int> renum;
  json out = json::array();
  for (int old : keep) {
    int id = static_cast<int>(renum.size());
    renum[old] = id;
    const Node& n = nodes_[old];
    json prem = json::array();
    for (int p : n.premises) prem.push_back(renum.at(p));
    out.push_back(json{{"id", id},
                       {"rule", n.rule},
                       {"params", n.params},
                       {"premises", prem},
                       {"conclusion", to_json(n.conclusion)},
                       {"digest", hex(n.digest)}});
  }
  json doc{{"schema", "1"}, {"polygon", to_json(poly_)}, {"nodes", out}};
  if (root) doc["root"] = renum.at(*root);
  return doc;
}

bool replay_certificate(const json& cert, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  try {
    if (!cert.is_object()) return bad("certificate is not an object");
    for (auto& [k, v] : cert.items())
      if (k != "schema" && k != "polygon" && k != "nodes" && k != "root") return bad("unexpected field " + k);
    if (!cert.contains("schema") || cert["schema"] != "1") return bad("unsupported schema");
    Polygon poly = polygon_from_json(cert.at("polygon"));
    if (!(to_json(poly) == cert["polygon"])) return bad("polygon not in canonical form");
    Engine E(poly);
    const json& nodes = cert.at("nodes");
    if (!nodes.is_array() || nodes.empty()) return bad("no nodes");
    std::uint64_t salt = node_digest("polygon", to_json(poly), {}, Fact{});
    for (size_t i = 0; i < nodes.size(); ++i) {
      const json& n = nodes[i];
      std::string at = "node " + std::to_string(i) + ": ";
      if (!n.is_object() || n.size() != 6) return bad(at + "malformed node");
      if (!n.contains("id") || !n["id"].is_number_integer() || n["id"].get<i64>() != static_cast<i64>(i))
        return bad(at + "id out of sequence");
      if (!n.contains("rule") || !n["rule"].is_string()) return bad(at + "missing rule");
      if (!n.contains("premises") || !n["premises"].is_array()) return bad(at + "missing premises");
      std::vector<int> prem;
      std::vector<std::uint64_t> pd;
      for (auto& p : n["premises"]) {
        if (!p.is_number_integer() || p.get<i64>() < 0 || p.get<i64>() >= static_cast<i64>(i))
          return bad(at + "premise does not refer to an earlier node");
        prem.push_back(static_cast<int>(p.get<i64>()));
        pd.push_back(E.nodes_[prem.back()].digest);
      }
      if (!n.contains("params") || !n.contains("conclusion") || !n.contains("digest")) return bad(at + "missing field");
      Node x;
      x.rule = n["rule"].get<std::string>();
      x.params = n["params"];
      x.premises = prem;
      try {
        x.conclusion = E.conclude(x.rule, x.params, prem);
      } catch (const std::exception& e) {
        return bad(at + e.what());
      }
      if (!(to_json(x.conclusion) == n["conclusion"])) return bad(at + "conclusion does not match the replay");
      x.digest = node_digest(x.rule, x.params, pd, x.conclusion) ^ salt;
      if (!n["digest"].is_string() || n["digest"].get<std::string>() != hex(x.digest))
        return bad(at + "digest mismatch");
      E.nodes_.push_back(std::move(x));
    }
    if (cert.contains("root")) {
      const json& r = cert["root"];
      if (!r.is_number_integer() || r.get<i64>() != static_cast<i64>(nodes.size()) - 1)
        return bad("root is not the last node");
    }
  } catch (const std::exception& e) {
    return bad(e.what());
  }
  if (why) why->clear();
  return true;
}

}  // namespace tropmono
