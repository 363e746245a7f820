#include "tropmono/commands.hpp"

#include <sstream>

namespace tropmono {

namespace {

json schema(json j) {
  j["schema"] = "1";
  return j;
}

std::vector<i64> parse_ints(const std::string& s, size_t n, const char* what) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    i64 v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("malformed ") + what + ": " + s);
    }
    if (pos != tok.size()) throw InvalidInput(std::string("malformed ") + what + ": " + s);
    out.push_back(v);
  }
  if (out.size() != n) throw InvalidInput(std::string("malformed ") + what + ": " + s);
  return out;
}

json loop_list(const std::vector<Pt>& pts) {
  json a = json::array();
  for (Pt p : pts) a.push_back(to_json(p));
  return a;
}

json fact_summary(const Engine& E, const Loop& l) {
  json j = json::object();
  for (Flavor f : {Flavor::Geometric, Flavor::Homological}) j[to_string(f)] = E.exponent(l, f);
  return j;
}

}  // namespace

Pt parse_point(const std::string& s) {
  auto v = parse_ints(s, 2, "point");
  return {v[0], v[1]};
}

Seg parse_segment(const std::string& s) {
  auto v = parse_ints(s, 4, "segment");
  return Seg({v[0], v[1]}, {v[2], v[3]});
}

Loop parse_loop(const std::string& s) {
  if (s.rfind("v:", 0) == 0) return Loop::acycle(parse_point(s.substr(2)));
  if (s.rfind("s:", 0) == 0) return Loop::segment(parse_segment(s.substr(2)));
  throw InvalidInput("loop must be v:x,y or s:x1,y1,x2,y2");
}

json analyze_report(const Polygon& poly) {
  auto [a, v] = analyze(poly);
  json j{{"g", a.g}, {"b", a.b}, {"smooth", a.smooth}, {"mu", to_string(v.mu)},
         {"algebraic_mu", to_string(v.algebraic_mu)}, {"polygon", to_json(poly)}};
  if (a.g > 0) {
    j["d"] = a.d;
    j["n"] = a.n;
    j["adjoint"] = to_json(a.adjoint);
  }
  if (a.d == 2) {
    j["divisors"] = a.divisors;
    j["adjoint_length_check"] = a.adjoint_length_check;
  }
  if (!v.mu_reason.empty()) j["mu_reason"] = v.mu_reason;
  if (!v.algebraic_mu_reason.empty()) j["algebraic_mu_reason"] = v.algebraic_mu_reason;
  return schema(j);
}

json subdivide_report(const Polygon& poly, const std::optional<HeightFunction>& heights) {
  Subdivision S;
  if (heights) {
    S = subdivision_from_heights(poly, *heights);
  } else {
    HeightFunction h;
    for (Pt v : poly.vertices()) h.values[v] = 0;
    S = unimodular_refinement(subdivision_from_heights(poly, h));
  }
  Subdivision replay = subdivision_from_heights(poly, S.witness);
  TropicalCurve c = dual_tropical_curve(S);
  std::string why;
  bool curve_ok = check_tropical_curve(S, c, &why);
  json j = to_json(S);
  j["unimodular"] = is_unimodular(S);
  j["witness_replay"] = replay.cells == S.cells;
  j["tropical_curve"] = json{{"vertices", c.vertices.size()}, {"edges", c.edges.size()}, {"rays", c.rays.size()},
                             {"balanced", curve_ok}};
  if (!curve_ok) j["tropical_curve"]["why"] = why;
  return schema(j);
}

json certify_segment_report(const Polygon& poly, const Seg& sigma) {
  auto [a, v] = analyze(poly);
  if (a.g == 0) throw InvalidInput("genus zero");
  if (!sigma.is_primitive() || !poly.contains(sigma.a) || !poly.contains(sigma.b))
    throw InvalidInput(to_string(sigma) + " is not a primitive segment of the polygon");
  if (poly.on_boundary(sigma.a) && poly.on_boundary(sigma.b))
    throw InvalidInput(to_string(sigma) + " has both ends on the boundary");
  Engine E(poly);
  bool homological = false;
  if (a.d == 0) {
    pipeline_corner(E, a.adjoint.vertices()[0]);
  } else if (a.d == 2) {
    for (Pt k : a.adjoint.vertices()) pipeline_corner(E, k);
    for (auto& [p, q] : a.adjoint.edges()) pipeline_side(E, p, q);
    bridge_closure(E);
    if (a.n > 1) {
      homological = true;
      homological_bridge_closure(E);
    }
  }
  Loop target = Loop::segment(sigma);
  std::string failure;
  try {
    pipeline_interior(E, sigma, homological);
  } catch (const CertificationFailure& e) {
    failure = e.what();
  }
  std::optional<int> root;
  for (Flavor f : {Flavor::Geometric, Flavor::Homological})
    if (!root && E.exponent(target, f) == 1) root = E.obtain(target, 1, f == Flavor::Homological);
  if (!root) {
    auto g = E.best(target, Flavor::Geometric), h = E.best(target, Flavor::Homological);
    if (g && (!h || E.fact(*g).exponent <= E.fact(*h).exponent))
      root = g;
    else
      root = h;
    if (root && !(E.fact(*root).loop == target)) root = E.bridge_transfer(*root, sigma);
  }
  if (!root) throw CertificationFailure(failure.empty() ? "no twist power derived for " + to_string(sigma) : failure);
  json cert = E.certificate(root);
  const Fact& f = E.fact(*root);
  json j{{"segment", to_json(sigma)}, {"flavor", to_string(f.flavor)}, {"exponent", f.exponent},
         {"known", fact_summary(E, target)}, {"certificate", cert}};
  return schema(j);
}

json check_certificate_report(const json& doc) {
  // accepts a bare certificate or a certify report wrapping one
  const json& cert = doc.is_object() && !doc.contains("nodes") && doc.contains("certificate") ? doc["certificate"] : doc;
  std::string why;
  bool ok = replay_certificate(cert, &why);
  json j{{"valid", ok}};
  if (!ok) j["why"] = why;
  if (ok && cert.contains("nodes")) j["nodes"] = cert["nodes"].size();
  return schema(j);
}

json snake_report(const Polygon& poly) {
  Snake s = build_snake(poly);
  std::string why;
  bool ok = check_snake(poly, s, &why);
  json segs = json::array();
  for (auto& q : s.segments) segs.push_back(to_json(q));
  json j{{"chain", loop_list(s.chain)}, {"segments", segs}, {"bridge", to_json(s.bridge)}, {"valid", ok}};
  if (!ok) j["why"] = why;
  // intersection pattern of the Humphries family, in the order a_1, s_1, ..., bridge
  SurfaceModel S = SurfaceModel::build(poly);
  std::vector<Loop> family;
  for (Pt p : s.chain)
    if (poly.in_interior(p)) family.push_back(Loop::acycle(p));
  for (auto& q : s.segments) family.push_back(Loop::segment(q));
  family.push_back(Loop::segment(s.bridge));
  json loops = json::array(), mat = json::array();
  for (auto& l : family) {
    loops.push_back(to_json(l));
    json row = json::array();
    for (auto& k : family) row.push_back(S.intersection(l, k));
    mat.push_back(row);
  }
  j["loops"] = loops;
  j["intersections"] = mat;
  return schema(j);
}

BuiltGraph build_requested_graph(const Polygon& poly, const GraphRequest& r) {
  auto need = [&](const std::optional<Pt>& p, const char* name) {
    if (!p) throw InvalidInput(r.family + " graph needs --" + name);
    return *p;
  };
  const std::string& f = r.family;
  if (f == "corner") return build_corner_graph(poly, need(r.kappa, "kappa"));
  if (f == "side") return build_side_graph(poly, need(r.kappa, "kappa"), need(r.xi, "xi"));
  if (f == "propagation") {
    if (r.b != 1) return build_general_propagation(poly, need(r.kappa, "kappa"), r.swap, r.a, r.b);
    return build_propagation_graph(poly, need(r.kappa, "kappa"), r.swap, r.a);
  }
  if (f == "gcd1") return build_gcd1_graph(poly, need(r.kappa, "kappa"), r.swap, r.m, r.l);
  if (f == "gcd2") return build_gcd2_graph(poly, need(r.kappa, "kappa"), r.swap, r.m, static_cast<int>(r.which));
  if (f == "gcdedges") return build_gcdedges_graph(poly, need(r.kappa, "kappa"), r.swap, r.l);
  if (f == "even-bridge") return build_even_bridge_graph(poly, need(r.kappa, "kappa"), r.swap, r.l);
  if (f == "ray-sweep")
    return build_ray_sweep(poly, need(r.kappa, "kappa"), need(r.kappa_p, "kappa-p"), need(r.v, "v"), r.m1, r.m2,
                           r.swap);
  if (f == "interior") {
    if (!r.segment) throw InvalidInput("interior graph needs --segment");
    return build_interior_graph(poly, *r.segment);
  }
  if (f == "divisible")
    return build_divisible_graph(poly, r.d, need(r.kappa, "kappa"), need(r.kappa_p, "kappa-p"), need(r.v, "v"), r.m1,
                                 r.m2);
  throw InvalidInput("unknown graph family " + f);
}

json graph_report(const Polygon& poly, const GraphRequest& r) {
  BuiltGraph b = build_requested_graph(poly, r);
  auto unbalanced = check_balancing(b.graph, poly);
  json ub = json::array();
  for (Pt p : unbalanced) ub.push_back(to_json(p));
  json named = json::object(), exempt = json::array();
  for (auto& [k, s] : b.named) named[k] = to_json(s);
  for (Pt p : b.exempt) exempt.push_back(to_json(p));
  json j = to_json(b.graph);
  j["family"] = b.family;
  j["named"] = named;
  j["weights"] = b.weights;
  j["unbalanced"] = ub;
  j["exempt"] = exempt;
  if (!b.chain.empty()) j["chain"] = loop_list(b.chain);
  auto c = certify_admissible(b.graph, poly, b.hint, b.exempt);
  if (!c) throw CertificationFailure("graph is not admissible: no unimodular regular subdivision found");
  j["admissibility"] = json{{"method", c->method}, {"subdivision", to_json(c->subdivision)}};
  return schema(j);
}

json homology_report(const Polygon& poly, const std::vector<Loop>& loops) {
  SurfaceModel S = SurfaceModel::build(poly);
  json j{{"genus", S.genus()},
         {"punctures", S.punctures()},
         {"euler_characteristic", S.euler_characteristic()},
         {"rank_h1", S.rank_h1()},
         {"basis_verified", S.basis_verified()},
         {"pairing_verified", S.pairing_verified()},
         {"edge_classes_verified", S.edge_classes_verified()},
         {"basis", loop_list(S.interior())}};
  json out = json::array();
  for (auto& l : loops) {
    IMat m = S.twist_matrix(l);
    out.push_back(json{{"loop", to_json(l)},
                       {"class", to_json(S.loop_class(l))},
                       {"twist", to_json(m)},
                       {"symplectic", is_symplectic(m)}});
  }
  j["loops"] = out;
  json mat = json::array();
  for (auto& l : loops) {
    json row = json::array();
    for (auto& k : loops) row.push_back(S.intersection(l, k));
    mat.push_back(row);
  }
  j["intersections"] = mat;
  return schema(j);
}

json verdict_report(const Polygon& poly, bool all_segments) {
  auto [a, v] = analyze(poly);
  json j{{"g", a.g}, {"mu", to_string(v.mu)}, {"algebraic_mu", to_string(v.algebraic_mu)}};
  if (a.g == 0) {
    j["status"] = "not-applicable";
    return schema(j);
  }
  j["d"] = a.d;
  j["n"] = a.n;
  Engine E(poly);
  SurjectivityReport r = derive_surjectivity(E, {all_segments});
  j["status"] = r.status;
  if (!r.obstruction.empty()) j["obstruction"] = r.obstruction;
  std::optional<int> root = r.geometric_root ? r.geometric_root : r.homological_root;
  if (root) {
    j["certificate"] = E.certificate(root);
    j["certified"] = to_string(E.fact(*root).flavor);
  }
  if (all_segments && root) {
    json segs = json::array();
    for (auto& s : segments_off_boundary(poly)) segs.push_back(json{{"segment", to_json(s)}, {"known", fact_summary(E, Loop::segment(s))}});
    j["segments"] = segs;
  }
  // the verdict logic and the derivation must agree
  bool mu = v.mu == VerdictValue::Yes, amu = v.algebraic_mu == VerdictValue::Yes;
  if (mu != r.geometric_root.has_value() || (amu && !root))
    throw CertificationFailure("derivation does not match the verdict");
  return schema(j);
}

}  // namespace tropmono
