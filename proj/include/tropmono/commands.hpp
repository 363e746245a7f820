#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmono/io.hpp"
#include "tropmono/pipelines.hpp"

namespace tropmono {

// Reports behind the CLI commands. Each returns a JSON object carrying "schema":"1".
// InvalidInput maps to exit code 2, CertificationFailure to exit code 3.

json analyze_report(const Polygon& poly);
json subdivide_report(const Polygon& poly, const std::optional<HeightFunction>& heights);
json certify_segment_report(const Polygon& poly, const Seg& sigma);
json check_certificate_report(const json& cert);
json snake_report(const Polygon& poly);

struct GraphRequest {
  std::string family;  // corner side propagation gcd1 gcd2 gcdedges even-bridge ray-sweep interior divisible
  std::optional<Pt> kappa, kappa_p, xi, v;
  std::optional<Seg> segment;
  bool swap = false;
  i64 a = 1, b = 1, m = 1, l = 1, which = 0, m1 = 1, m2 = 1, d = 1;
};
BuiltGraph build_requested_graph(const Polygon& poly, const GraphRequest& r);
json graph_report(const Polygon& poly, const GraphRequest& r);

json homology_report(const Polygon& poly, const std::vector<Loop>& loops);
json verdict_report(const Polygon& poly, bool all_segments);

// "x,y"; "x1,y1,x2,y2"; loops as "v:x,y" or "s:x1,y1,x2,y2"
Pt parse_point(const std::string& s);
Seg parse_segment(const std::string& s);
Loop parse_loop(const std::string& s);

}  // namespace tropmono
