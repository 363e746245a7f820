#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tropmono/commands.hpp"

using namespace tropmono;

namespace {

Polygon load_polygon(const std::string& path) { return polygon_from_json(read_json_file(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy of tropical curves on toric surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report to this file");

  std::string poly_path;
  auto add_poly = [&](CLI::App* c) { c->add_option("polygon", poly_path, "polygon JSON file")->required(); };

  auto* analyze = app.add_subcommand("analyze", "genus, adjoint, root order and verdict");
  add_poly(analyze);

  auto* subdivide = app.add_subcommand("subdivide", "regular subdivision from heights, or a unimodular refinement");
  add_poly(subdivide);
  std::string heights_path;
  subdivide->add_option("--heights", heights_path, "JSON file with [[x,y,num,den], ...] or {\"heights\": ...}");

  auto* certify = app.add_subcommand("certify", "certificate for a segment twist, or replay a certificate");
  certify->add_option("polygon", poly_path, "polygon JSON file");
  std::string seg_text, check_path;
  certify->add_option("--segment", seg_text, "x1,y1,x2,y2");
  certify->add_option("--check", check_path, "certificate JSON to replay");

  auto* snake = app.add_subcommand("snake", "snake of primitive segments and its intersection pattern");
  add_poly(snake);

  auto* graph = app.add_subcommand("graph", "build a weighted graph and certify it admissible");
  add_poly(graph);
  GraphRequest req;
  std::string kappa, kappa_p, xi, v, gseg;
  graph->add_option("--family", req.family, "corner side propagation gcd1 gcd2 gcdedges even-bridge ray-sweep interior divisible")
      ->required();
  graph->add_option("--kappa", kappa, "x,y");
  graph->add_option("--kappa-p", kappa_p, "x,y");
  graph->add_option("--xi", xi, "x,y");
  graph->add_option("--v", v, "x,y");
  graph->add_option("--segment", gseg, "x1,y1,x2,y2");
  graph->add_flag("--swap", req.swap, "exchange the normalized axes");
  graph->add_option("--a", req.a);
  graph->add_option("--b", req.b);
  graph->add_option("--m", req.m);
  graph->add_option("--l", req.l);
  graph->add_option("--which", req.which, "0 for G, 1 for G'");
  graph->add_option("--m1", req.m1);
  graph->add_option("--m2", req.m2);
  graph->add_option("--d", req.d);

  auto* homology = app.add_subcommand("homology", "homology classes and twist matrices");
  add_poly(homology);
  std::vector<std::string> loops;
  homology->add_option("--loop", loops, "v:x,y or s:x1,y1,x2,y2 (repeatable)");

  auto* verdict = app.add_subcommand("verdict", "derive the surjectivity certificate or the obstruction");
  add_poly(verdict);
  bool all_segments = false;
  verdict->add_flag("--all-segments", all_segments, "derive every primitive segment off the boundary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    json report;
    int code = 0;
    if (*analyze) {
      report = analyze_report(load_polygon(poly_path));
    } else if (*subdivide) {
      std::optional<HeightFunction> h;
      if (!heights_path.empty()) {
        json hj = read_json_file(heights_path);
        h = heights_from_json(hj.is_object() ? hj.at("heights") : hj);
      }
      report = subdivide_report(load_polygon(poly_path), h);
    } else if (*certify) {
      if (!check_path.empty()) {
        report = check_certificate_report(read_json_file(check_path));
        if (!report["valid"].get<bool>()) code = 3;
      } else {
        if (seg_text.empty() || poly_path.empty()) throw InvalidInput("certify needs a polygon and --segment");
        report = certify_segment_report(load_polygon(poly_path), parse_segment(seg_text));
      }
    } else if (*snake) {
      report = snake_report(load_polygon(poly_path));
    } else if (*graph) {
      if (!kappa.empty()) req.kappa = parse_point(kappa);
      if (!kappa_p.empty()) req.kappa_p = parse_point(kappa_p);
      if (!xi.empty()) req.xi = parse_point(xi);
      if (!v.empty()) req.v = parse_point(v);
      if (!gseg.empty()) req.segment = parse_segment(gseg);
      report = graph_report(load_polygon(poly_path), req);
    } else if (*homology) {
      std::vector<Loop> ls;
      for (auto& s : loops) ls.push_back(parse_loop(s));
      report = homology_report(load_polygon(poly_path), ls);
    } else if (*verdict) {
      report = verdict_report(load_polygon(poly_path), all_segments);
    }
    std::string text = dump(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InvalidInput("cannot write " + out_path);
      f << text;
    }
    return code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
