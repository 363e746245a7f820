#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmono/engine.hpp"

namespace tropmono {

// Each pipeline certifies its graphs, feeds them to the engine and reduces.
// Return values are node ids of the facts reached. A failing step throws
// CertificationFailure (RuleError names the rule).

// tau of the bridges ending at the adjoint vertex kappa
int pipeline_corner(Engine& E, Pt kappa);
// tau of every primitive segment of the adjoint edge [kappa, xi]
std::vector<int> pipeline_side(Engine& E, Pt kappa, Pt xi);
// P(a,b) at kappa; facts for the bridges at (a,0) and (0,b) of the normalized frame
std::vector<int> pipeline_propagate(Engine& E, Pt kappa, bool swap_axes, i64 a, i64 b);
// P(l1, b) with l1 the full adjoint edge along the x-axis: a power of the bridge at (0,b)
int pipeline_gcdedges(Engine& E, Pt kappa, bool swap_axes, i64 b);
// tau_sigma for a segment with at least one end off the boundary
int pipeline_interior(Engine& E, const Seg& sigma, bool allow_homological = false);
// divisible graph at v, reduced as far as the known facts allow
int pipeline_interior_d(Engine& E, i64 d, Pt kappa, Pt kappa_p, Pt v, i64 m1, i64 m2);
// d-th power of an interior graph for sigma, reduced as far as the known facts allow
int pipeline_interior_dd(Engine& E, const Seg& sigma, i64 d);

// Repeats propagation graphs over every adjoint vertex until no bridge exponent improves.
void bridge_closure(Engine& E);
// [tau_sigma]^2 by the chain relation, combined with odd powers, for every bridge.
void homological_bridge_closure(Engine& E);

struct SurjectivityOptions {
  bool all_segments = false;  // also derive every primitive segment off the boundary
};

struct SurjectivityReport {
  PolygonAnalysis analysis;
  Verdict verdict;
  std::string status;  // certified, obstructed, deferred
  std::optional<int> geometric_root;
  std::optional<int> homological_root;
  std::optional<Snake> snake;
  std::string obstruction;
};

SurjectivityReport derive_surjectivity(Engine& E, const SurjectivityOptions& opt = {});

// primitive segments of the polygon with at least one end off the boundary, lex order
std::vector<Seg> segments_off_boundary(const Polygon& poly);

}  // namespace tropmono
