#pragma once

#include <optional>
#include <set>
#include <string>

#include "tropmono/graphs.hpp"
#include "tropmono/subdivision.hpp"

namespace tropmono {

struct AdmissibilityCertificate {
  WeightedGraph graph;
  HeightFunction witness;
  Subdivision subdivision;
  std::string method;  // which recipe produced the witness
};

// Points where the graph is allowed to be unbalanced (ray-sweep graphs at v).
using Exempt = std::set<Pt>;

// Tries the hint (heights on some lattice points; their hull is extended to the
// whole polygon), then crease heights along the lines of G, then a constrained
// triangulation checked for regularity by LP. Sound, not complete.
std::optional<AdmissibilityCertificate> certify_admissible(const WeightedGraph& g, const Polygon& poly,
                                                           const std::optional<HeightFunction>& hint = std::nullopt,
                                                           const Exempt& exempt = {});

// Recomputes the subdivision from the witness and checks every invariant.
bool verify_certificate(const AdmissibilityCertificate& c, const Polygon& poly, const Exempt& exempt = {},
                        std::string* why = nullptr);

// sum over the distinct lines carrying edges of G of |primitive linear form|
HeightFunction crease_heights(const WeightedGraph& g, const Polygon& poly);

// unimodular triangulation containing the given primitive segments, greedy by length,
// then locally Delaunay flips; nullopt when the segments conflict
std::optional<std::vector<Cell>> constrained_triangulation(const Polygon& poly, const std::set<Seg>& required);

}  // namespace tropmono
