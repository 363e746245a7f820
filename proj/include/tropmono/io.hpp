#pragma once

#include <string>

#include <json.hpp>

#include "tropmono/graphs.hpp"
#include "tropmono/homology.hpp"
#include "tropmono/subdivision.hpp"

namespace tropmono {

using json = nlohmann::json;

// Integers outside the i64 range are written as decimal strings.
json to_json(const mpz_class& z);
mpz_class mpz_from_json(const json& j);
json to_json(const Q& q);  // [num, den]
Q rational_from_json(const json& j);

json to_json(Pt p);
Pt pt_from_json(const json& j);
json to_json(const Seg& s);
Seg seg_from_json(const json& j);
json to_json(const Polygon& p);  // {"vertices": [...]}
// hull of the listed points; throws InvalidInput unless they are in convex position
Polygon polygon_from_json(const json& j);
json to_json(const WeightedGraph& g);  // {"edges": [[[x1,y1],[x2,y2],m], ...]}
WeightedGraph graph_from_json(const json& j);
json to_json(const HeightFunction& h);  // [[x,y,num,den], ...]
HeightFunction heights_from_json(const json& j);
json to_json(const Subdivision& s);  // {"heights": ..., "cells": [[idx,...]], "points": ...}
Subdivision subdivision_from_json(const Polygon& poly, const json& j);
json to_json(const Loop& l);  // {"acycle":[x,y]} or {"segment":[[..],[..]]}
Loop loop_from_json(const json& j);
json to_json(const IMat& m);  // rows
json to_json(const IVec& v);

json read_json_file(const std::string& path);
// sorted keys, two-space indent, trailing newline
std::string dump(const json& j);

}  // namespace tropmono
