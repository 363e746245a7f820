#pragma once

#include <utility>
#include <vector>

#include "tropmono/lattice.hpp"

namespace tropmono::lp {

enum class Sense { LE, GE, EQ };

struct Constraint {
  std::vector<std::pair<int, Q>> terms;
  Sense sense = Sense::LE;
  Q rhs = 0;
};

// maximize objective . x  subject to rows, x >= 0
struct Problem {
  int num_vars = 0;
  std::vector<Q> objective;
  std::vector<Constraint> rows;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Q> x;
  Q value = 0;
};

// Dense two-phase simplex over exact rationals, Bland's rule.
Solution maximize(const Problem& p);

}  // namespace tropmono::lp
