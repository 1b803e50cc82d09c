#pragma once

#include <vector>

#include "nlia/formula.hpp"

namespace nlia {

struct OracleResult {
  bool found = false;  // some point in the box satisfies all hard clauses
  Model model;         // a soft-cost minimizer among those points
  CostPair cost{0, 0};
};

// Exhaustive reference solver: enumerates every integer point of
// [lo, hi]^vars and minimizes the summed weight of falsified soft
// clauses over the hard models. Throws std::invalid_argument when the
// box holds more than 10^7 points.
OracleResult brute_force_nia(const std::vector<WeightedClause>& clauses,
                             const std::vector<VarId>& box_vars,
                             const Integer& lo, const Integer& hi);

}  // namespace nlia
