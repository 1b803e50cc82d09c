#pragma once

#include "nlia/lia_solver.hpp"

namespace nlia {

struct OptParams {
  // When set, only models with soft cost below the cap count; Unsat is
  // reported if none exists. strict_cap picks < versus <=.
  std::optional<Rational> soft_cap;
  bool strict_cap = true;
};

struct OptResult {
  LiaStatus status = LiaStatus::Unknown;  // Sat means the optimum was found
  Model model;
  CostPair cost{0, 0};
};

// Weighted Max-SMT over linear clauses. Weights are cost pairs ordered
// lexicographically with the bound component first. Each soft clause is
// relaxed with a fresh 0/1 integer indicator; the optimum is reached by
// strict lexicographic improvement, which terminates because costs range
// over the finite set of subset sums of the weights. vars is extended
// with the indicator variables.
OptResult maxsmt_solve(VarTable& vars, const std::vector<IdClause>& hard,
                       const std::vector<WeightedClause>& soft,
                       const OptParams& params, const Budget& budget);

// An optimality core for (hard, soft): a subset S of the soft ids such
// that the optimum of (hard, S) already equals the full optimum. Found
// by deletion: drop each soft clause whose removal does not lower the
// optimum. Requires the full problem to be Sat with optimum `optimum`.
std::vector<int> maxsmt_optimality_core(VarTable& vars,
                                        const std::vector<IdClause>& hard,
                                        const std::vector<WeightedClause>& soft,
                                        const CostPair& optimum,
                                        const Budget& budget);

struct OmtResult {
  LiaStatus status = LiaStatus::Unknown;
  Model model;
  Rational objective = 0;
};

// Minimizes a linear objective over the models of hard. The objective
// must be integer-valued over the models (true here: it is a sum of
// integer slacks), so strict improvement steps terminate.
OmtResult omt_solve(const VarTable& vars, const std::vector<IdClause>& hard,
                    const Polynomial& objective, const Budget& budget);

}  // namespace nlia
