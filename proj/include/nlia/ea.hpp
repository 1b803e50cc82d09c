#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nlia/formula.hpp"
#include "nlia/nia_solver.hpp"

namespace nlia {

// Exists-forall input: integer existential variables x, real universal
// variables y, and clauses whose literals are linear in y with
// polynomial-in-x coefficients (no monomial may contain two universal
// variables).
struct EaProblem {
  VarTable* vars = nullptr;
  std::vector<VarId> exist_vars;
  std::vector<VarId> univ_vars;
  std::vector<WeightedClause> clauses;
};

// One row of the negated clause body, read as
//   sum_y coeff[y] * y  (<= | <)  rhs
// where coeff[y] and rhs are polynomials in x; absent keys mean 0.
struct MotzkinRow {
  std::map<VarId, Polynomial> coeff;
  Polynomial rhs;
};

struct MotzkinSystem {
  bool passthrough = false;  // clause mentions no universal variable
  std::vector<MotzkinRow> nonstrict;
  std::vector<MotzkinRow> strict;
};

MotzkinSystem to_motzkin_system(const Clause& c, const EaProblem& prob);

struct MotzkinClauses {
  std::vector<Clause> clauses;
  std::vector<VarId> lambda;  // one per nonstrict row
  std::vector<VarId> mu;      // one per strict row
};

// Unsatisfiability certificate constraints for the system: multipliers
// are fresh non-negative reals; products pair a multiplier with a
// polynomial in x only.
MotzkinClauses motzkin_transform(const MotzkinSystem& sys, VarTable& vars);

struct EaResult {
  LiaStatus status = LiaStatus::Unknown;
  Model model;        // existential variables only
  Model certificate;  // multipliers (and soft indicators)
  std::optional<Rational> objective;
  NiaStats stats;
};

EaResult solve_ea(const EaProblem& prob, const Strategy& strategy,
                  const Budget& budget);

}  // namespace nlia
