#pragma once

#include <map>
#include <set>
#include <vector>

#include "nlia/formula.hpp"
#include "nlia/lia_solver.hpp"

namespace nlia {

// Non-linear input problem: weighted clauses over a shared variable
// table. Clause ids are unique.
struct NiaFormula {
  VarTable* vars = nullptr;
  std::vector<WeightedClause> clauses;
};

// One side of an artificial domain [L, U] attached to a case-splitting
// variable. The id doubles as the clause id of the bound when it is
// passed to the optimizer as a soft clause, and stays stable across
// relaxations of the same (var, side).
struct ArtificialBound {
  VarId var = -1;
  bool is_upper = false;
  Integer value = 0;
  Rational soft_weight = 1;
  int generation = 0;  // times this (var, side) has been relaxed
  int id = -1;
  std::optional<Integer> true_bound;  // declared bound from the input, if any
};

struct LinearizationState {
  VarTable* vars = nullptr;
  std::set<VarId> split_vars;
  std::vector<WeightedClause> abstracted;  // input clauses, monomials replaced
  std::map<Monomial, VarId> monomial_var;  // Q -> v_Q
  std::map<Monomial, VarId> lin_var;       // Q -> its case-splitting variable
  std::map<std::pair<Monomial, Integer>, IdClause> case_clauses;
  std::vector<IdClause> ood_clauses;  // out-of-domain strengthening
  std::vector<IdClause> blocking;     // hard blocking clauses (non-inc mode)
  std::vector<ArtificialBound> bounds;
  std::map<VarId, int> occurrences;  // per-variable count in the input
  int next_id = 0;

  std::pair<Integer, Integer> domain_of(VarId v) const;
  const ArtificialBound* bound_by_id(int id) const;

  // The bound as a clause literal: V <= u resp. V >= l.
  static Literal bound_literal(const ArtificialBound& b);
  // Its negation: V >= u+1 resp. V <= l-1.
  static Literal negated_bound_literal(const ArtificialBound& b);

  // Assembled pieces for the solving loops.
  std::vector<IdClause> hard_clauses(bool include_ood) const;
  std::vector<WeightedClause> soft_input_clauses() const;
  std::vector<WeightedClause> bound_soft_clauses() const;
};

struct RelaxConfig {
  Rational alpha = 2;
  Rational beta = 10;
  bool correction = true;
};

// Greedy cover of the non-linear monomials, including the residues that
// case splitting will create: pick the variable hitting the most
// uncovered monomials, ties broken by lowest id.
std::set<VarId> choose_linearization_variables(const NiaFormula& f0);

// Initial artificial domain [-1, 1] for every chosen variable, true
// bounds recorded from unit clauses of the input.
std::vector<ArtificialBound> artificial_bounds(const NiaFormula& f0,
                                               const std::set<VarId>& s);

// Abstracts every non-linear monomial behind a fresh variable and adds
// the case-splitting clauses over the artificial domains. Residual
// non-linear monomials produced by evaluation are processed recursively.
// Throws std::runtime_error when a monomial has no chosen variable.
LinearizationState linearize(const NiaFormula& f0,
                             std::vector<ArtificialBound> bounds);

// Incremental update: new_bounds must be pointwise weaker; adds the case
// clauses of the widened domain slices. Throws std::invalid_argument on
// a non-monotone change.
void update(LinearizationState& st, const std::vector<ArtificialBound>& old_bounds,
            const std::vector<ArtificialBound>& new_bounds);

// Non-incremental update: case clauses of changed variables are removed
// and regenerated for the new domains, and a hard blocking clause
// forbids the old bound combination. blocking_ids restricts the
// blocking clause to those bound ids (optimality-core variant); when
// absent all old bounds are used.
void update_non_inc(LinearizationState& st,
                    const std::vector<ArtificialBound>& old_bounds,
                    const std::vector<ArtificialBound>& new_bounds,
                    const std::optional<std::vector<int>>& blocking_ids);

// Relaxations: each returns the full new bound vector, generations
// already advanced. Throws std::invalid_argument when the precondition
// (non-empty core intersection resp. violated bound) fails.
std::vector<ArtificialBound> relax_domains_cores(const LinearizationState& st,
                                                 const std::vector<int>& core_bound_ids,
                                                 const RelaxConfig& cfg);
std::vector<ArtificialBound> relax_domains_min_models(const LinearizationState& st,
                                                      const Model& m,
                                                      const RelaxConfig& cfg);
std::vector<ArtificialBound> relax_domains_non_inc(const LinearizationState& st,
                                                   const Model& m,
                                                   const Integer& radius);

// Optional strengthening for pure squares V^2: values outside [L, U]
// still force v >= (L-1)^2 resp. (U+1)^2 when the excluded side lies
// beyond the parabola's vertex. Regenerates st.ood_clauses in place.
void refresh_out_of_domain_clauses(LinearizationState& st);

}  // namespace nlia
