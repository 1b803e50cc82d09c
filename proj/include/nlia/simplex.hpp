#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "nlia/delta_rational.hpp"
#include "nlia/rational.hpp"

namespace nlia {

// Incremental feasibility simplex over exact delta-rationals, in the
// style of the general-form solvers used inside SMT theory engines:
// bounds are asserted one at a time with an opaque tag, and conflicts
// are explained as a set of tags of the responsible bounds. Pivoting
// uses Bland's rule, so termination is guaranteed.
class Simplex {
 public:
  int add_var();
  // Defines var as the linear form sum(coeff_i * var_i). The definition
  // is permanent; var must have been created by add_var and not defined
  // before, and the form may only mention plain (column) variables.
  void define(int var, const std::vector<std::pair<int, Rational>>& form);

  struct Conflict {
    std::vector<int> tags;
  };

  // Asserting a bound never pivots; it can only fail against the
  // opposite bound of the same variable.
  std::optional<Conflict> assert_lower(int var, const DeltaRational& b, int tag);
  std::optional<Conflict> assert_upper(int var, const DeltaRational& b, int tag);

  std::optional<Conflict> check();

  // Trail handling for backtracking search.
  size_t mark() const { return trail_.size(); }
  void pop_to(size_t m);

  DeltaRational value(int var) const { return vals_[var]; }
  // Picks a concrete positive rational for delta that satisfies every
  // asserted bound, and returns the resulting values.
  std::vector<Rational> concrete_values() const;

  int num_vars() const { return static_cast<int>(vals_.size()); }

 private:
  struct Bound {
    bool present = false;
    DeltaRational val;
    int tag = -1;
  };

  struct UndoBound {
    int var;
    bool is_lower;
    Bound old;
  };

  void update_nonbasic(int var, const DeltaRational& v);
  void pivot_and_update(int basic, int nonbasic, const DeltaRational& v);
  void pivot(int basic, int nonbasic);
  std::optional<Conflict> set_bound(int var, bool lower, const DeltaRational& b,
                                    int tag);

  std::vector<DeltaRational> vals_;
  std::vector<Bound> lower_, upper_;
  std::vector<int> basic_of_row_;             // row index -> basic var
  std::vector<int> row_of_var_;               // var -> row index or -1
  std::vector<std::vector<Rational>> rows_;   // row coefficients per var
  std::vector<UndoBound> trail_;
};

}  // namespace nlia
