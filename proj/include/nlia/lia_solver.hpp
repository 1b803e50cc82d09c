#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "nlia/formula.hpp"

namespace nlia {

using Clock = std::chrono::steady_clock;

struct Budget {
  std::optional<Clock::time_point> deadline;
  int max_branch_depth = 2000;  // integer branch-and-bound depth per path

  bool timed_out() const {
    return deadline && Clock::now() >= *deadline;
  }
  static Budget with_seconds(double s) {
    Budget b;
    b.deadline = Clock::now() +
                 std::chrono::microseconds(static_cast<long long>(s * 1e6));
    return b;
  }
};

struct IdClause {
  Clause clause;
  int id = -1;
};

struct LiaFormula {
  const VarTable* vars = nullptr;
  std::vector<IdClause> clauses;
};

enum class LiaStatus { Sat, Unsat, Unknown };

struct LiaResult {
  LiaStatus status = LiaStatus::Unknown;
  Model model;                        // total, exact (Sat only)
  std::vector<int> core_clauses;      // input clause ids (Unsat only)
  std::vector<int> core_assumptions;  // indices into the assumption list
};

// Decides a linear CNF over mixed Int/Real variables. Sat models are
// certified against every clause before being returned; Unsat answers
// carry a core of input clause ids (and assumption indices) whose
// conjunction is unsatisfiable. Unknown is returned only when the
// budget runs out. Throws std::invalid_argument on non-linear atoms.
LiaResult lia_solve(const LiaFormula& f, const Budget& budget);

LiaResult lia_solve_assuming(const LiaFormula& f,
                             const std::vector<Literal>& assumptions,
                             const Budget& budget);

}  // namespace nlia
