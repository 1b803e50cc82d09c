#pragma once

#include "nlia/lia_optimize.hpp"
#include "nlia/linearize.hpp"

namespace nlia {

enum class StrategyKind { Cores, MaxSmtModels, OmtModels, JumpNoCores, JumpCores };

struct Strategy {
  StrategyKind kind = StrategyKind::MaxSmtModels;
  RelaxConfig relax;        // alpha, beta, correction on/off
  Integer radius = 2;       // jump strategies
  bool ood_clauses = true;  // out-of-domain strengthening for squares
};

// Per outer iteration: what the optimizer reported and where the
// domains went. Domains and bounds are recorded after the iteration's
// relaxation (or the final state when the loop stopped).
struct IterationInfo {
  int index = 0;  // 1-based
  CostPair optimizer_cost{0, 0};
  Rational omt_distance = 0;
  bool used_omt = false;
  std::map<VarId, std::pair<Integer, Integer>> domains_after;
  int blocking_literals = 0;  // size of the blocking clause added, 0 if none
  std::vector<std::tuple<VarId, bool, Integer>> bounds_before;
};

struct NiaStats {
  std::vector<IterationInfo> iterations;
  int optimizer_calls = 0;
  int case_clauses_added = 0;
  int case_clauses_final = 0;
};

struct NiaResult {
  LiaStatus status = LiaStatus::Unknown;
  Model model;                         // valid when status == Sat
  std::optional<Rational> objective;   // soft cost, Max-SMT mode, Sat only
  std::optional<Model> best_so_far;    // Unknown in Max-SMT mode
  NiaStats stats;
};

// SMT(QF-NIA): case-splitting linearization with iterative domain
// relaxation, guided by unsat cores (Cores) or by models of minimal
// bound cost (all other strategies). Sat models are re-checked against
// the original non-linear clauses exactly; a failure throws
// std::logic_error. Soft input clauses are ignored here.
NiaResult solve_smt(const NiaFormula& f0, const Strategy& strategy,
                    const Budget& budget);

// Max-SMT(QF-NIA): minimizes the weighted soft cost of the input's soft
// clauses over its hard models, thresholding each round with the best
// soft cost found so far.
NiaResult solve_maxsmt(const NiaFormula& f0, const Strategy& strategy,
                       const Budget& budget);

}  // namespace nlia
