#include "nlia/lia_optimize.hpp"

#include <algorithm>

namespace nlia {

namespace {

Literal poly_le0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a);
}

Literal poly_lt0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Lt;
  return Literal::of_atom(a);
}

int next_free_id(const std::vector<IdClause>& hard,
                 const std::vector<WeightedClause>& soft) {
  int n = 0;
  for (auto& c : hard) n = std::max(n, c.id + 1);
  for (auto& c : soft) n = std::max(n, c.id + 1);
  return n;
}

CostPair model_cost(const std::vector<WeightedClause>& soft, const Model& m) {
  CostPair c{0, 0};
  for (auto& wc : soft)
    if (!eval_clause(wc.clause, m)) c = cost_add(c, wc.weight.pair());
  return c;
}

}  // namespace

OptResult maxsmt_solve(VarTable& vars, const std::vector<IdClause>& hard,
                       const std::vector<WeightedClause>& soft,
                       const OptParams& params, const Budget& budget) {
  LiaFormula f;
  f.vars = &vars;
  f.clauses = hard;
  int next_id = next_free_id(hard, soft);

  // Relax each soft clause with a fresh 0/1 indicator; the cost forms
  // are linear in the indicators.
  Polynomial bound_form, soft_form;
  for (auto& wc : soft) {
    VarId z = vars.fresh("relax!" + std::to_string(wc.id), Sort::Int,
                         VarOrigin::SoftIndicator, wc.id);
    f.clauses.push_back({{poly_le0(-Polynomial::var(z))}, next_id++});
    f.clauses.push_back(
        {{poly_le0(Polynomial::var(z) - Polynomial(rat(1)))}, next_id++});
    Clause relaxed = wc.clause;
    relaxed.push_back(poly_le0(Polynomial(rat(1)) - Polynomial::var(z)));
    f.clauses.push_back({std::move(relaxed), next_id++});
    bound_form += Polynomial::var(z) * wc.weight.bound_cost;
    soft_form += Polynomial::var(z) * wc.weight.soft_cost;
  }

  if (params.soft_cap) {
    Polynomial p = soft_form - Polynomial(*params.soft_cap);
    f.clauses.push_back({{params.strict_cap ? poly_lt0(p) : poly_le0(p)},
                         next_id++});
  }

  OptResult out;
  bool have_best = false;
  for (;;) {
    LiaResult r = lia_solve(f, budget);
    if (r.status == LiaStatus::Unknown) {
      out.status = LiaStatus::Unknown;
      return out;
    }
    if (r.status == LiaStatus::Unsat) {
      out.status = have_best ? LiaStatus::Sat : LiaStatus::Unsat;
      return out;
    }
    CostPair c = model_cost(soft, r.model);
    out.model = r.model;
    out.cost = c;
    have_best = true;
    if (c == CostPair{0, 0}) {
      out.status = LiaStatus::Sat;
      return out;
    }
    // Strict lexicographic improvement: B <= b and (B < b or S < s).
    f.clauses.push_back(
        {{poly_le0(bound_form - Polynomial(c.first))}, next_id++});
    f.clauses.push_back({{poly_lt0(bound_form - Polynomial(c.first)),
                          poly_lt0(soft_form - Polynomial(c.second))},
                         next_id++});
  }
}

std::vector<int> maxsmt_optimality_core(VarTable& vars,
                                        const std::vector<IdClause>& hard,
                                        const std::vector<WeightedClause>& soft,
                                        const CostPair& optimum,
                                        const Budget& budget) {
  std::vector<WeightedClause> kept = soft;
  std::sort(kept.begin(), kept.end(),
            [](const WeightedClause& a, const WeightedClause& b) {
              return a.id < b.id;
            });
  size_t i = 0;
  while (i < kept.size()) {
    std::vector<WeightedClause> candidate = kept;
    candidate.erase(candidate.begin() + i);
    OptResult r = maxsmt_solve(vars, hard, candidate, {}, budget);
    // Dropping a soft clause can only lower the optimum; keep the drop
    // when it does not.
    if (r.status == LiaStatus::Sat && r.cost == optimum) {
      kept = std::move(candidate);
    } else {
      ++i;
    }
  }
  std::vector<int> ids;
  ids.reserve(kept.size());
  for (auto& wc : kept) ids.push_back(wc.id);
  return ids;
}

OmtResult omt_solve(const VarTable& vars, const std::vector<IdClause>& hard,
                    const Polynomial& objective, const Budget& budget) {
  LiaFormula f;
  f.vars = &vars;
  f.clauses = hard;
  int next_id = next_free_id(hard, {});

  OmtResult out;
  bool have_best = false;
  for (;;) {
    LiaResult r = lia_solve(f, budget);
    if (r.status == LiaStatus::Unknown) {
      out.status = LiaStatus::Unknown;
      return out;
    }
    if (r.status == LiaStatus::Unsat) {
      out.status = have_best ? LiaStatus::Sat : LiaStatus::Unsat;
      return out;
    }
    Rational val = objective.eval(r.model);
    out.model = r.model;
    out.objective = val;
    have_best = true;
    f.clauses.push_back(
        {{poly_lt0(objective - Polynomial(val))}, next_id++});
  }
}

}  // namespace nlia
