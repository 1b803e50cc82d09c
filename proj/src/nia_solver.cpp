#include "nlia/nia_solver.hpp"

#include <set>
#include <stdexcept>

namespace nlia {

namespace {

bool original_hard_holds(const NiaFormula& f0, const Model& m) {
  for (auto& wc : f0.clauses)
    if (wc.weight.hard && !eval_clause(wc.clause, m)) return false;
  return true;
}

Rational original_soft_cost(const NiaFormula& f0, const Model& m) {
  Rational c = 0;
  for (auto& wc : f0.clauses)
    if (!wc.weight.hard && !eval_clause(wc.clause, m))
      c += wc.weight.soft_cost;
  return c;
}

Literal in_domain_le0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a);
}

struct Driver {
  const NiaFormula& f0;
  Strategy strat;
  Budget budget;
  LinearizationState st;
  NiaStats stats;
  size_t last_case_count = 0;

  Driver(const NiaFormula& f, const Strategy& s, const Budget& b)
      : f0(f), strat(s), budget(b) {
    auto cover = choose_linearization_variables(f0);
    st = linearize(f0, artificial_bounds(f0, cover));
    if (strat.ood_clauses) refresh_out_of_domain_clauses(st);
    last_case_count = st.case_clauses.size();
    stats.case_clauses_added = static_cast<int>(last_case_count);
  }

  void note_case_growth() {
    if (st.case_clauses.size() > last_case_count)
      stats.case_clauses_added +=
          static_cast<int>(st.case_clauses.size() - last_case_count);
    last_case_count = st.case_clauses.size();
  }

  IterationInfo open_iteration(int index) const {
    IterationInfo info;
    info.index = index;
    for (auto& b : st.bounds)
      info.bounds_before.emplace_back(b.var, b.is_upper, b.value);
    return info;
  }

  void close_iteration(IterationInfo info) {
    for (VarId v : st.split_vars) info.domains_after[v] = st.domain_of(v);
    stats.iterations.push_back(std::move(info));
    note_case_growth();
    stats.case_clauses_final = static_cast<int>(st.case_clauses.size());
  }

  NiaResult finish(LiaStatus status, Model model = {}) {
    NiaResult r;
    r.status = status;
    r.model = std::move(model);
    r.stats = stats;
    return r;
  }

  // The Sat gate: a model may only leave the solver if the original
  // non-linear hard clauses evaluate to true under it.
  void verify_or_die(const Model& m) const {
    if (!original_hard_holds(f0, m))
      throw std::logic_error("internal error: model fails the original formula");
  }

  // Lemma-level consistency: bound cost 0 iff every artificial bound
  // holds iff the original clauses hold.
  void check_cost_zero_equivalence(const CostPair& cost, const Model& m) const {
    bool bounds_ok = true;
    for (auto& b : st.bounds)
      if (!eval_literal(LinearizationState::bound_literal(b), m))
        bounds_ok = false;
    if ((cost.first == 0) != bounds_ok)
      throw std::logic_error("internal error: bound cost disagrees with bounds");
    if (bounds_ok && !original_hard_holds(f0, m))
      throw std::logic_error("internal error: in-domain model fails the input");
  }

  // Canonicalizes an optimal model: greedily confine out-of-domain
  // split variables back into their domains, earliest-declared first,
  // as long as the optimizer still reaches the same cost. This makes
  // the surviving escape deterministic instead of an accident of the
  // underlying search order.
  Model canonical_model(const std::vector<IdClause>& hard,
                        const std::vector<WeightedClause>& soft,
                        const OptParams& p, const CostPair& opt, Model model) {
    int id = 0;
    for (auto& c : hard) id = std::max(id, c.id + 1);
    for (auto& c : soft) id = std::max(id, c.id + 1);

    auto in_domain = [&](VarId v, const Model& m) {
      auto [lo, hi] = st.domain_of(v);
      Rational val = m.get_or_zero(v);
      return val >= Rational(lo) && val <= Rational(hi);
    };
    // Unit clauses confining v to [lo, hi].
    auto confine = [&](std::vector<IdClause>& cs, VarId v, const Rational& lo,
                       const Rational& hi) {
      cs.push_back({{in_domain_le0(Polynomial(lo) - Polynomial::var(v))}, id++});
      cs.push_back({{in_domain_le0(Polynomial::var(v) - Polynomial(hi))}, id++});
    };
    auto try_opt = [&](const std::vector<IdClause>& trial) -> std::optional<Model> {
      ++stats.optimizer_calls;
      OptResult r = maxsmt_solve(*f0.vars, trial, soft, p, budget);
      if (r.status == LiaStatus::Sat && r.cost == opt) return r.model;
      return std::nullopt;
    };

    // Phase 1: bring escaped variables back into their domains, earliest
    // first. Variables that stay in-domain across an accepted step are
    // confirmed and stay confined in later trials, so progress is never
    // undone by a pin pushing an earlier variable back out.
    std::set<VarId> confirmed;
    for (bool progressed = true; progressed;) {
      progressed = false;
      for (VarId v : st.split_vars) {
        if (in_domain(v, model)) continue;
        auto trial = hard;
        for (VarId u : st.split_vars)
          if (u == v || confirmed.count(u)) {
            auto [lo, hi] = st.domain_of(u);
            confine(trial, u, Rational(lo), Rational(hi));
          }
        if (auto m = try_opt(trial)) {
          confirmed.insert(v);
          for (VarId u : st.split_vars)
            if (in_domain(u, model) && in_domain(u, *m)) confirmed.insert(u);
          model = std::move(*m);
          progressed = true;
          break;
        }
      }
    }
    // Phase 2: among in-domain variables prefer the value 0 when the
    // optimum allows it, earliest first; escaped variables stay free.
    std::vector<IdClause> pins = hard;
    for (VarId v : st.split_vars) {
      if (!in_domain(v, model)) continue;
      auto [lo, hi] = st.domain_of(v);
      if (model.get_or_zero(v) == 0) {
        confine(pins, v, Rational(0), Rational(0));
        continue;
      }
      if (lo > 0 || hi < 0) {
        confine(pins, v, Rational(lo), Rational(hi));
        continue;
      }
      auto trial = pins;
      confine(trial, v, Rational(0), Rational(0));
      for (VarId u : st.split_vars)
        if (u > v && in_domain(u, model)) {
          auto [l2, h2] = st.domain_of(u);
          confine(trial, u, Rational(l2), Rational(h2));
        }
      if (auto m = try_opt(trial)) {
        model = std::move(*m);
        confine(pins, v, Rational(0), Rational(0));
      } else {
        confine(pins, v, Rational(lo), Rational(hi));
      }
    }
    return model;
  }

  void relax_with_model(const Model& m, IterationInfo& info) {
    auto old_bounds = st.bounds;
    if (strat.kind == StrategyKind::JumpNoCores ||
        strat.kind == StrategyKind::JumpCores) {
      auto nb = relax_domains_non_inc(st, m, strat.radius);
      std::optional<std::vector<int>> ids;
      if (strat.kind == StrategyKind::JumpCores) {
        // Reference optimum of (hard, bound softs) alone; the outer
        // optimizer may have run with extra soft clauses or a cap.
        auto hard = st.hard_clauses(strat.ood_clauses);
        auto soft = st.bound_soft_clauses();
        OptResult base = maxsmt_solve(*f0.vars, hard, soft, {}, budget);
        if (base.status == LiaStatus::Sat)
          ids = maxsmt_optimality_core(*f0.vars, hard, soft, base.cost, budget);
      }
      update_non_inc(st, old_bounds, nb, ids);
      info.blocking_literals =
          static_cast<int>(st.blocking.back().clause.size());
    } else {
      auto nb = relax_domains_min_models(st, m, strat.relax);
      // Completeness guard: the minimal models may forever escape through
      // the same variable while the satisfying region needs another
      // domain to move. Every fifth iteration all domains grow a little,
      // so any fixed satisfying point is eventually covered.
      if (info.index % 5 == 0) {
        for (auto& b : nb) {
          b.value += b.is_upper ? 2 : -2;
          ++b.generation;
        }
      }
      update(st, old_bounds, nb);
    }
    if (strat.ood_clauses) refresh_out_of_domain_clauses(st);
  }

  // Escape hatch for inner-solver give-ups: branch-and-bound can exhaust
  // its depth budget on a subproblem that only exists under the current
  // artificial domains. Growing every domain changes the case structure
  // and usually removes the divergence, so an Unknown from the inner
  // solver is only terminal once the time budget itself is gone.
  void widen_all_domains() {
    auto old_bounds = st.bounds;
    auto nb = st.bounds;
    for (auto& b : nb) {
      b.value += b.is_upper ? 2 : -2;
      ++b.generation;
    }
    update(st, old_bounds, nb);
    if (strat.ood_clauses) refresh_out_of_domain_clauses(st);
  }

  NiaResult run_cores() {
    for (int iter = 1; !budget.timed_out(); ++iter) {
      IterationInfo info = open_iteration(iter);
      auto hard = st.hard_clauses(strat.ood_clauses);
      std::vector<Literal> assumptions;
      std::vector<int> assumption_bound(st.bounds.size());
      for (size_t i = 0; i < st.bounds.size(); ++i) {
        assumptions.push_back(LinearizationState::bound_literal(st.bounds[i]));
        assumption_bound[i] = st.bounds[i].id;
      }
      LiaFormula f{f0.vars, hard};
      LiaResult r = lia_solve_assuming(f, assumptions, budget);
      if (r.status == LiaStatus::Unknown) {
        if (budget.timed_out()) {
          close_iteration(std::move(info));
          return finish(LiaStatus::Unknown);
        }
        widen_all_domains();
        close_iteration(std::move(info));
        continue;
      }
      if (r.status == LiaStatus::Sat) {
        verify_or_die(r.model);
        close_iteration(std::move(info));
        return finish(LiaStatus::Sat, r.model);
      }
      // Shrink the assumption part of the core by deletion, so a
      // conflict that does not really need the artificial bounds is
      // recognized as a final Unsat.
      std::vector<int> core = r.core_assumptions;
      size_t ci = 0;
      while (ci < core.size() && !budget.timed_out()) {
        std::vector<int> cand = core;
        cand.erase(cand.begin() + ci);
        std::vector<Literal> sub;
        for (int ai : cand) sub.push_back(assumptions[ai]);
        LiaResult rr = lia_solve_assuming(f, sub, budget);
        if (rr.status == LiaStatus::Unsat) {
          std::vector<int> mapped;
          for (int ai : rr.core_assumptions) mapped.push_back(cand[ai]);
          core = std::move(mapped);
          ci = 0;
        } else {
          ++ci;
        }
      }
      std::vector<int> core_ids;
      for (int ai : core) core_ids.push_back(assumption_bound[ai]);
      if (core_ids.empty()) {
        close_iteration(std::move(info));
        return finish(LiaStatus::Unsat);
      }
      auto old_bounds = st.bounds;
      auto nb = relax_domains_cores(st, core_ids, strat.relax);
      update(st, old_bounds, nb);
      if (strat.ood_clauses) refresh_out_of_domain_clauses(st);
      close_iteration(std::move(info));
    }
    return finish(LiaStatus::Unknown);
  }

  NiaResult run_min_models() {
    for (int iter = 1; !budget.timed_out(); ++iter) {
      IterationInfo info = open_iteration(iter);
      auto hard = st.hard_clauses(strat.ood_clauses);
      auto soft = st.bound_soft_clauses();
      ++stats.optimizer_calls;
      OptResult r = maxsmt_solve(*f0.vars, hard, soft, {}, budget);
      if (r.status == LiaStatus::Unknown) {
        if (budget.timed_out()) {
          close_iteration(std::move(info));
          return finish(LiaStatus::Unknown);
        }
        widen_all_domains();
        close_iteration(std::move(info));
        continue;
      }
      if (r.status == LiaStatus::Unsat) {
        close_iteration(std::move(info));
        return finish(LiaStatus::Unsat);
      }
      info.optimizer_cost = r.cost;
      check_cost_zero_equivalence(r.cost, r.model);
      if (r.cost.first == 0) {
        verify_or_die(r.model);
        close_iteration(std::move(info));
        return finish(LiaStatus::Sat, r.model);
      }
      Model m = canonical_model(hard, soft, {}, r.cost, r.model);
      relax_with_model(m, info);
      close_iteration(std::move(info));
    }
    return finish(LiaStatus::Unknown);
  }

  NiaResult run_omt() {
    for (int iter = 1; !budget.timed_out(); ++iter) {
      IterationInfo info = open_iteration(iter);
      info.used_omt = true;
      auto hard = st.hard_clauses(strat.ood_clauses);
      int id = st.next_id;
      // Distance encoding: per split variable V with domain [L,U], two
      // non-negative slacks with l >= L-V, u >= V-U; the objective is
      // the total slack.
      Polynomial objective;
      for (VarId v : st.split_vars) {
        auto [lo, hi] = st.domain_of(v);
        VarId l = f0.vars->fresh("l!" + f0.vars->name(v), Sort::Int,
                                 VarOrigin::CostSlackLower, v);
        VarId u = f0.vars->fresh("u!" + f0.vars->name(v), Sort::Int,
                                 VarOrigin::CostSlackUpper, v);
        auto le0 = [](Polynomial p) {
          Atom a;
          a.poly = std::move(p);
          a.rel = Rel::Le;
          return Literal::of_atom(a);
        };
        hard.push_back({{le0(-Polynomial::var(l))}, id++});
        hard.push_back({{le0(Polynomial(Rational(lo)) - Polynomial::var(v) -
                             Polynomial::var(l))},
                        id++});
        hard.push_back({{le0(-Polynomial::var(u))}, id++});
        hard.push_back({{le0(Polynomial::var(v) - Polynomial(Rational(hi)) -
                             Polynomial::var(u))},
                        id++});
        objective += Polynomial::var(l) + Polynomial::var(u);
      }
      ++stats.optimizer_calls;
      OmtResult r = omt_solve(*f0.vars, hard, objective, budget);
      if (r.status == LiaStatus::Unknown) {
        if (budget.timed_out()) {
          close_iteration(std::move(info));
          return finish(LiaStatus::Unknown);
        }
        widen_all_domains();
        close_iteration(std::move(info));
        continue;
      }
      if (r.status == LiaStatus::Unsat) {
        close_iteration(std::move(info));
        return finish(LiaStatus::Unsat);
      }
      info.omt_distance = r.objective;
      if (r.objective == 0) {
        verify_or_die(r.model);
        close_iteration(std::move(info));
        return finish(LiaStatus::Sat, r.model);
      }
      auto old_bounds = st.bounds;
      auto nb = relax_domains_min_models(st, r.model, strat.relax);
      update(st, old_bounds, nb);
      if (strat.ood_clauses) refresh_out_of_domain_clauses(st);
      close_iteration(std::move(info));
    }
    return finish(LiaStatus::Unknown);
  }

  NiaResult run_maxsmt() {
    auto user_soft = st.soft_input_clauses();
    std::optional<Model> bsf;
    std::optional<Rational> bsf_cost;
    for (int iter = 1; !budget.timed_out(); ++iter) {
      IterationInfo info = open_iteration(iter);
      auto hard = st.hard_clauses(strat.ood_clauses);
      auto soft = user_soft;
      for (auto& bc : st.bound_soft_clauses()) soft.push_back(bc);
      OptParams p;
      p.soft_cap = bsf_cost;  // strict: only strictly better soft cost
      ++stats.optimizer_calls;
      OptResult r = maxsmt_solve(*f0.vars, hard, soft, p, budget);
      if (r.status == LiaStatus::Unknown) {
        if (budget.timed_out()) break;
        widen_all_domains();
        close_iteration(std::move(info));
        continue;
      }
      if (r.status == LiaStatus::Unsat) {
        close_iteration(std::move(info));
        if (bsf) {
          NiaResult out = finish(LiaStatus::Sat, *bsf);
          out.objective = *bsf_cost;
          return out;
        }
        return finish(LiaStatus::Unsat);
      }
      info.optimizer_cost = r.cost;
      if (r.cost.first == 0) {
        verify_or_die(r.model);
        Rational obj = original_soft_cost(f0, r.model);
        bsf = r.model;
        bsf_cost = obj;
        close_iteration(std::move(info));
        if (obj == 0) {
          NiaResult out = finish(LiaStatus::Sat, *bsf);
          out.objective = Rational(0);
          return out;
        }
        continue;  // re-solve under the tightened soft-cost cap
      }
      Model m = canonical_model(hard, soft, p, r.cost, r.model);
      relax_with_model(m, info);
      close_iteration(std::move(info));
    }
    NiaResult out = finish(LiaStatus::Unknown);
    out.best_so_far = bsf;
    return out;
  }
};

}  // namespace

NiaResult solve_smt(const NiaFormula& f0, const Strategy& strategy,
                    const Budget& budget) {
  Driver d(f0, strategy, budget);
  switch (strategy.kind) {
    case StrategyKind::Cores:
      return d.run_cores();
    case StrategyKind::OmtModels:
      return d.run_omt();
    default:
      return d.run_min_models();
  }
}

NiaResult solve_maxsmt(const NiaFormula& f0, const Strategy& strategy,
                       const Budget& budget) {
  Driver d(f0, strategy, budget);
  return d.run_maxsmt();
}

}  // namespace nlia
