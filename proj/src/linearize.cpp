#include "nlia/linearize.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlia {

namespace {

Literal le0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a);
}

Literal eq0(Polynomial p, bool positive = true) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Eq;
  return Literal::of_atom(a, positive);
}

int max_clause_id(const NiaFormula& f0) {
  int n = -1;
  for (auto& c : f0.clauses) n = std::max(n, c.id);
  return n;
}

// Declared bound on v extracted from the hard unit clauses of the input.
std::optional<Integer> scan_true_bound(const NiaFormula& f0, VarId v,
                                       bool upper) {
  std::optional<Integer> best;
  auto consider = [&](const Integer& b) {
    if (!best || (upper ? b < *best : b > *best)) best = b;
  };
  for (auto& wc : f0.clauses) {
    if (!wc.weight.hard || wc.clause.size() != 1) continue;
    const Literal& lit = wc.clause[0];
    if (lit.is_bool || !lit.positive) continue;
    const Polynomial& p = lit.atom.poly;
    Polynomial q = p.drop_constant();
    if (q.terms().size() != 1) continue;
    const auto& [mono, a] = *q.terms().begin();
    if (!mono.is_linear() || !mono.contains(v)) continue;
    Rational rhs = -p.constant_term() / a;  // v rel rhs (direction from a)
    bool rhs_is_upper = a > 0;
    switch (lit.atom.rel) {
      case Rel::Le:
        if (rhs_is_upper == upper)
          consider(upper ? floor_int(rhs) : ceil_int(rhs));
        break;
      case Rel::Lt:
        if (rhs_is_upper == upper) {
          if (upper)
            consider(is_integral(rhs) ? Integer(rhs.get_num() - 1)
                                      : floor_int(rhs));
          else
            consider(is_integral(rhs) ? Integer(rhs.get_num() + 1)
                                      : ceil_int(rhs));
        }
        break;
      case Rel::Eq:
        if (is_integral(rhs)) consider(Integer(rhs.get_num()));
        break;
    }
  }
  return best;
}

VarId ensure_monomial(LinearizationState& st, const Monomial& m);

Polynomial abstract_poly(LinearizationState& st, const Polynomial& p) {
  Polynomial out;
  for (auto& [m, c] : p.terms()) {
    if (m.is_linear())
      out.add_term(m, c);
    else
      out.add_term(Monomial::var(ensure_monomial(st, m)), c);
  }
  return out;
}

void add_case(LinearizationState& st, const Monomial& m, const Integer& k) {
  VarId split = st.lin_var.at(m);
  VarId vq = st.monomial_var.at(m);
  Polynomial e = abstract_poly(st, eval_monomial_at(m, split, k));
  Clause c;
  c.push_back(eq0(Polynomial::var(split) - Polynomial(Rational(k)), false));
  c.push_back(eq0(Polynomial::var(vq) - e));
  st.case_clauses[{m, k}] = {std::move(c), st.next_id++};
}

VarId ensure_monomial(LinearizationState& st, const Monomial& m) {
  auto it = st.monomial_var.find(m);
  if (it != st.monomial_var.end()) return it->second;
  VarId split = -1;
  for (auto& [v, e] : m.factors) {
    if (st.split_vars.count(v)) {
      split = v;  // factors are sorted, so this is the lowest id
      break;
    }
  }
  if (split == -1)
    throw std::runtime_error("monomial not covered by any case-splitting variable: " +
                             monomial_str(m, *st.vars));
  VarId vq = st.vars->fresh("v!" + monomial_str(m, *st.vars), Sort::Int,
                            VarOrigin::MonomialAbstraction, split);
  st.monomial_var[m] = vq;
  st.lin_var[m] = split;
  auto [lo, hi] = st.domain_of(split);
  for (Integer k = lo; k <= hi; ++k) add_case(st, m, k);
  return vq;
}

// Correction factor of the relaxation policy: ceil(alpha * min(beta, n/m)).
Integer correction_step(const RelaxConfig& cfg, int generation, int occ) {
  Rational nm(generation, std::max(occ, 1));
  nm.canonicalize();
  Rational amount = cfg.alpha * std::min(cfg.beta, nm);
  Integer step = ceil_int(amount);
  return step < 1 ? Integer(1) : step;
}

void widen(ArtificialBound& b, const Integer& target) {
  // Relaxation must make strict progress; fall back to one step if the
  // target does not weaken the bound.
  if (b.is_upper)
    b.value = target > b.value ? target : b.value + 1;
  else
    b.value = target < b.value ? target : b.value - 1;
  ++b.generation;
}

}  // namespace

std::pair<Integer, Integer> LinearizationState::domain_of(VarId v) const {
  Integer lo = 0, hi = 0;
  bool have_lo = false, have_hi = false;
  for (auto& b : bounds) {
    if (b.var != v) continue;
    (b.is_upper ? hi : lo) = b.value;
    (b.is_upper ? have_hi : have_lo) = true;
  }
  if (!have_lo || !have_hi)
    throw std::logic_error("variable has no artificial domain");
  return {lo, hi};
}

const ArtificialBound* LinearizationState::bound_by_id(int id) const {
  for (auto& b : bounds)
    if (b.id == id) return &b;
  return nullptr;
}

Literal LinearizationState::bound_literal(const ArtificialBound& b) {
  if (b.is_upper)
    return le0(Polynomial::var(b.var) - Polynomial(Rational(b.value)));
  return le0(Polynomial(Rational(b.value)) - Polynomial::var(b.var));
}

Literal LinearizationState::negated_bound_literal(const ArtificialBound& b) {
  if (b.is_upper)  // not (V <= u)  is  V >= u+1
    return le0(Polynomial(Rational(b.value + 1)) - Polynomial::var(b.var));
  return le0(Polynomial::var(b.var) - Polynomial(Rational(b.value - 1)));
}

std::vector<IdClause> LinearizationState::hard_clauses(bool include_ood) const {
  std::vector<IdClause> out;
  for (auto& wc : abstracted)
    if (wc.weight.hard) out.push_back({wc.clause, wc.id});
  for (auto& [key, c] : case_clauses) out.push_back(c);
  for (auto& c : blocking) out.push_back(c);
  if (include_ood)
    for (auto& c : ood_clauses) out.push_back(c);
  return out;
}

std::vector<WeightedClause> LinearizationState::soft_input_clauses() const {
  std::vector<WeightedClause> out;
  for (auto& wc : abstracted)
    if (!wc.weight.hard) out.push_back(wc);
  return out;
}

std::vector<WeightedClause> LinearizationState::bound_soft_clauses() const {
  std::vector<WeightedClause> out;
  for (auto& b : bounds)
    out.push_back({{bound_literal(b)}, Weight::soft(b.soft_weight, 0), b.id});
  return out;
}

std::set<VarId> choose_linearization_variables(const NiaFormula& f0) {
  std::set<Monomial> pool;
  for (auto& wc : f0.clauses)
    for (auto& lit : wc.clause) {
      if (lit.is_bool) continue;
      for (auto& [m, c] : lit.atom.poly.terms())
        if (!m.is_linear()) pool.insert(m);
    }

  std::set<VarId> s;
  while (!pool.empty()) {
    // Only integer variables can carry a finite case-split domain; real
    // variables (e.g. Motzkin multipliers) are never split.
    std::map<VarId, int> count;
    for (auto& m : pool)
      for (auto& [v, e] : m.factors)
        if (f0.vars->is_int(v)) ++count[v];
    if (count.empty())
      throw std::invalid_argument(
          "non-linear monomial without integer variables");
    VarId best = -1;
    int best_count = -1;
    for (auto& [v, c] : count)
      if (c > best_count) {  // map order gives the lowest id on ties
        best = v;
        best_count = c;
      }
    s.insert(best);
    std::set<Monomial> rest;
    for (auto& m : pool) {
      if (!m.contains(best)) {
        rest.insert(m);
        continue;
      }
      Monomial residue = m.without(best);
      if (!residue.is_linear()) rest.insert(residue);
    }
    pool = std::move(rest);
  }
  return s;
}

std::vector<ArtificialBound> artificial_bounds(const NiaFormula& f0,
                                               const std::set<VarId>& s) {
  std::vector<ArtificialBound> out;
  int id = max_clause_id(f0) + 1;
  for (VarId v : s) {
    ArtificialBound lo;
    lo.var = v;
    lo.is_upper = false;
    lo.value = -1;
    lo.id = id++;
    lo.true_bound = scan_true_bound(f0, v, false);
    out.push_back(lo);
    ArtificialBound hi;
    hi.var = v;
    hi.is_upper = true;
    hi.value = 1;
    hi.id = id++;
    hi.true_bound = scan_true_bound(f0, v, true);
    out.push_back(hi);
  }
  return out;
}

LinearizationState linearize(const NiaFormula& f0,
                             std::vector<ArtificialBound> bounds) {
  LinearizationState st;
  st.vars = f0.vars;
  st.bounds = std::move(bounds);
  for (auto& b : st.bounds) st.split_vars.insert(b.var);

  int id = max_clause_id(f0);
  for (auto& b : st.bounds) id = std::max(id, b.id);
  st.next_id = id + 1;

  for (auto& wc : f0.clauses)
    for (auto& lit : wc.clause) {
      if (lit.is_bool) continue;
      for (auto& [m, c] : lit.atom.poly.terms())
        for (auto& [v, e] : m.factors) ++st.occurrences[v];
    }

  for (auto& wc : f0.clauses) {
    WeightedClause abs = wc;
    for (auto& lit : abs.clause)
      if (!lit.is_bool) lit.atom.poly = abstract_poly(st, lit.atom.poly);
    st.abstracted.push_back(std::move(abs));
  }
  return st;
}

void update(LinearizationState& st, const std::vector<ArtificialBound>& old_bounds,
            const std::vector<ArtificialBound>& new_bounds) {
  for (auto& nb : new_bounds) {
    const ArtificialBound* ob = nullptr;
    for (auto& b : old_bounds)
      if (b.id == nb.id) ob = &b;
    if (!ob || (nb.is_upper ? nb.value < ob->value : nb.value > ob->value))
      throw std::invalid_argument("incremental update requires weaker bounds");
  }
  st.bounds = new_bounds;
  for (auto& nb : new_bounds) {
    const ArtificialBound* ob = nullptr;
    for (auto& b : old_bounds)
      if (b.id == nb.id) ob = &b;
    if (nb.value == ob->value) continue;
    Integer from = nb.is_upper ? ob->value + 1 : nb.value;
    Integer to = nb.is_upper ? nb.value : ob->value - 1;
    std::vector<Monomial> monos;
    for (auto& [m, v] : st.lin_var)
      if (v == nb.var) monos.push_back(m);
    for (auto& m : monos)
      for (Integer k = from; k <= to; ++k)
        if (!st.case_clauses.count({m, k})) add_case(st, m, k);
  }
}

void update_non_inc(LinearizationState& st,
                    const std::vector<ArtificialBound>& old_bounds,
                    const std::vector<ArtificialBound>& new_bounds,
                    const std::optional<std::vector<int>>& blocking_ids) {
  // Blocking clause over the old bounds: no model inside that box again.
  Clause block;
  for (auto& b : old_bounds) {
    if (blocking_ids &&
        std::find(blocking_ids->begin(), blocking_ids->end(), b.id) ==
            blocking_ids->end())
      continue;
    block.push_back(LinearizationState::negated_bound_literal(b));
  }
  st.blocking.push_back({std::move(block), st.next_id++});

  std::set<VarId> changed;
  for (auto& nb : new_bounds)
    for (auto& ob : old_bounds)
      if (ob.id == nb.id && ob.value != nb.value) changed.insert(nb.var);

  st.bounds = new_bounds;
  for (VarId v : changed) {
    std::vector<Monomial> monos;
    for (auto& [m, sv] : st.lin_var)
      if (sv == v) monos.push_back(m);
    for (auto& m : monos) {
      for (auto it = st.case_clauses.begin(); it != st.case_clauses.end();)
        it = it->first.first == m ? st.case_clauses.erase(it) : std::next(it);
      auto [lo, hi] = st.domain_of(v);
      for (Integer k = lo; k <= hi; ++k)
        if (!st.case_clauses.count({m, k})) add_case(st, m, k);
    }
  }
}

std::vector<ArtificialBound> relax_domains_cores(const LinearizationState& st,
                                                 const std::vector<int>& core_bound_ids,
                                                 const RelaxConfig& cfg) {
  std::vector<ArtificialBound> out = st.bounds;
  bool any = false;
  for (auto& b : out) {
    if (std::find(core_bound_ids.begin(), core_bound_ids.end(), b.id) ==
        core_bound_ids.end())
      continue;
    any = true;
    int occ = 1;
    if (auto it = st.occurrences.find(b.var); it != st.occurrences.end())
      occ = it->second;
    if (b.generation == 0) {
      Integer target;
      if (b.true_bound)
        target = *b.true_bound;
      else
        target = b.is_upper ? Integer(b.value + 1) : Integer(b.value - 1);
      widen(b, target);
    } else {
      Integer step = cfg.correction ? correction_step(cfg, b.generation, occ)
                                    : Integer(1);
      widen(b, b.is_upper ? Integer(b.value + step) : Integer(b.value - step));
    }
  }
  if (!any)
    throw std::invalid_argument("core does not intersect the artificial bounds");
  return out;
}

std::vector<ArtificialBound> relax_domains_min_models(const LinearizationState& st,
                                                      const Model& m,
                                                      const RelaxConfig& cfg) {
  std::vector<ArtificialBound> out = st.bounds;
  bool any = false;
  for (auto& b : out) {
    Rational v = m.get(b.var);
    bool violated = b.is_upper ? v > Rational(b.value) : v < Rational(b.value);
    if (!violated) continue;
    any = true;
    Integer mv = b.is_upper ? ceil_int(v) : floor_int(v);
    int occ = 1;
    if (auto it = st.occurrences.find(b.var); it != st.occurrences.end())
      occ = it->second;
    // An out-of-domain escape can be arbitrarily far (nothing constrains
    // the abstraction variable there), and following it verbatim makes
    // the case table explode. Cap each move so the domain grows at most
    // geometrically; a fixed satisfying point is still reached in
    // logarithmically many iterations.
    auto [dlo, dhi] = st.domain_of(b.var);
    Integer cap = (dhi - dlo) * 2;
    if (cap < 8) cap = 8;
    auto clamp = [&](Integer target) {
      if (b.is_upper)
        return target > b.value + cap ? Integer(b.value + cap) : target;
      return target < b.value - cap ? Integer(b.value - cap) : target;
    };
    if (b.generation == 0) {
      bool tb_ok = b.true_bound &&
                   (b.is_upper ? *b.true_bound >= mv : *b.true_bound <= mv);
      widen(b, tb_ok ? *b.true_bound : clamp(mv));
    } else {
      Integer target = mv;
      if (cfg.correction) {
        Integer step = correction_step(cfg, b.generation, occ);
        target = b.is_upper ? Integer(mv + step) : Integer(mv - step);
      }
      widen(b, clamp(target));
    }
  }
  if (!any)
    throw std::invalid_argument("model violates no artificial bound");
  // Fairness: a variable whose models keep escaping on one side only
  // would grow that side forever even when the true models lie on the
  // other. Once a side is three generations ahead, drag the stale side
  // along one relaxation step per call.
  for (size_t i = 0; i < out.size(); ++i) {
    for (size_t j = 0; j < out.size(); ++j) {
      if (out[j].var != out[i].var || out[j].is_upper == out[i].is_upper)
        continue;
      if (out[i].generation < out[j].generation + 3) continue;
      int occ = 1;
      if (auto it = st.occurrences.find(out[j].var); it != st.occurrences.end())
        occ = it->second;
      Integer step = cfg.correction
                         ? correction_step(cfg, out[j].generation + 1, occ)
                         : Integer(1);
      widen(out[j], out[j].is_upper ? Integer(out[j].value + step)
                                    : Integer(out[j].value - step));
    }
  }
  return out;
}

std::vector<ArtificialBound> relax_domains_non_inc(const LinearizationState& st,
                                                   const Model& m,
                                                   const Integer& radius) {
  std::set<VarId> violated;
  for (auto& b : st.bounds) {
    Rational v = m.get(b.var);
    if (b.is_upper ? v > Rational(b.value) : v < Rational(b.value))
      violated.insert(b.var);
  }
  if (violated.empty())
    throw std::invalid_argument("model violates no artificial bound");
  std::vector<ArtificialBound> out = st.bounds;
  for (auto& b : out) {
    if (!violated.count(b.var)) continue;
    Integer mv = floor_int(m.get(b.var));  // integral for Int variables
    b.value = b.is_upper ? Integer(mv + radius) : Integer(mv - radius);
    ++b.generation;
  }
  return out;
}

void refresh_out_of_domain_clauses(LinearizationState& st) {
  st.ood_clauses.clear();
  for (auto& [m, vq] : st.monomial_var) {
    if (m.factors.size() != 1 || m.factors[0].second != 2) continue;
    VarId v = m.factors[0].first;
    if (st.lin_var.at(m) != v) continue;  // split on another variable
    auto [lo, hi] = st.domain_of(v);
    Integer below = lo - 1;
    Integer above = hi + 1;
    if (below <= 0) {
      // V <= lo-1  implies  v_Q >= (lo-1)^2
      Clause c{le0(Polynomial(Rational(lo)) - Polynomial::var(v)),
               le0(Polynomial(Rational(Integer(below * below))) -
                   Polynomial::var(vq))};
      st.ood_clauses.push_back({std::move(c), st.next_id++});
    }
    if (above >= 0) {
      Clause c{le0(Polynomial::var(v) - Polynomial(Rational(hi))),
               le0(Polynomial(Rational(Integer(above * above))) -
                   Polynomial::var(vq))};
      st.ood_clauses.push_back({std::move(c), st.next_id++});
    }
  }
}

}  // namespace nlia
