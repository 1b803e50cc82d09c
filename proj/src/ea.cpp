#include "nlia/ea.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace nlia {

namespace {

Literal le0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a);
}

Literal lt0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Lt;
  return Literal::of_atom(a);
}

Literal eq0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Eq;
  return Literal::of_atom(a);
}

bool mentions_univ(const Polynomial& p, const std::set<VarId>& univ) {
  for (VarId v : p.vars())
    if (univ.count(v)) return true;
  return false;
}

// Splits p into sum_y coeff[y]*y + rest(x). Enforces the fragment
// condition: each monomial holds at most one universal variable, with
// exponent one.
MotzkinRow row_of(const Polynomial& p, const std::set<VarId>& univ) {
  MotzkinRow row;
  Polynomial rest;
  for (auto& [m, c] : p.terms()) {
    VarId y = -1;
    for (auto& [v, e] : m.factors) {
      if (!univ.count(v)) continue;
      if (y != -1 || e != 1)
        throw std::invalid_argument(
            "monomial with two universal variable occurrences");
      y = v;
    }
    if (y == -1) {
      rest += Polynomial::monomial(m, c);
    } else {
      row.coeff[y] += Polynomial::monomial(m.without(y), c);
    }
  }
  row.rhs = -rest;
  return row;
}

}  // namespace

MotzkinSystem to_motzkin_system(const Clause& c, const EaProblem& prob) {
  std::set<VarId> univ(prob.univ_vars.begin(), prob.univ_vars.end());
  bool any = false;
  for (auto& lit : c)
    if (!lit.is_bool && mentions_univ(lit.atom.poly, univ)) any = true;
  MotzkinSystem sys;
  if (!any) {
    sys.passthrough = true;
    return sys;
  }

  // The clause is negated literal by literal; the negations form the
  // conjunctive system whose infeasibility over y we certify.
  for (auto& lit : c) {
    if (lit.is_bool)
      throw std::invalid_argument(
          "boolean literal in a clause with universal variables");
    const Polynomial& p = lit.atom.poly;
    switch (lit.atom.rel) {
      case Rel::Le:
        if (lit.positive)
          sys.strict.push_back(row_of(-p, univ));  // not(p<=0) is -p<0
        else
          sys.nonstrict.push_back(row_of(p, univ));
        break;
      case Rel::Lt:
        if (lit.positive)
          sys.nonstrict.push_back(row_of(-p, univ));  // not(p<0) is -p<=0
        else
          sys.strict.push_back(row_of(p, univ));
        break;
      case Rel::Eq:
        if (lit.positive)
          throw std::invalid_argument(
              "positive equality literal in a universal clause");
        // not(not(p=0)) is p=0, split into two nonstrict rows.
        sys.nonstrict.push_back(row_of(p, univ));
        sys.nonstrict.push_back(row_of(-p, univ));
        break;
    }
  }
  return sys;
}

MotzkinClauses motzkin_transform(const MotzkinSystem& sys, VarTable& vars) {
  MotzkinClauses out;
  for (size_t i = 0; i < sys.nonstrict.size(); ++i)
    out.lambda.push_back(vars.fresh("lam!" + std::to_string(i), Sort::Real,
                                    VarOrigin::Multiplier));
  for (size_t j = 0; j < sys.strict.size(); ++j)
    out.mu.push_back(vars.fresh("mu!" + std::to_string(j), Sort::Real,
                                VarOrigin::Multiplier));

  for (VarId l : out.lambda) out.clauses.push_back({le0(-Polynomial::var(l))});
  for (VarId m : out.mu) out.clauses.push_back({le0(-Polynomial::var(m))});

  std::set<VarId> ys;
  for (auto& r : sys.nonstrict)
    for (auto& [y, q] : r.coeff) ys.insert(y);
  for (auto& r : sys.strict)
    for (auto& [y, q] : r.coeff) ys.insert(y);

  // One linear-combination equation per universal variable.
  for (VarId y : ys) {
    Polynomial sum;
    for (size_t i = 0; i < sys.nonstrict.size(); ++i) {
      auto it = sys.nonstrict[i].coeff.find(y);
      if (it != sys.nonstrict[i].coeff.end())
        sum += Polynomial::var(out.lambda[i]) * it->second;
    }
    for (size_t j = 0; j < sys.strict.size(); ++j) {
      auto it = sys.strict[j].coeff.find(y);
      if (it != sys.strict[j].coeff.end())
        sum += Polynomial::var(out.mu[j]) * it->second;
    }
    out.clauses.push_back({eq0(sum)});
  }

  Polynomial lam_b, mu_d, mu_sum;
  for (size_t i = 0; i < sys.nonstrict.size(); ++i)
    lam_b += Polynomial::var(out.lambda[i]) * sys.nonstrict[i].rhs;
  for (size_t j = 0; j < sys.strict.size(); ++j) {
    mu_d += Polynomial::var(out.mu[j]) * sys.strict[j].rhs;
    mu_sum += Polynomial::var(out.mu[j]);
  }
  out.clauses.push_back({le0(lam_b + mu_d)});
  // lambda^T b < 0, or some strict multiplier is positive.
  out.clauses.push_back({lt0(lam_b), lt0(-mu_sum)});
  return out;
}

namespace {

struct EaBuilder {
  const EaProblem& prob;
  NiaFormula nf;
  std::vector<VarId> cert_vars;
  int next_id = 0;

  explicit EaBuilder(const EaProblem& p) : prob(p) {
    nf.vars = p.vars;
    for (auto& wc : p.clauses) next_id = std::max(next_id, wc.id + 1);
  }

  void add_hard(Clause c) {
    nf.clauses.push_back({std::move(c), Weight::hard_w(), next_id++});
  }

  void hard_clause(const WeightedClause& wc) {
    MotzkinSystem sys = to_motzkin_system(wc.clause, prob);
    if (sys.passthrough) {
      nf.clauses.push_back({wc.clause, wc.weight, next_id++});
      return;
    }
    MotzkinClauses mt = motzkin_transform(sys, *prob.vars);
    for (VarId v : mt.lambda) cert_vars.push_back(v);
    for (VarId v : mt.mu) cert_vars.push_back(v);
    for (auto& c : mt.clauses) add_hard(c);
  }

  // A soft universal clause becomes a soft indicator plus hard clauses
  // equating the indicator with the conjunction of the certificate
  // constraints.
  void soft_clause(const WeightedClause& wc) {
    MotzkinSystem sys = to_motzkin_system(wc.clause, prob);
    if (sys.passthrough) {
      nf.clauses.push_back({wc.clause, wc.weight, next_id++});
      return;
    }
    MotzkinClauses mt = motzkin_transform(sys, *prob.vars);
    for (VarId v : mt.lambda) cert_vars.push_back(v);
    for (VarId v : mt.mu) cert_vars.push_back(v);
    VarId ps = prob.vars->fresh("p!" + std::to_string(wc.id), Sort::Bool,
                                VarOrigin::SoftIndicator, wc.id);
    cert_vars.push_back(ps);

    std::vector<Literal> conj;  // literal standing for each clause
    for (auto& c : mt.clauses) {
      if (c.size() == 1) {
        conj.push_back(c[0]);
        Clause fwd = c;
        fwd.push_back(Literal::of_bool(ps, false));
        add_hard(std::move(fwd));
        continue;
      }
      VarId q = prob.vars->fresh("q!" + std::to_string(next_id), Sort::Bool,
                                 VarOrigin::Tseitin);
      conj.push_back(Literal::of_bool(q));
      Clause fwd = c;
      fwd.push_back(Literal::of_bool(q, false));
      add_hard(std::move(fwd));  // q -> clause
      for (auto& lit : c) {      // clause literal -> q
        Clause back{Literal::of_bool(q)};
        for (auto& nl : negate_literal(lit, *prob.vars)) back.push_back(nl);
        add_hard(std::move(back));
      }
      add_hard({Literal::of_bool(ps, false), Literal::of_bool(q)});  // ps -> q
    }
    // Conjunction of all certificate clauses implies ps.
    Clause back{Literal::of_bool(ps)};
    for (auto& lit : conj)
      for (auto& nl : negate_literal(lit, *prob.vars)) back.push_back(nl);
    add_hard(std::move(back));

    nf.clauses.push_back(
        {{Literal::of_bool(ps)}, Weight::soft(rat(0), wc.weight.soft_cost),
         next_id++});
  }
};

}  // namespace

EaResult solve_ea(const EaProblem& prob, const Strategy& strategy,
                  const Budget& budget) {
  EaBuilder b(prob);
  for (auto& wc : prob.clauses) {
    if (wc.weight.hard)
      b.hard_clause(wc);
    else
      b.soft_clause(wc);
  }

  NiaResult r = solve_maxsmt(b.nf, strategy, budget);
  EaResult out;
  out.status = r.status;
  out.objective = r.objective;
  out.stats = r.stats;
  if (r.status == LiaStatus::Sat) {
    for (VarId v : prob.exist_vars) out.model.set(v, r.model.get_or_zero(v));
    for (VarId v : b.cert_vars) out.certificate.set(v, r.model.get_or_zero(v));
  }
  return out;
}

}  // namespace nlia
