#include <doctest.h>

#include <random>

#include "nlia/ea.hpp"

using namespace nlia;

namespace {

Literal le0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a);
}

Literal nle0(Polynomial p) {
  Atom a;
  a.poly = std::move(p);
  a.rel = Rel::Le;
  return Literal::of_atom(a, false);
}

// Loop invariant synthesis for "y = 0; while (y <= 2) y = y + 1;" with
// the template x0*y <= x1: initiation soft, inductiveness hard.
struct Invariant {
  VarTable vars;
  VarId x0, x1, y1;
  EaProblem prob;

  Invariant() {
    x0 = vars.fresh("x0", Sort::Int);
    x1 = vars.fresh("x1", Sort::Int);
    y1 = vars.fresh("y1", Sort::Real);
    prob.vars = &vars;
    prob.exist_vars = {x0, x1};
    prob.univ_vars = {y1};
    // [0 <= x1, 1]
    prob.clauses.push_back(
        {{le0(-Polynomial::var(x1))}, Weight::soft(rat(0), rat(1)), 0});
    // not(x0*y1 <= x1) or not(y1 <= 2) or x0*(y1+1) <= x1
    Polynomial x0y1 = Polynomial::var(x0) * Polynomial::var(y1);
    prob.clauses.push_back(
        {{nle0(x0y1 - Polynomial::var(x1)),
          nle0(Polynomial::var(y1) - Polynomial(rat(2))),
          le0(x0y1 + Polynomial::var(x0) - Polynomial::var(x1))},
         Weight::hard_w(), 1});
  }
};

}  // namespace

TEST_CASE("inductiveness clause maps to the expected rows") {
  Invariant f;
  MotzkinSystem sys = to_motzkin_system(f.prob.clauses[1].clause, f.prob);
  REQUIRE(!sys.passthrough);
  REQUIRE(sys.nonstrict.size() == 2);
  REQUIRE(sys.strict.size() == 1);
  CHECK(sys.nonstrict[0].coeff.at(f.y1) == Polynomial::var(f.x0));
  CHECK(sys.nonstrict[0].rhs == Polynomial::var(f.x1));
  CHECK(sys.nonstrict[1].coeff.at(f.y1) == Polynomial(rat(1)));
  CHECK(sys.nonstrict[1].rhs == Polynomial(rat(2)));
  CHECK(sys.strict[0].coeff.at(f.y1) == -Polynomial::var(f.x0));
  CHECK(sys.strict[0].rhs ==
        Polynomial::var(f.x0) - Polynomial::var(f.x1));
}

TEST_CASE("clause without universal variables passes through") {
  Invariant f;
  MotzkinSystem sys = to_motzkin_system(f.prob.clauses[0].clause, f.prob);
  CHECK(sys.passthrough);
}

TEST_CASE("transform of the inductiveness system matches the certificate") {
  Invariant f;
  MotzkinSystem sys = to_motzkin_system(f.prob.clauses[1].clause, f.prob);
  MotzkinClauses mt = motzkin_transform(sys, f.vars);
  REQUIRE(mt.lambda.size() == 2);
  REQUIRE(mt.mu.size() == 1);
  // 3 nonnegativity units, 1 equation, 1 inequality, 1 disjunction.
  REQUIRE(mt.clauses.size() == 6);
  VarId l1 = mt.lambda[0], l2 = mt.lambda[1], mu = mt.mu[0];

  const Clause& eq = mt.clauses[3];
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].atom.rel == Rel::Eq);
  Polynomial want_eq = Polynomial::var(l1) * Polynomial::var(f.x0) +
                       Polynomial::var(l2) -
                       Polynomial::var(mu) * Polynomial::var(f.x0);
  CHECK(eq[0].atom.poly == want_eq);

  const Clause& le = mt.clauses[4];
  Polynomial want_le =
      Polynomial::var(l1) * Polynomial::var(f.x1) +
      Polynomial::var(l2) * Polynomial(rat(2)) +
      Polynomial::var(mu) *
          (Polynomial::var(f.x0) - Polynomial::var(f.x1));
  CHECK(le[0].atom.poly == want_le);

  const Clause& dis = mt.clauses[5];
  REQUIRE(dis.size() == 2);
  CHECK(dis[0].atom.rel == Rel::Lt);
  CHECK(dis[1].atom.rel == Rel::Lt);

  // No monomial may multiply two real variables.
  for (auto& c : mt.clauses)
    for (auto& lit : c)
      for (auto& [m, coef] : lit.atom.poly.terms()) {
        int reals = 0;
        for (auto& [v, e] : m.factors)
          if (!f.vars.is_int(v)) reals += e;
        CHECK(reals <= 1);
      }
}

TEST_CASE("empty system transforms to an unsatisfiable clause") {
  VarTable vars;
  MotzkinSystem sys;
  MotzkinClauses mt = motzkin_transform(sys, vars);
  // Both disjuncts of the final clause are the false constant 0 < 0.
  Model empty;
  bool ok = false;
  for (auto& lit : mt.clauses.back())
    if (eval_literal(lit, empty)) ok = true;
  CHECK(!ok);
}

TEST_CASE("y-free strict contradiction row has the mu certificate") {
  VarTable vars;
  MotzkinSystem sys;
  MotzkinRow row;
  row.rhs = Polynomial(rat(-1));  // 0*y < -1
  sys.strict.push_back(row);
  MotzkinClauses mt = motzkin_transform(sys, vars);
  Model m;
  m.set(mt.mu[0], rat(1));
  for (auto& c : mt.clauses) CHECK(eval_clause(c, m));
}

TEST_CASE("invariant synthesis: sat with objective 0 and valid certificate") {
  Invariant f;
  EaResult r = solve_ea(f.prob, Strategy{}, Budget::with_seconds(20));
  REQUIRE(r.status == LiaStatus::Sat);
  REQUIRE(r.objective.has_value());
  CHECK(*r.objective == rat(0));

  // Certificate validity in exact arithmetic.
  MotzkinSystem sys = to_motzkin_system(f.prob.clauses[1].clause, f.prob);
  Model all = r.model;
  VarId l1 = -1, l2 = -1, mu = -1;
  for (auto& [v, val] : r.certificate.values()) {
    all.set(v, val);
    const std::string& n = f.vars.name(v);
    if (n == "lam!0") l1 = v;
    if (n == "lam!1") l2 = v;
    if (n == "mu!0") mu = v;
  }
  REQUIRE(l1 != -1);
  Rational x0 = r.model.get(f.x0), x1 = r.model.get(f.x1);
  Rational L1 = r.certificate.get(l1), L2 = r.certificate.get(l2),
           M = r.certificate.get(mu);
  CHECK(L1 >= 0);
  CHECK(L2 >= 0);
  CHECK(M >= 0);
  CHECK(L1 * x0 + L2 - M * x0 == 0);
  CHECK(L1 * x1 + 2 * L2 + M * (x0 - x1) <= 0);
  CHECK(((L1 * x1 + 2 * L2 < 0) || (M > 0)));

  // Witness soundness: 1000 random rational y keep F(x, y) true.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-10000, 10000);
  std::uniform_int_distribution<int> den(1, 100);
  for (int i = 0; i < 1000; ++i) {
    Model m;
    m.set(f.x0, x0);
    m.set(f.x1, x1);
    m.set(f.y1, rat(num(rng), den(rng)));
    for (auto& wc : f.prob.clauses) CHECK(eval_clause(wc.clause, m));
  }
}

TEST_CASE("no integer lower-bounds all reals") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  VarId y = vars.fresh("y", Sort::Real);
  EaProblem prob;
  prob.vars = &vars;
  prob.exist_vars = {x};
  prob.univ_vars = {y};
  // forall y. y - x >= 0, i.e. x - y <= 0
  prob.clauses.push_back(
      {{le0(Polynomial::var(x) - Polynomial::var(y))}, Weight::hard_w(), 0});
  EaResult r = solve_ea(prob, Strategy{}, Budget::with_seconds(20));
  CHECK(r.status == LiaStatus::Unsat);
}

TEST_CASE("real interval gap: y <= 0 or y >= 1 is not a tautology") {
  VarTable vars;
  VarId y = vars.fresh("y", Sort::Real);
  EaProblem prob;
  prob.vars = &vars;
  prob.exist_vars = {};
  prob.univ_vars = {y};
  prob.clauses.push_back({{le0(Polynomial::var(y)),
                           le0(Polynomial(rat(1)) - Polynomial::var(y))},
                          Weight::hard_w(), 0});
  EaResult r = solve_ea(prob, Strategy{}, Budget::with_seconds(20));
  CHECK(r.status == LiaStatus::Unsat);
}

TEST_CASE("y-free problem degenerates to plain solving") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  VarId y = vars.fresh("y", Sort::Real);
  EaProblem prob;
  prob.vars = &vars;
  prob.exist_vars = {x};
  prob.univ_vars = {y};
  prob.clauses.push_back({{le0(Polynomial(rat(1)) - Polynomial::var(x)),
                           le0(Polynomial::var(x) + Polynomial(rat(1)))},
                          Weight::hard_w(), 0});
  EaResult r = solve_ea(prob, Strategy{}, Budget::with_seconds(20));
  REQUIRE(r.status == LiaStatus::Sat);
  Rational xv = r.model.get(x);
  CHECK(((xv >= 1) || (xv <= -1)));
}
