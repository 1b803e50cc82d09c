#include <doctest.h>

#include "nlia/nia_solver.hpp"

using namespace nlia;

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

struct Running {
  VarTable vars;
  VarId t, x, w, y;
  NiaFormula f0;

  Running() {
    t = vars.fresh("t", Sort::Int);
    x = vars.fresh("x", Sort::Int);
    w = vars.fresh("w", Sort::Int);
    y = vars.fresh("y", Sort::Int);
    f0.vars = &vars;
    Polynomial tx = Polynomial::var(t) * Polynomial::var(x);
    Polynomial sq = Polynomial::var(t) * Polynomial::var(t) +
                    Polynomial::var(x) * Polynomial::var(x) +
                    Polynomial::var(w) * Polynomial::var(w) +
                    Polynomial::var(y) * Polynomial::var(y);
    f0.clauses.push_back(
        {{le0(Polynomial(rat(4)) - tx - Polynomial::var(y))}, Weight::hard_w(), 0});
    f0.clauses.push_back({{le0(sq - Polynomial(rat(12)))}, Weight::hard_w(), 1});
  }
};

Strategy with_kind(StrategyKind k) {
  Strategy s;
  s.kind = k;
  return s;
}

Budget quick() { return Budget::with_seconds(20); }

void check_running_model(const Running& r, const NiaResult& res) {
  REQUIRE(res.status == LiaStatus::Sat);
  Rational t = res.model.get(r.t), x = res.model.get(r.x),
           w = res.model.get(r.w), y = res.model.get(r.y);
  CHECK(t * x + y >= rat(4));
  CHECK(t * t + x * x + w * w + y * y <= rat(12));
}

}  // namespace

TEST_CASE("running example is sat under every strategy") {
  for (StrategyKind k :
       {StrategyKind::Cores, StrategyKind::MaxSmtModels, StrategyKind::OmtModels,
        StrategyKind::JumpNoCores, StrategyKind::JumpCores}) {
    Running r;
    NiaResult res = solve_smt(r.f0, with_kind(k), quick());
    check_running_model(r, res);
  }
}

TEST_CASE("maxsmt strategy: first iteration optimum has bound cost 1") {
  Running r;
  NiaResult res = solve_smt(r.f0, with_kind(StrategyKind::MaxSmtModels), quick());
  check_running_model(r, res);
  REQUIRE(res.stats.iterations.size() >= 2);
  CHECK(res.stats.iterations[0].optimizer_cost == CostPair{rat(1), rat(0)});
  CHECK(res.stats.iterations.back().optimizer_cost == CostPair{rat(0), rat(0)});
}

TEST_CASE("omt strategy: distance 1 first, at least three iterations") {
  Running r;
  NiaResult res = solve_smt(r.f0, with_kind(StrategyKind::OmtModels), quick());
  check_running_model(r, res);
  REQUIRE(res.stats.iterations.size() >= 3);
  CHECK(res.stats.iterations[0].omt_distance == rat(1));
}

TEST_CASE("jump strategy: x-domain becomes [2,6] and an 8-literal block") {
  Running r;
  Strategy s = with_kind(StrategyKind::JumpNoCores);
  NiaResult res = solve_smt(r.f0, s, quick());
  check_running_model(r, res);
  REQUIRE(res.stats.iterations.size() >= 2);
  const IterationInfo& it1 = res.stats.iterations[0];
  CHECK(it1.blocking_literals == 8);
  auto dom = it1.domains_after.at(r.x);
  CHECK(dom.first == 2);
  CHECK(dom.second == 6);
}

TEST_CASE("jump-cores strategy: 5-literal blocking clause") {
  Running r;
  NiaResult res = solve_smt(r.f0, with_kind(StrategyKind::JumpCores), quick());
  check_running_model(r, res);
  REQUIRE(res.stats.iterations.size() >= 2);
  CHECK(res.stats.iterations[0].blocking_literals == 5);
}

TEST_CASE("jump mode never repeats a bound multiset") {
  Running r;
  NiaResult res = solve_smt(r.f0, with_kind(StrategyKind::JumpNoCores), quick());
  REQUIRE(res.status == LiaStatus::Sat);
  for (size_t i = 0; i < res.stats.iterations.size(); ++i)
    for (size_t j = i + 1; j < res.stats.iterations.size(); ++j) {
      auto a = res.stats.iterations[i].bounds_before;
      auto b = res.stats.iterations[j].bounds_before;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a != b);
    }
}

TEST_CASE("negative square is unsat with out-of-domain clauses") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  NiaFormula f0;
  f0.vars = &vars;
  f0.clauses.push_back(
      {{lt0(Polynomial::var(x) * Polynomial::var(x))}, Weight::hard_w(), 0});
  for (StrategyKind k : {StrategyKind::Cores, StrategyKind::MaxSmtModels}) {
    NiaResult res = solve_smt(f0, with_kind(k), quick());
    CHECK(res.status == LiaStatus::Unsat);
  }
}

TEST_CASE("linear input solves in one iteration without bounds") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  NiaFormula f0;
  f0.vars = &vars;
  f0.clauses.push_back(
      {{le0(Polynomial(rat(3)) - Polynomial::var(x))}, Weight::hard_w(), 0});
  NiaResult res = solve_smt(f0, with_kind(StrategyKind::Cores), quick());
  REQUIRE(res.status == LiaStatus::Sat);
  CHECK(res.model.get(x) >= rat(3));
  CHECK(res.stats.iterations.size() == 1);
}

TEST_CASE("maxsmt over nia: square cap forces one soft violation") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  NiaFormula f0;
  f0.vars = &vars;
  f0.clauses.push_back(
      {{le0(Polynomial::var(x) * Polynomial::var(x) - Polynomial(rat(4)))},
       Weight::hard_w(), 0});
  f0.clauses.push_back({{le0(Polynomial(rat(3)) - Polynomial::var(x))},
                        Weight::soft(rat(0), rat(1)), 1});
  NiaResult res = solve_maxsmt(f0, with_kind(StrategyKind::MaxSmtModels), quick());
  REQUIRE(res.status == LiaStatus::Sat);
  REQUIRE(res.objective.has_value());
  CHECK(*res.objective == rat(1));
  CHECK(res.model.get(x) * res.model.get(x) <= rat(4));
}

TEST_CASE("maxsmt with unsat hard part") {
  VarTable vars;
  VarId x = vars.fresh("x", Sort::Int);
  NiaFormula f0;
  f0.vars = &vars;
  f0.clauses.push_back(
      {{le0(Polynomial::var(x) - Polynomial(rat(0)))}, Weight::hard_w(), 0});
  f0.clauses.push_back(
      {{le0(Polynomial(rat(1)) - Polynomial::var(x))}, Weight::hard_w(), 1});
  f0.clauses.push_back({{le0(Polynomial::var(x))}, Weight::soft(rat(0), rat(1)), 2});
  NiaResult res = solve_maxsmt(f0, with_kind(StrategyKind::MaxSmtModels), quick());
  CHECK(res.status == LiaStatus::Unsat);
}
