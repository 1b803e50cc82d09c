#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlia/poly.hpp"
#include "nlia/rational.hpp"
#include "nlia/vartable.hpp"

namespace nlia {

// Atom: poly rel 0.
enum class Rel { Le, Lt, Eq };

struct Atom {
  Polynomial poly;
  Rel rel = Rel::Le;

  bool is_linear() const { return poly.is_linear(); }
  std::string str(const VarTable& vars) const;
  bool operator==(const Atom& o) const { return rel == o.rel && poly == o.poly; }
  bool operator<(const Atom& o) const;
};

// A literal is a (possibly negated) arithmetic atom or Bool variable.
struct Literal {
  bool is_bool = false;
  bool positive = true;
  Atom atom;          // valid iff !is_bool
  VarId bool_var = -1;  // valid iff is_bool

  static Literal of_atom(Atom a, bool positive = true) {
    Literal l;
    l.is_bool = false;
    l.positive = positive;
    l.atom = std::move(a);
    return l;
  }
  static Literal of_bool(VarId v, bool positive = true) {
    Literal l;
    l.is_bool = true;
    l.positive = positive;
    l.bool_var = v;
    return l;
  }
  std::string str(const VarTable& vars) const;
  bool operator==(const Literal& o) const;
};

using Clause = std::vector<Literal>;

struct Weight {
  bool hard = true;
  Rational bound_cost = 0;  // weight of artificial bounds
  Rational soft_cost = 0;   // weight of user soft clauses

  static Weight hard_w() { return {}; }
  static Weight soft(Rational bound, Rational soft) {
    return Weight{false, std::move(bound), std::move(soft)};
  }
  CostPair pair() const { return {bound_cost, soft_cost}; }
};

struct WeightedClause {
  Clause clause;
  Weight weight;
  int id = -1;
};

// Total assignment of rational values; Bool variables hold 0/1.
class Model {
 public:
  void set(VarId v, Rational val) { values_[v] = std::move(val); }
  bool has(VarId v) const { return values_.count(v) != 0; }
  const Rational& get(VarId v) const;
  Rational get_or_zero(VarId v) const { return has(v) ? get(v) : Rational(0); }
  bool get_bool(VarId v) const { return has(v) && get(v) != 0; }
  const std::unordered_map<VarId, Rational>& values() const { return values_; }

 private:
  std::unordered_map<VarId, Rational> values_;
};

bool eval_atom(const Atom& a, const Model& m);
bool eval_literal(const Literal& l, const Model& m);
bool eval_clause(const Clause& c, const Model& m);

struct CheckResult {
  bool holds_hard = true;
  CostPair cost{0, 0};  // component-wise sum over falsified soft clauses
};

CheckResult check_model(const std::vector<WeightedClause>& f, const Model& m);

// Normalizes an atom: over pure-integer atoms, denominators are cleared,
// coefficients divided by their gcd, and p < 0 becomes p + 1 <= 0.
Atom normalize_atom(Atom a, const VarTable& vars);

// Negation of a literal as a disjunction (one or two literals): negated
// equalities are split into two inequalities.
std::vector<Literal> negate_literal(const Literal& l, const VarTable& vars);

std::string clause_str(const Clause& c, const VarTable& vars);

}  // namespace nlia
