#include "nlia/formula.hpp"

#include <sstream>
#include <stdexcept>

namespace nlia {

const Rational& Model::get(VarId v) const {
  auto it = values_.find(v);
  if (it == values_.end())
    throw std::runtime_error("model has no assignment for variable " +
                             std::to_string(v));
  return it->second;
}

bool Atom::operator<(const Atom& o) const {
  if (rel != o.rel) return rel < o.rel;
  return poly.terms() < o.poly.terms();
}

bool Literal::operator==(const Literal& o) const {
  if (is_bool != o.is_bool || positive != o.positive) return false;
  return is_bool ? bool_var == o.bool_var : atom == o.atom;
}

bool eval_atom(const Atom& a, const Model& m) {
  Rational v = a.poly.eval(m);
  switch (a.rel) {
    case Rel::Le: return v <= 0;
    case Rel::Lt: return v < 0;
    case Rel::Eq: return v == 0;
  }
  return false;
}

bool eval_literal(const Literal& l, const Model& m) {
  bool v = l.is_bool ? m.get_bool(l.bool_var) : eval_atom(l.atom, m);
  return l.positive ? v : !v;
}

bool eval_clause(const Clause& c, const Model& m) {
  for (auto& l : c)
    if (eval_literal(l, m)) return true;
  return false;
}

CheckResult check_model(const std::vector<WeightedClause>& f, const Model& m) {
  CheckResult r;
  for (auto& wc : f) {
    if (eval_clause(wc.clause, m)) continue;
    if (wc.weight.hard)
      r.holds_hard = false;
    else
      r.cost = cost_add(r.cost, wc.weight.pair());
  }
  return r;
}

static bool pure_int(const Polynomial& p, const VarTable& vars) {
  for (VarId v : p.vars())
    if (!vars.is_int(v)) return false;
  return true;
}

Atom normalize_atom(Atom a, const VarTable& vars) {
  if (!pure_int(a.poly, vars)) return a;
  // Clear denominators and divide by the gcd of the coefficients (the
  // constant term is kept out of the gcd so that e.g. 2x - 1 <= 0 is not
  // rescaled into a non-equivalent atom; only a common factor of all
  // terms including the constant is safe for Le/Eq, and for Lt we first
  // scale then turn it into Le).
  Integer lcm = 1;
  for (auto& [m, c] : a.poly.terms())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Polynomial scaled = a.poly * Rational(lcm);
  Integer gcd = 0;
  for (auto& [m, c] : scaled.terms())
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), c.get_num().get_mpz_t());
  if (gcd > 1) {
    if (a.rel == Rel::Eq) {
      scaled = scaled * Rational(Integer(1), gcd);
    } else {
      // p <= 0 (or < 0): dividing all terms by a common positive factor
      // preserves the solutions exactly.
      scaled = scaled * Rational(Integer(1), gcd);
    }
  }
  if (a.rel == Rel::Lt) {
    // Over integers p < 0 iff p + 1 <= 0 once coefficients are integral.
    scaled += Polynomial(Rational(1));
    a.rel = Rel::Le;
  }
  a.poly = scaled;
  return a;
}

std::vector<Literal> negate_literal(const Literal& l, const VarTable& vars) {
  if (l.is_bool) return {Literal::of_bool(l.bool_var, !l.positive)};
  const Atom& a = l.atom;
  if (l.positive) {
    switch (a.rel) {
      case Rel::Le:  // not(p <= 0)  ->  -p < 0
        return {Literal::of_atom(normalize_atom({-a.poly, Rel::Lt}, vars))};
      case Rel::Lt:  // not(p < 0)  ->  -p <= 0
        return {Literal::of_atom(normalize_atom({-a.poly, Rel::Le}, vars))};
      case Rel::Eq:  // not(p = 0)  ->  p < 0 or -p < 0
        return {Literal::of_atom(normalize_atom({a.poly, Rel::Lt}, vars)),
                Literal::of_atom(normalize_atom({-a.poly, Rel::Lt}, vars))};
    }
  } else {
    return {Literal::of_atom(a)};
  }
  return {};
}

std::string Atom::str(const VarTable& vars) const {
  std::ostringstream os;
  os << poly.str(vars)
     << (rel == Rel::Le ? " <= 0" : rel == Rel::Lt ? " < 0" : " = 0");
  return os.str();
}

std::string Literal::str(const VarTable& vars) const {
  std::string body = is_bool ? vars.name(bool_var) : atom.str(vars);
  return positive ? body : "!(" + body + ")";
}

std::string clause_str(const Clause& c, const VarTable& vars) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << " | ";
    os << c[i].str(vars);
  }
  os << ")";
  return os.str();
}

}  // namespace nlia
