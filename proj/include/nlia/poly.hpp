#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nlia/rational.hpp"
#include "nlia/vartable.hpp"

namespace nlia {

// Power product of variables, e.g. x^2*y. The empty factor list is the
// constant monomial 1. Factors are kept sorted by variable id.
struct Monomial {
  std::vector<std::pair<VarId, int>> factors;  // (var, exponent >= 1)

  static Monomial one() { return {}; }
  static Monomial var(VarId v, int exp = 1) { return Monomial{{{v, exp}}}; }

  int degree() const;
  bool is_constant() const { return factors.empty(); }
  bool is_linear() const { return degree() <= 1; }
  bool contains(VarId v) const;
  int exponent_of(VarId v) const;
  Monomial without(VarId v) const;
  Monomial times(const Monomial& other) const;

  bool operator==(const Monomial& o) const { return factors == o.factors; }
  bool operator<(const Monomial& o) const { return factors < o.factors; }
};

class Model;

// Multivariate polynomial with exact rational coefficients. Zero
// coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial var(VarId v);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_linear() const;
  bool is_constant() const;
  int degree() const;
  Rational constant_term() const;
  Rational coeff(const Monomial& m) const;
  Rational coeff_of_var(VarId v) const;  // linear coefficient of v
  std::set<VarId> vars() const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Rational eval(const Model& m) const;

  // The polynomial without its constant term.
  Polynomial drop_constant() const;

  std::string str(const VarTable& vars) const;

 private:
  std::map<Monomial, Rational> terms_;
};

// Substitutes v := k in monomial q. v must occur in q; the result is
// k^e times the remaining factors.
Polynomial eval_monomial_at(const Monomial& q, VarId v, const Integer& k);

std::string monomial_str(const Monomial& m, const VarTable& vars);

}  // namespace nlia
