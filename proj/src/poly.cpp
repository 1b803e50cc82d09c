#include "nlia/poly.hpp"

#include <cassert>
#include <sstream>

#include "nlia/formula.hpp"

namespace nlia {

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, e] : factors) d += e;
  return d;
}

bool Monomial::contains(VarId v) const { return exponent_of(v) > 0; }

int Monomial::exponent_of(VarId v) const {
  for (auto& [w, e] : factors)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  for (auto& f : factors)
    if (f.first != v) r.factors.push_back(f);
  return r;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial r;
  auto a = factors.begin(), b = other.factors.begin();
  while (a != factors.end() || b != other.factors.end()) {
    if (b == other.factors.end() || (a != factors.end() && a->first < b->first))
      r.factors.push_back(*a++);
    else if (a == factors.end() || b->first < a->first)
      r.factors.push_back(*b++);
    else {
      r.factors.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  return r;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[Monomial::one()] = c;
}

Polynomial Polynomial::var(VarId v) {
  Polynomial p;
  p.terms_[Monomial::var(v)] = 1;
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

bool Polynomial::is_linear() const {
  for (auto& [m, c] : terms_)
    if (m.degree() > 1) return false;
  return true;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

int Polynomial::degree() const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Rational Polynomial::constant_term() const { return coeff(Monomial::one()); }

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::coeff_of_var(VarId v) const {
  return coeff(Monomial::var(v));
}

std::set<VarId> Polynomial::vars() const {
  std::set<VarId> r;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m.factors) r.insert(v);
  return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_) r.add_term(m1.times(m2), c1 * c2);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

Rational Polynomial::eval(const Model& model) const {
  Rational total = 0;
  for (auto& [m, c] : terms_) {
    Rational term = c;
    for (auto& [v, e] : m.factors) {
      const Rational& val = model.get(v);
      for (int i = 0; i < e; ++i) term *= val;
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::drop_constant() const {
  Polynomial r = *this;
  r.terms_.erase(Monomial::one());
  return r;
}

Polynomial eval_monomial_at(const Monomial& q, VarId v, const Integer& k) {
  int e = q.exponent_of(v);
  assert(e > 0 && "variable must occur in the monomial");
  Integer ke = 1;
  for (int i = 0; i < e; ++i) ke *= k;
  return Polynomial::monomial(q.without(v), Rational(ke));
}

std::string monomial_str(const Monomial& m, const VarTable& vars) {
  if (m.is_constant()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [v, e] : m.factors) {
    if (!first) os << "*";
    first = false;
    os << vars.name(v);
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

std::string Polynomial::str(const VarTable& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m.is_constant())
      os << rat_str(c);
    else if (c == 1)
      os << monomial_str(m, vars);
    else
      os << rat_str(c) << "*" << monomial_str(m, vars);
  }
  return os.str();
}

}  // namespace nlia
