#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

namespace nlia {

// All solver arithmetic is exact. Rational is GMP-backed; Int is the
// arbitrary-precision integer used for bound values and monomial cases.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_int(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Integer ceil_int(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Cost pairs (bound cost, soft cost), compared lexicographically with the
// bound component first.
using CostPair = std::pair<Rational, Rational>;

inline bool cost_lt(const CostPair& a, const CostPair& b) {
  return a.first < b.first || (a.first == b.first && a.second < b.second);
}

inline bool cost_le(const CostPair& a, const CostPair& b) {
  return a.first < b.first || (a.first == b.first && a.second <= b.second);
}

inline CostPair cost_add(const CostPair& a, const CostPair& b) {
  return {a.first + b.first, a.second + b.second};
}

}  // namespace nlia
