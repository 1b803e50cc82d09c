#include "nlia/oracle.hpp"

#include <stdexcept>

namespace nlia {

OracleResult brute_force_nia(const std::vector<WeightedClause>& clauses,
                             const std::vector<VarId>& box_vars,
                             const Integer& lo, const Integer& hi) {
  if (hi < lo) throw std::invalid_argument("empty oracle box");
  Integer width = Integer(hi - lo + 1);
  Integer points = 1;
  for (size_t i = 0; i < box_vars.size(); ++i) {
    points *= width;
    if (points > 10000000)
      throw std::invalid_argument("oracle box too large to enumerate");
  }

  OracleResult best;
  std::vector<Integer> point(box_vars.size(), lo);
  while (true) {
    Model m;
    for (size_t i = 0; i < box_vars.size(); ++i)
      m.set(box_vars[i], Rational(point[i]));
    CheckResult cr = check_model(clauses, m);
    if (cr.holds_hard &&
        (!best.found || cost_lt(cr.cost, best.cost))) {
      best.found = true;
      best.model = m;
      best.cost = cr.cost;
    }

    size_t i = 0;  // odometer step
    while (i < point.size() && point[i] == hi) point[i++] = lo;
    if (i == point.size()) break;
    ++point[i];
  }
  return best;
}

}  // namespace nlia
