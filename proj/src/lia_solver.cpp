#include "nlia/lia_solver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nlia/simplex.hpp"

namespace nlia {

namespace {

// Conflict explanation carried through the search: input clause ids,
// assumption indices, and the decision props still to be resolved.
struct Explain {
  std::set<int> clauses;
  std::set<int> assumptions;
  std::set<int> decisions;

  void merge(const Explain& o) {
    clauses.insert(o.clauses.begin(), o.clauses.end());
    assumptions.insert(o.assumptions.begin(), o.assumptions.end());
    decisions.insert(o.decisions.begin(), o.decisions.end());
  }
};

enum class SR { Sat, Conflict, Unknown };

struct SearchResult {
  SR kind;
  Explain conflict;
};

using FormKey = std::vector<std::pair<VarId, Rational>>;

struct BoundSpec {
  bool is_lower;
  DeltaRational val;
};

struct Prop {
  bool is_theory = false;
  VarId bool_var = -1;
  int form_var = -1;                 // simplex variable of the form
  std::vector<BoundSpec> when_true;  // bounds asserted on each polarity
  std::vector<BoundSpec> when_false;
};

struct SLit {
  int prop;
  bool pos;
  bool decide_false;  // decision heuristic tries this literal false first
};

struct SClause {
  std::vector<SLit> lits;
  int id;
};

class LiaSolver {
 public:
  LiaSolver(const LiaFormula& f, const std::vector<Literal>& assumptions,
            const Budget& budget)
      : f_(f), assumptions_(assumptions), budget_(budget) {}

  LiaResult run();

 private:
  // --- internalization -------------------------------------------------
  int column_of(VarId v);
  int form_var_of(const FormKey& key);
  int internalize_atom(const Atom& a);
  int internalize_bool(VarId v);
  bool build_clauses(LiaResult& out);

  // --- search ----------------------------------------------------------
  void assign(int prop, bool val, Explain reason);
  void undo_to(size_t tmark, size_t smark);
  std::optional<Explain> propagate();
  std::optional<Explain> theory_sync();
  Explain explain_tags(const std::vector<int>& tags);
  bool prop_holds_now(int p) const;
  SearchResult search(int branch_depth);
  Model build_model();

  const LiaFormula& f_;
  const std::vector<Literal>& assumptions_;
  Budget budget_;

  Simplex simplex_;
  std::map<VarId, int> col_of_;
  std::vector<VarId> var_of_col_;
  std::map<FormKey, int> form_vars_;
  // key: (form var, kind, bound); kind encodes rel and direction
  std::map<std::tuple<int, int, Rational>, int> atom_props_;
  std::map<VarId, int> bool_props_;
  std::vector<Prop> props_;
  std::vector<SClause> clauses_;

  std::vector<int> values_;          // per prop: 0 unassigned, 1 true, -1 false
  std::vector<Explain> reasons_;     // per prop
  std::vector<int> trail_;
  size_t theory_head_ = 0;
};

int LiaSolver::column_of(VarId v) {
  auto it = col_of_.find(v);
  if (it != col_of_.end()) return it->second;
  int c = simplex_.add_var();
  col_of_[v] = c;
  var_of_col_.push_back(v);
  return c;
}

int LiaSolver::form_var_of(const FormKey& key) {
  auto it = form_vars_.find(key);
  if (it != form_vars_.end()) return it->second;
  int fv;
  if (key.size() == 1 && key[0].second == 1) {
    fv = column_of(key[0].first);
  } else {
    std::vector<std::pair<int, Rational>> form;
    form.reserve(key.size());
    for (auto& [v, c] : key) form.emplace_back(column_of(v), c);
    fv = simplex_.add_var();
    simplex_.define(fv, form);
  }
  form_vars_[key] = fv;
  return fv;
}

// Splits a linear atom into a canonical form plus bound and creates (or
// finds) the matching prop.
int LiaSolver::internalize_atom(const Atom& a) {
  if (!a.poly.is_linear())
    throw std::invalid_argument("non-linear atom passed to the LIA engine");
  Polynomial q = a.poly.drop_constant();
  Rational c = a.poly.constant_term();
  // Canonical scaling: integral coefficients, gcd 1, first coefficient
  // positive.
  FormKey key;
  for (auto& [m, coef] : q.terms()) key.emplace_back(m.factors[0].first, coef);
  Integer lcm = 1, gcd = 0;
  for (auto& [v, coef] : key)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coef.get_den().get_mpz_t());
  for (auto& [v, coef] : key) {
    Integer num = coef.get_num() * (lcm / coef.get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
  }
  Rational m = Rational(lcm) / Rational(gcd);
  if (key.front().second < 0) m = -m;
  bool flipped = m < 0;
  for (auto& [v, coef] : key) coef *= m;
  Rational b = -c * m;

  bool int_valued = true;
  for (auto& [v, coef] : key)
    if (!f_.vars->is_int(v) || !is_integral(coef)) int_valued = false;

  // kind: 0 = (form <= b), 1 = (form < b), 2 = (form >= b),
  //       3 = (form > b), 4 = (form = b)
  int kind;
  switch (a.rel) {
    case Rel::Le: kind = flipped ? 2 : 0; break;
    case Rel::Lt: kind = flipped ? 3 : 1; break;
    default: kind = 4; break;
  }
  int fv = form_var_of(key);
  auto pk = std::make_tuple(fv, kind, b);
  auto it = atom_props_.find(pk);
  if (it != atom_props_.end()) return it->second;

  auto bound = [&](bool is_lower, bool strict) -> BoundSpec {
    if (int_valued) {
      Integer v;
      if (is_lower)
        v = strict ? floor_int(b) + 1 : ceil_int(b);
      else
        v = strict ? ceil_int(b) - 1 : floor_int(b);
      return {is_lower, DeltaRational(Rational(v))};
    }
    return {is_lower, DeltaRational(b, strict ? Rational(is_lower ? 1 : -1)
                                              : Rational(0))};
  };

  Prop p;
  p.is_theory = true;
  p.form_var = fv;
  switch (kind) {
    case 0:  // form <= b
      p.when_true = {bound(false, false)};
      p.when_false = {bound(true, true)};
      break;
    case 1:  // form < b
      p.when_true = {bound(false, true)};
      p.when_false = {bound(true, false)};
      break;
    case 2:  // form >= b
      p.when_true = {bound(true, false)};
      p.when_false = {bound(false, true)};
      break;
    case 3:  // form > b
      p.when_true = {bound(true, true)};
      p.when_false = {bound(false, false)};
      break;
    case 4:  // form = b; the negation carries no theory content (clauses
             // containing it are satisfied through some other literal)
      p.when_true = {bound(true, false), bound(false, false)};
      break;
  }
  props_.push_back(std::move(p));
  values_.push_back(0);
  reasons_.emplace_back();
  int idx = static_cast<int>(props_.size() - 1);
  atom_props_[pk] = idx;
  return idx;
}

int LiaSolver::internalize_bool(VarId v) {
  auto it = bool_props_.find(v);
  if (it != bool_props_.end()) return it->second;
  Prop p;
  p.is_theory = false;
  p.bool_var = v;
  props_.push_back(std::move(p));
  values_.push_back(0);
  reasons_.emplace_back();
  int idx = static_cast<int>(props_.size() - 1);
  bool_props_[v] = idx;
  return idx;
}

// Returns false (with out filled) when a clause is trivially empty.
bool LiaSolver::build_clauses(LiaResult& out) {
  for (auto& ic : f_.clauses) {
    SClause sc;
    sc.id = ic.id;
    bool satisfied = false;
    for (auto& lit : ic.clause) {
      if (!lit.is_bool && lit.atom.poly.drop_constant().is_zero()) {
        // Constant atom: fold it away.
        Model empty;
        if (eval_literal(lit, empty)) {
          satisfied = true;
          break;
        }
        continue;
      }
      if (!lit.is_bool && !lit.positive && lit.atom.rel == Rel::Eq) {
        // Expand a disequality into its two strict sides so the theory
        // sees real bounds instead of an opaque negated equality.
        for (const Literal& side :
             negate_literal(Literal::of_atom(lit.atom), *f_.vars))
          sc.lits.push_back({internalize_atom(side.atom), side.positive, true});
        continue;
      }
      int p = lit.is_bool ? internalize_bool(lit.bool_var)
                          : internalize_atom(lit.atom);
      sc.lits.push_back({p, lit.positive, false});
    }
    if (satisfied) continue;
    if (sc.lits.empty()) {
      out.status = LiaStatus::Unsat;
      out.core_clauses = {ic.id};
      return false;
    }
    clauses_.push_back(std::move(sc));
  }
  return true;
}

void LiaSolver::assign(int prop, bool val, Explain reason) {
  values_[prop] = val ? 1 : -1;
  reasons_[prop] = std::move(reason);
  trail_.push_back(prop);
}

void LiaSolver::undo_to(size_t tmark, size_t smark) {
  while (trail_.size() > tmark) {
    values_[trail_.back()] = 0;
    trail_.pop_back();
  }
  if (theory_head_ > tmark) theory_head_ = tmark;
  simplex_.pop_to(smark);
}

std::optional<Explain> LiaSolver::propagate() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& sc : clauses_) {
      int unassigned = -1;
      bool un_sign = true;
      int n_unassigned = 0;
      bool sat = false;
      for (auto& [p, pos, df] : sc.lits) {
        int v = values_[p];
        if (v == 0) {
          ++n_unassigned;
          unassigned = p;
          un_sign = pos;
          if (n_unassigned > 1) break;
        } else if ((v > 0) == pos) {
          sat = true;
          break;
        }
      }
      if (sat || n_unassigned > 1) continue;
      Explain e;
      e.clauses.insert(sc.id);
      for (auto& [p, pos, df] : sc.lits)
        if (values_[p] != 0 && p != unassigned) e.merge(reasons_[p]);
      if (n_unassigned == 0) return e;
      assign(unassigned, un_sign, std::move(e));
      changed = true;
    }
  }
  return std::nullopt;
}

Explain LiaSolver::explain_tags(const std::vector<int>& tags) {
  Explain e;
  for (int t : tags) e.merge(reasons_[trail_[t]]);
  return e;
}

std::optional<Explain> LiaSolver::theory_sync() {
  while (theory_head_ < trail_.size()) {
    int pi = static_cast<int>(theory_head_);
    int p = trail_[theory_head_++];
    const Prop& prop = props_[p];
    if (!prop.is_theory) continue;
    const auto& bounds = values_[p] > 0 ? prop.when_true : prop.when_false;
    for (const BoundSpec& bs : bounds) {
      auto conflict = bs.is_lower
                          ? simplex_.assert_lower(prop.form_var, bs.val, pi)
                          : simplex_.assert_upper(prop.form_var, bs.val, pi);
      if (conflict) return explain_tags(conflict->tags);
    }
  }
  if (auto conflict = simplex_.check()) return explain_tags(conflict->tags);
  return std::nullopt;
}

// Whether the positive phase of a theory prop is satisfied by the
// current (possibly non-integral) simplex assignment.
bool LiaSolver::prop_holds_now(int p) const {
  const Prop& prop = props_[p];
  DeltaRational v = simplex_.value(prop.form_var);
  for (const BoundSpec& bs : prop.when_true) {
    if (bs.is_lower ? v < bs.val : v > bs.val) return false;
  }
  return true;
}

Model LiaSolver::build_model() {
  Model m;
  std::vector<Rational> vals = simplex_.concrete_values();
  for (auto& [v, col] : col_of_) m.set(v, vals[col]);
  for (VarId v = 0; v < f_.vars->size(); ++v) {
    if (f_.vars->is_bool(v)) {
      auto it = bool_props_.find(v);
      bool val = it != bool_props_.end() && values_[it->second] > 0;
      m.set(v, Rational(val ? 1 : 0));
    } else if (!m.has(v)) {
      m.set(v, Rational(0));
    }
  }
  return m;
}

SearchResult LiaSolver::search(int branch_depth) {
  // Explicit decision stack: the number of Boolean decisions on a path is
  // only bounded by the number of internalized atoms, which native
  // recursion cannot afford once case splitting has produced thousands
  // of literals.
  struct Frame {
    int pick;
    bool want;
    size_t tmark, smark;
    bool is_branch;
    bool flipped;
  };
  std::vector<Frame> frames;
  for (;;) {
    if (budget_.timed_out()) return {SR::Unknown, {}};
    std::optional<Explain> conflict = propagate();
    if (!conflict) conflict = theory_sync();
    if (conflict) {
      // Backjump: flip the innermost decision the conflict depends on;
      // frames it does not mention are popped (their flip could only
      // rediscover the same conflict).
      bool resumed = false;
      while (!frames.empty()) {
        Frame& f = frames.back();
        undo_to(f.tmark, f.smark);
        if (!f.flipped && conflict->decisions.count(f.pick)) {
          conflict->decisions.erase(f.pick);
          f.flipped = true;
          assign(f.pick, !f.want, std::move(*conflict));
          resumed = true;
          break;
        }
        if (f.is_branch) --branch_depth;
        frames.pop_back();
      }
      if (resumed) continue;
      return {SR::Conflict, std::move(*conflict)};
    }

    // Decision policy: take the first unsatisfied clause and prefer a
    // literal that already holds under the current simplex assignment,
    // so the model moves away from its present values only when forced.
    int pick = -1;
    bool want = true;
    bool is_branch = false;
    for (size_t sci = 0; sci < clauses_.size() && pick == -1; ++sci) {
      auto& sc = clauses_[sci];
      bool sat = false;
      int first_un = -1;
      bool first_sign = true;
      int agree_un = -1;
      for (auto& [p, pos, df] : sc.lits) {
        int v = values_[p];
        if (v == 0) {
          if (first_un == -1) {
            first_un = p;
            first_sign = df ? false : pos;
          }
          if (agree_un == -1 && props_[p].is_theory &&
              prop_holds_now(p) == pos)
            agree_un = p;
        } else if ((v > 0) == pos) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        if (agree_un != -1) {
          pick = agree_un;
          want = prop_holds_now(agree_un);
        } else {
          pick = first_un;
          want = first_sign;
        }
      }
    }

    if (pick == -1) {
      // Boolean part complete and theory-consistent: enforce integrality.
      std::vector<Rational> vals = simplex_.concrete_values();
      VarId frac = -1;
      for (auto& [v, col] : col_of_) {
        if (f_.vars->is_int(v) && !is_integral(vals[col])) {
          frac = v;
          break;
        }
      }
      if (frac == -1) return {SR::Sat, {}};
      if (branch_depth >= budget_.max_branch_depth) return {SR::Unknown, {}};
      Integer fl = floor_int(vals[col_of_[frac]]);
      Atom a;
      a.poly = Polynomial::var(frac) - Polynomial(Rational(fl));
      a.rel = Rel::Le;
      pick = internalize_atom(a);
      want = true;
      is_branch = true;
      if (values_[pick] != 0) {
        // The branch atom cannot already be assigned: either polarity
        // would have forced the value away from the open interval.
        return {SR::Unknown, {}};
      }
    }

    frames.push_back(
        {pick, want, trail_.size(), simplex_.mark(), is_branch, false});
    if (is_branch) ++branch_depth;
    Explain self;
    self.decisions.insert(pick);
    assign(pick, want, std::move(self));
  }
}

LiaResult LiaSolver::run() {
  LiaResult out;
  if (!build_clauses(out)) return out;

  // Assert assumptions before searching.
  for (size_t i = 0; i < assumptions_.size(); ++i) {
    const Literal& lit = assumptions_[i];
    if (!lit.is_bool && lit.atom.poly.drop_constant().is_zero()) {
      Model empty;
      if (eval_literal(lit, empty)) continue;
      out.status = LiaStatus::Unsat;
      out.core_assumptions = {static_cast<int>(i)};
      return out;
    }
    int p = lit.is_bool ? internalize_bool(lit.bool_var)
                        : internalize_atom(lit.atom);
    Explain e;
    e.assumptions.insert(static_cast<int>(i));
    if (values_[p] == 0) {
      assign(p, lit.positive, std::move(e));
    } else if ((values_[p] > 0) != lit.positive) {
      e.merge(reasons_[p]);
      out.status = LiaStatus::Unsat;
      out.core_clauses.assign(e.clauses.begin(), e.clauses.end());
      out.core_assumptions.assign(e.assumptions.begin(), e.assumptions.end());
      return out;
    }
  }

  SearchResult r = search(0);
  switch (r.kind) {
    case SR::Sat: {
      out.status = LiaStatus::Sat;
      out.model = build_model();
      for (auto& ic : f_.clauses)
        if (!eval_clause(ic.clause, out.model))
          throw std::logic_error("internal error: uncertified LIA model");
      break;
    }
    case SR::Conflict:
      out.status = LiaStatus::Unsat;
      out.core_clauses.assign(r.conflict.clauses.begin(),
                              r.conflict.clauses.end());
      out.core_assumptions.assign(r.conflict.assumptions.begin(),
                                  r.conflict.assumptions.end());
      break;
    case SR::Unknown:
      out.status = LiaStatus::Unknown;
      break;
  }
  return out;
}

}  // namespace

LiaResult lia_solve(const LiaFormula& f, const Budget& budget) {
  return lia_solve_assuming(f, {}, budget);
}

LiaResult lia_solve_assuming(const LiaFormula& f,
                             const std::vector<Literal>& assumptions,
                             const Budget& budget) {
  LiaSolver solver(f, assumptions, budget);
  return solver.run();
}

}  // namespace nlia
