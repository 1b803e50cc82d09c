#include "nlia/smtlib.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace nlia {

namespace {

// ---------------------------------------------------------------------
// S-expression reader with source positions.

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> list;
  int line = 0;
  int col = 0;
};

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col);
  }

  void bump() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        return;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  static bool symbol_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) return true;
    return std::string("~!@$%^&*_-+=<>.?/:").find(c) != std::string::npos;
  }

  SExpr read() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line;
    e.col = col;
    char c = text[pos];
    if (c == '(') {
      bump();
      e.is_atom = false;
      while (true) {
        skip_space();
        if (pos >= text.size()) fail("missing )");
        if (text[pos] == ')') {
          bump();
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (c == ')') fail("unexpected )");
    if (!symbol_char(c)) fail(std::string("unexpected character '") + c + "'");
    while (pos < text.size() && symbol_char(text[pos])) {
      e.atom.push_back(text[pos]);
      bump();
    }
    return e;
  }
};

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  bool seen_dot = false, seen_digit = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) return false;
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
    } else {
      return false;
    }
  }
  return seen_digit;
}

Rational numeral_value(const SExpr& e) {
  const std::string& s = e.atom;
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  if (digits.empty()) throw ParseError("bad numeral " + s, e.line, e.col);
  Rational r(digits);
  for (size_t i = dot + 1; i < s.size(); ++i) r /= 10;
  return r;
}

// ---------------------------------------------------------------------
// Boolean term tree. Negation is eliminated by nnf(); ite and boolean
// equality are desugared at construction.

struct BExpr {
  enum class K { True, False, Lit, Not, And, Or } k = K::True;
  Literal lit;
  std::vector<BExpr> args;

  static BExpr of(Literal l) {
    BExpr b;
    b.k = K::Lit;
    b.lit = std::move(l);
    return b;
  }
  static BExpr node(K kind, std::vector<BExpr> xs) {
    BExpr b;
    b.k = kind;
    b.args = std::move(xs);
    return b;
  }
};

Literal lnot(Literal l) {
  l.positive = !l.positive;
  return l;
}

BExpr nnf(const BExpr& e, bool neg) {
  using K = BExpr::K;
  switch (e.k) {
    case K::True:
      return BExpr::node(neg ? K::False : K::True, {});
    case K::False:
      return BExpr::node(neg ? K::True : K::False, {});
    case K::Lit:
      return BExpr::of(neg ? lnot(e.lit) : e.lit);
    case K::Not:
      return nnf(e.args[0], !neg);
    case K::And:
    case K::Or: {
      K kind = (e.k == K::And) == !neg ? K::And : K::Or;
      std::vector<BExpr> xs;
      for (auto& a : e.args) xs.push_back(nnf(a, neg));
      return BExpr::node(kind, std::move(xs));
    }
  }
  return {};
}

// Constant folding on an NNF tree.
BExpr simplify(const BExpr& e) {
  using K = BExpr::K;
  if (e.k != K::And && e.k != K::Or) return e;
  bool conj = e.k == K::And;
  std::vector<BExpr> xs;
  for (auto& a : e.args) {
    BExpr s = simplify(a);
    if (s.k == (conj ? K::True : K::False)) continue;
    if (s.k == (conj ? K::False : K::True))
      return BExpr::node(conj ? K::False : K::True, {});
    xs.push_back(std::move(s));
  }
  if (xs.empty()) return BExpr::node(conj ? K::True : K::False, {});
  if (xs.size() == 1) return xs[0];
  return BExpr::node(e.k, std::move(xs));
}

// ---------------------------------------------------------------------
// Translation of checked s-expressions to polynomials and BExprs.

struct Translator {
  VarTable& vars;
  // Single-level let bindings, by name, resolved at use site.
  std::map<std::string, const SExpr*> env;
  bool in_let = false;

  [[noreturn]] static void fail(const SExpr& e, const std::string& msg) {
    throw ParseError(msg, e.line, e.col);
  }

  const std::string& head(const SExpr& e) const {
    if (e.is_atom || e.list.empty() || !e.list[0].is_atom)
      fail(e, "expected an application");
    return e.list[0].atom;
  }

  VarId lookup(const SExpr& e) const {
    VarId v = vars.find(e.atom);
    if (v == -1) fail(e, "undeclared identifier " + e.atom);
    return v;
  }

  bool is_bool_term(const SExpr& e) const {
    if (e.is_atom) {
      if (e.atom == "true" || e.atom == "false") return true;
      if (is_numeral(e.atom)) return false;
      auto it = env.find(e.atom);
      if (it != env.end()) return is_bool_term(*it->second);
      return vars.is_bool(lookup(e));
    }
    static const std::set<std::string> bool_ops = {
        "and", "or", "not", "=>", "<=", "<", ">=", ">", "=", "distinct"};
    const std::string& h = head(e);
    if (h == "ite") return true;  // only Bool-sorted ite is supported
    if (h == "let") return is_bool_term(e.list.back());
    return bool_ops.count(h) != 0;
  }

  Polynomial arith(const SExpr& e) {
    if (e.is_atom) {
      if (is_numeral(e.atom)) return Polynomial(numeral_value(e));
      auto it = env.find(e.atom);
      if (it != env.end()) return arith(*it->second);
      VarId v = lookup(e);
      if (vars.is_bool(v)) fail(e, e.atom + " has sort Bool, expected numeric");
      return Polynomial::var(v);
    }
    const std::string& h = head(e);
    auto args = [&](size_t min) {
      if (e.list.size() - 1 < min) fail(e, h + " needs more arguments");
    };
    if (h == "+") {
      args(1);
      Polynomial p;
      for (size_t i = 1; i < e.list.size(); ++i) p += arith(e.list[i]);
      return p;
    }
    if (h == "-") {
      args(1);
      if (e.list.size() == 2) return -arith(e.list[1]);
      Polynomial p = arith(e.list[1]);
      for (size_t i = 2; i < e.list.size(); ++i) p += -arith(e.list[i]);
      return p;
    }
    if (h == "*") {
      args(1);
      Polynomial p(Rational(1));
      for (size_t i = 1; i < e.list.size(); ++i) p = p * arith(e.list[i]);
      return p;
    }
    if (h == "/") {
      // Rational literals only; general division is out of the language.
      args(2);
      Polynomial num = arith(e.list[1]);
      for (size_t i = 2; i < e.list.size(); ++i) {
        Polynomial d = arith(e.list[i]);
        if (!d.is_constant() || d.constant_term() == 0)
          fail(e, "division is only supported between numeric literals");
        num = num * Rational(1 / d.constant_term());
      }
      if (!num.is_constant())
        fail(e, "division is only supported between numeric literals");
      return num;
    }
    if (h == "div" || h == "mod" || h == "abs" || h == "rem")
      fail(e, h + " is not supported");
    if (h == "let") return arith_let(e);
    if (h == "ite") fail(e, "ite is only supported at sort Bool");
    fail(e, "unknown operator " + h);
  }

  Polynomial arith_let(const SExpr& e) {
    auto saved = enter_let(e);
    Polynomial p = arith(e.list[2]);
    env = std::move(saved);
    in_let = false;
    return p;
  }

  std::map<std::string, const SExpr*> enter_let(const SExpr& e) {
    if (in_let) fail(e, "nested let is not supported");
    if (e.list.size() != 3 || e.list[1].is_atom) fail(e, "malformed let");
    auto saved = env;
    in_let = true;
    for (auto& b : e.list[1].list) {
      if (b.is_atom || b.list.size() != 2 || !b.list[0].is_atom)
        fail(b, "malformed let binding");
      env[b.list[0].atom] = &b.list[1];
    }
    return saved;
  }

  Literal rel_lit(Rel rel, Polynomial p) {
    Atom a;
    a.poly = std::move(p);
    a.rel = rel;
    return Literal::of_atom(normalize_atom(std::move(a), vars));
  }

  // a op b over a chain of 2+ numeric arguments, conjoined pairwise.
  BExpr chain(const SExpr& e, Rel rel, bool flip, bool negate) {
    if (e.list.size() < 3) fail(e, head(e) + " needs two arguments");
    std::vector<BExpr> xs;
    for (size_t i = 1; i + 1 < e.list.size(); ++i) {
      Polynomial l = arith(e.list[i]), r = arith(e.list[i + 1]);
      Polynomial p = flip ? r - l : l - r;
      Literal lit = rel_lit(rel, std::move(p));
      if (negate) lit = lnot(lit);
      xs.push_back(BExpr::of(std::move(lit)));
    }
    if (xs.size() == 1) return xs[0];
    return BExpr::node(negate ? BExpr::K::Or : BExpr::K::And, std::move(xs));
  }

  BExpr boolean(const SExpr& e) {
    using K = BExpr::K;
    if (e.is_atom) {
      if (e.atom == "true") return BExpr::node(K::True, {});
      if (e.atom == "false") return BExpr::node(K::False, {});
      auto it = env.find(e.atom);
      if (it != env.end()) return boolean(*it->second);
      VarId v = lookup(e);
      if (!vars.is_bool(v)) fail(e, e.atom + " is not of sort Bool");
      return BExpr::of(Literal::of_bool(v));
    }
    const std::string& h = head(e);
    auto nary = [&](K kind) {
      std::vector<BExpr> xs;
      for (size_t i = 1; i < e.list.size(); ++i) xs.push_back(boolean(e.list[i]));
      return BExpr::node(kind, std::move(xs));
    };
    if (h == "and") return nary(K::And);
    if (h == "or") return nary(K::Or);
    if (h == "not") {
      if (e.list.size() != 2) fail(e, "not takes one argument");
      return BExpr::node(K::Not, {boolean(e.list[1])});
    }
    if (h == "=>") {
      if (e.list.size() < 3) fail(e, "=> needs two arguments");
      std::vector<BExpr> xs;
      for (size_t i = 1; i + 1 < e.list.size(); ++i)
        xs.push_back(BExpr::node(K::Not, {boolean(e.list[i])}));
      xs.push_back(boolean(e.list.back()));
      return BExpr::node(K::Or, std::move(xs));
    }
    if (h == "<=") return chain(e, Rel::Le, false, false);
    if (h == "<") return chain(e, Rel::Lt, false, false);
    if (h == ">=") return chain(e, Rel::Le, true, false);
    if (h == ">") return chain(e, Rel::Lt, true, false);
    if (h == "=") {
      if (e.list.size() < 3) fail(e, "= needs two arguments");
      if (is_bool_term(e.list[1])) return bool_eq(e);
      return chain(e, Rel::Eq, false, false);
    }
    if (h == "distinct") {
      if (e.list.size() < 3) fail(e, "distinct needs two arguments");
      if (is_bool_term(e.list[1])) fail(e, "distinct over Bool is not supported");
      std::vector<BExpr> xs;
      for (size_t i = 1; i < e.list.size(); ++i)
        for (size_t j = i + 1; j < e.list.size(); ++j)
          xs.push_back(BExpr::of(
              lnot(rel_lit(Rel::Eq, arith(e.list[i]) - arith(e.list[j])))));
      if (xs.size() == 1) return xs[0];
      return BExpr::node(K::And, std::move(xs));
    }
    if (h == "ite") {
      if (e.list.size() != 4) fail(e, "ite takes three arguments");
      if (!is_bool_term(e.list[2])) fail(e, "ite is only supported at sort Bool");
      BExpr c = boolean(e.list[1]);
      BExpr t = boolean(e.list[2]);
      BExpr el = boolean(e.list[3]);
      return BExpr::node(
          K::And, {BExpr::node(K::Or, {BExpr::node(K::Not, {c}), t}),
                   BExpr::node(K::Or, {c, std::move(el)})});
    }
    if (h == "let") {
      auto saved = enter_let(e);
      BExpr b = boolean(e.list[2]);
      env = std::move(saved);
      in_let = false;
      return b;
    }
    fail(e, "unknown operator " + h);
  }

  // Boolean equality a = b as (a -> b) and (b -> a).
  BExpr bool_eq(const SExpr& e) {
    using K = BExpr::K;
    std::vector<BExpr> xs;
    for (size_t i = 1; i + 1 < e.list.size(); ++i) {
      BExpr a = boolean(e.list[i]);
      BExpr b = boolean(e.list[i + 1]);
      xs.push_back(BExpr::node(K::Or, {BExpr::node(K::Not, {a}), b}));
      xs.push_back(BExpr::node(K::Or, {a, BExpr::node(K::Not, {b})}));
    }
    return BExpr::node(K::And, std::move(xs));
  }
};

// ---------------------------------------------------------------------
// CNF conversions.

struct CnfBuilder {
  VarTable& vars;
  std::vector<WeightedClause>& out;
  int next_id = 0;

  void add_hard(Clause c) {
    out.push_back({std::move(c), Weight::hard_w(), next_id++});
  }

  // Tseitin name for an NNF node; defining clauses state both directions.
  Literal name_of(const BExpr& e) {
    using K = BExpr::K;
    if (e.k == K::Lit) return e.lit;
    VarId q = vars.fresh("t!" + std::to_string(next_id), Sort::Bool,
                         VarOrigin::Tseitin);
    Literal lq = Literal::of_bool(q);
    std::vector<Literal> parts;
    for (auto& a : e.args) parts.push_back(name_of(a));
    if (e.k == K::And) {
      Clause back{lq};
      for (auto& p : parts) {
        add_hard({lnot(lq), p});  // q -> p
        back.push_back(lnot(p));
      }
      add_hard(std::move(back));  // all parts -> q
    } else {                      // Or
      Clause fwd{lnot(lq)};
      for (auto& p : parts) {
        add_hard({lnot(p), lq});  // p -> q
        fwd.push_back(p);
      }
      add_hard(std::move(fwd));  // q -> some part
    }
    return lq;
  }

  // Hard assert: conjuncts become clauses directly; a disjunct that is
  // itself a conjunction gets a Tseitin name.
  void assert_hard(const BExpr& e) {
    using K = BExpr::K;
    switch (e.k) {
      case K::True:
        return;
      case K::False: {
        VarId q = vars.fresh("t!" + std::to_string(next_id), Sort::Bool,
                             VarOrigin::Tseitin);
        add_hard({Literal::of_bool(q)});
        add_hard({Literal::of_bool(q, false)});
        return;
      }
      case K::Lit:
        add_hard({e.lit});
        return;
      case K::And:
        for (auto& a : e.args) assert_hard(a);
        return;
      case K::Or: {
        Clause c;
        for (auto& a : e.args) c.push_back(name_of(a));
        add_hard(std::move(c));
        return;
      }
      case K::Not:
        break;
    }
    throw std::logic_error("negation left after nnf");
  }

  void assert_soft(const BExpr& e, const Rational& w, const SExpr& at) {
    using K = BExpr::K;
    if (e.k == K::True) return;
    if (e.k == K::False) {
      // Unsatisfiable soft clause: a fresh Bool held false.
      VarId q = vars.fresh("t!" + std::to_string(next_id), Sort::Bool,
                           VarOrigin::Tseitin);
      add_hard({Literal::of_bool(q, false)});
      out.push_back({{Literal::of_bool(q)}, Weight::soft(Rational(0), w),
                     next_id++});
      return;
    }
    Clause c;
    if (e.k == K::Or) {
      for (auto& a : e.args) c.push_back(name_of(a));
    } else {
      c.push_back(name_of(e));
    }
    out.push_back({std::move(c), Weight::soft(Rational(0), w), next_id++});
    (void)at;
  }
};

// Distributive CNF for universal bodies: no fresh Booleans may appear in
// clauses handed to the Motzkin transform.
std::vector<Clause> distribute(const BExpr& e, const SExpr& at) {
  using K = BExpr::K;
  switch (e.k) {
    case K::True:
      return {};
    case K::False:
      throw ParseError("assertion simplifies to false", at.line, at.col);
    case K::Lit:
      return {{e.lit}};
    case K::And: {
      std::vector<Clause> all;
      for (auto& a : e.args)
        for (auto& c : distribute(a, at)) all.push_back(std::move(c));
      return all;
    }
    case K::Or: {
      std::vector<Clause> acc{{}};
      for (auto& a : e.args) {
        std::vector<Clause> next;
        for (auto& left : acc)
          for (auto& right : distribute(a, at)) {
            Clause c = left;
            c.insert(c.end(), right.begin(), right.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
        if (acc.size() > 4096)
          throw ParseError("universal body too large for clause distribution",
                           at.line, at.col);
      }
      return acc;
    }
    case K::Not:
      break;
  }
  throw std::logic_error("negation left after nnf");
}

// ---------------------------------------------------------------------
// Script walking.

Sort parse_sort(const SExpr& e) {
  if (e.is_atom) {
    if (e.atom == "Int") return Sort::Int;
    if (e.atom == "Real") return Sort::Real;
    if (e.atom == "Bool") return Sort::Bool;
  }
  throw ParseError("unsupported sort", e.line, e.col);
}

void declare(VarTable& vars, const SExpr& cmd) {
  const std::string& kind = cmd.list[0].atom;
  if (cmd.list.size() < 3 || !cmd.list[1].is_atom)
    throw ParseError("malformed " + kind, cmd.line, cmd.col);
  const SExpr& sort_e = cmd.list.back();
  if (kind == "declare-fun") {
    if (cmd.list.size() != 4 || cmd.list[2].is_atom || !cmd.list[2].list.empty())
      throw ParseError("only 0-ary declare-fun is supported", cmd.line, cmd.col);
  } else if (cmd.list.size() != 3) {
    throw ParseError("malformed declare-const", cmd.line, cmd.col);
  }
  if (vars.find(cmd.list[1].atom) != -1)
    throw ParseError(cmd.list[1].atom + " is already declared", cmd.line,
                     cmd.col);
  vars.fresh(cmd.list[1].atom, parse_sort(sort_e));
}

Rational soft_weight(const SExpr& cmd) {
  for (size_t i = 2; i < cmd.list.size(); ++i) {
    if (cmd.list[i].is_atom && cmd.list[i].atom == ":weight") {
      if (i + 1 >= cmd.list.size())
        throw ParseError(":weight needs a value", cmd.line, cmd.col);
      const SExpr& w = cmd.list[i + 1];
      if (!w.is_atom || !is_numeral(w.atom))
        throw ParseError("weight must be a positive numeral", w.line, w.col);
      Rational r = numeral_value(w);
      if (r <= 0)
        throw ParseError("weight must be positive", w.line, w.col);
      return r;
    }
  }
  return Rational(1);
}

template <typename FHard, typename FSoft, typename FDecl>
void walk_script(const std::string& text, std::string& logic, bool& check_sat,
                 bool& get_model, bool& get_objectives, FDecl on_decl,
                 FHard on_assert, FSoft on_soft) {
  Lexer lex(text);
  while (!lex.at_end()) {
    SExpr cmd = lex.read();
    if (cmd.is_atom || cmd.list.empty() || !cmd.list[0].is_atom)
      throw ParseError("expected a command", cmd.line, cmd.col);
    const std::string& h = cmd.list[0].atom;
    if (h == "set-logic") {
      if (cmd.list.size() != 2 || !cmd.list[1].is_atom)
        throw ParseError("malformed set-logic", cmd.line, cmd.col);
      logic = cmd.list[1].atom;
    } else if (h == "set-info" || h == "set-option" || h == "exit") {
      // ignored
    } else if (h == "declare-const" || h == "declare-fun") {
      on_decl(cmd);
    } else if (h == "assert") {
      if (cmd.list.size() != 2)
        throw ParseError("assert takes one term", cmd.line, cmd.col);
      on_assert(cmd.list[1]);
    } else if (h == "assert-soft") {
      if (cmd.list.size() < 2)
        throw ParseError("assert-soft takes a term", cmd.line, cmd.col);
      on_soft(cmd.list[1], soft_weight(cmd));
    } else if (h == "check-sat") {
      if (check_sat)
        throw ParseError("only one check-sat per script", cmd.line, cmd.col);
      check_sat = true;
    } else if (h == "get-model") {
      get_model = true;
    } else if (h == "get-objectives") {
      get_objectives = true;
    } else if (h == "push" || h == "pop") {
      throw ParseError("incremental solving is not supported", cmd.line,
                       cmd.col);
    } else {
      throw ParseError("unknown command " + h, cmd.line, cmd.col);
    }
  }
  if (!check_sat) throw ParseError("script has no check-sat", 1, 1);
}

}  // namespace

ParsedScript parse_script(const std::string& text) {
  ParsedScript s;
  s.vars = std::make_shared<VarTable>();
  CnfBuilder cnf{*s.vars, s.clauses};
  walk_script(
      text, s.logic, s.check_sat, s.get_model, s.get_objectives,
      [&](const SExpr& cmd) { declare(*s.vars, cmd); },
      [&](const SExpr& body) {
        Translator t{*s.vars, {}, false};
        cnf.assert_hard(simplify(nnf(t.boolean(body), false)));
      },
      [&](const SExpr& body, const Rational& w) {
        Translator t{*s.vars, {}, false};
        cnf.assert_soft(simplify(nnf(t.boolean(body), false)), w, body);
      });
  if (!s.logic.empty() && s.logic != "QF_NIA" && s.logic != "QF_LIA" &&
      s.logic != "QF_NIRA" && s.logic != "QF_LIRA")
    throw ParseError("unsupported logic " + s.logic + " for this mode", 1, 1);
  return s;
}

namespace {

// One assert of an exists-forall script: strips an optional single
// universal quantifier and returns clause-level CNF.
std::vector<Clause> ea_assert(const SExpr& body, VarTable& vars,
                              std::vector<VarId>& univ) {
  const SExpr* term = &body;
  std::map<std::string, const SExpr*> env;
  if (!body.is_atom && !body.list.empty() && body.list[0].is_atom &&
      body.list[0].atom == "forall") {
    if (body.list.size() != 3 || body.list[1].is_atom)
      throw ParseError("malformed forall", body.line, body.col);
    for (auto& b : body.list[1].list) {
      if (b.is_atom || b.list.size() != 2 || !b.list[0].is_atom)
        throw ParseError("malformed quantified variable", b.line, b.col);
      if (parse_sort(b.list[1]) != Sort::Real)
        throw ParseError("universal variables must have sort Real", b.line,
                         b.col);
      if (vars.find(b.list[0].atom) != -1)
        throw ParseError(b.list[0].atom + " shadows an existing variable",
                         b.line, b.col);
      univ.push_back(vars.fresh(b.list[0].atom, Sort::Real));
    }
    term = &body.list[2];
  }
  Translator t{vars, {}, false};
  return distribute(simplify(nnf(t.boolean(*term), false)), body);
}

}  // namespace

ParsedEa parse_ea_script(const std::string& text) {
  ParsedEa s;
  s.vars = std::make_shared<VarTable>();
  s.prob.vars = s.vars.get();
  int next_id = 0;
  walk_script(
      text, s.logic, s.check_sat, s.get_model, s.get_objectives,
      [&](const SExpr& cmd) {
        if (parse_sort(cmd.list.back()) != Sort::Int)
          throw ParseError("existential variables must have sort Int",
                           cmd.line, cmd.col);
        declare(*s.vars, cmd);
        s.prob.exist_vars.push_back(s.vars->find(cmd.list[1].atom));
      },
      [&](const SExpr& body) {
        for (auto& c : ea_assert(body, *s.vars, s.prob.univ_vars))
          s.prob.clauses.push_back({std::move(c), Weight::hard_w(), next_id++});
      },
      [&](const SExpr& body, const Rational& w) {
        auto cs = ea_assert(body, *s.vars, s.prob.univ_vars);
        if (cs.size() != 1)
          throw ParseError("a soft assertion must reduce to a single clause",
                           body.line, body.col);
        s.prob.clauses.push_back(
            {std::move(cs[0]), Weight::soft(Rational(0), w), next_id++});
      });
  if (!s.logic.empty() && s.logic != "NIA_EA")
    throw ParseError("expected logic NIA_EA", 1, 1);
  // Surface fragment violations (a product of two universal variables,
  // positive universal equalities) as parse errors with a position.
  for (auto& wc : s.prob.clauses) {
    try {
      to_motzkin_system(wc.clause, s.prob);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), 1, 1);
    }
  }
  return s;
}

std::string print_value(const Rational& r, Sort sort) {
  if (sort == Sort::Bool) return r != 0 ? "true" : "false";
  if (r < 0) return "(- " + print_value(-r, sort) + ")";
  if (is_integral(r)) return r.get_num().get_str();
  return "(/ " + r.get_num().get_str() + " " + r.get_den().get_str() + ")";
}

std::string print_result(LiaStatus status, const VarTable& vars,
                         const Model* model,
                         const std::optional<Rational>& objective) {
  std::string out;
  switch (status) {
    case LiaStatus::Sat:
      out = "sat";
      break;
    case LiaStatus::Unsat:
      out = "unsat";
      break;
    case LiaStatus::Unknown:
      out = "unknown";
      break;
  }
  if (status == LiaStatus::Sat && objective)
    out += "\n(objective " + rat_str(*objective) + ")";
  if (status == LiaStatus::Sat && model) {
    out += "\n(model";
    for (VarId v = 0; v < vars.size(); ++v) {
      if (vars.info(v).origin != VarOrigin::Original) continue;
      if (!model->has(v)) continue;  // e.g. universal variables in ea mode
      Sort sort = vars.sort(v);
      const char* sname = sort == Sort::Int    ? "Int"
                          : sort == Sort::Real ? "Real"
                                               : "Bool";
      out += " (define-fun " + vars.name(v) + " () " + sname + " " +
             print_value(model->get_or_zero(v), sort) + ")";
    }
    out += ")";
  }
  return out;
}

}  // namespace nlia
