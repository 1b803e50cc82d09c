#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlia/ea.hpp"
#include "nlia/nia_solver.hpp"

namespace nlia {

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error("line " + std::to_string(line_) + " col " +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// A ground QF_NIA script reduced to weighted CNF. The variable table is
// heap-allocated so formula() stays valid across moves of the struct.
struct ParsedScript {
  std::string logic;
  std::shared_ptr<VarTable> vars;
  std::vector<WeightedClause> clauses;
  bool check_sat = false;
  bool get_model = false;
  bool get_objectives = false;

  bool has_soft() const {
    for (auto& wc : clauses)
      if (!wc.weight.hard) return true;
    return false;
  }
  NiaFormula formula() { return {vars.get(), clauses}; }
};

ParsedScript parse_script(const std::string& text);

// An exists-forall script (logic NIA_EA): free Int constants are
// existential, forall-bound Real variables universal.
struct ParsedEa {
  std::string logic;
  std::shared_ptr<VarTable> vars;
  EaProblem prob;
  bool check_sat = false;
  bool get_model = false;
  bool get_objectives = false;
};

ParsedEa parse_ea_script(const std::string& text);

std::string print_value(const Rational& r, Sort sort);

// First line sat/unsat/unknown, then "(objective r)" when minimizing,
// then the model over originally declared variables.
std::string print_result(LiaStatus status, const VarTable& vars,
                         const Model* model,
                         const std::optional<Rational>& objective);

}  // namespace nlia
