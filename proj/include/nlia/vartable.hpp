#pragma once

#include <cassert>
#include <string>
#include <vector>

namespace nlia {

using VarId = int;

enum class Sort { Int, Real, Bool };

enum class VarOrigin {
  Original,             // declared in the input script
  MonomialAbstraction,  // fresh variable standing for a non-linear monomial
  Multiplier,           // Motzkin multiplier (lambda/mu)
  CostSlackLower,       // distance slack below the artificial lower bound
  CostSlackUpper,       // distance slack above the artificial upper bound
  CostTotal,            // the variable minimized by the OMT layer
  SoftIndicator,        // 0/1 indicator of a relaxed soft clause
  Tseitin,              // auxiliary Bool introduced by CNF conversion
};

struct VarInfo {
  std::string name;
  Sort sort = Sort::Int;
  VarOrigin origin = VarOrigin::Original;
  VarId of = -1;  // for CostSlack*: the bounded variable; for SoftIndicator: clause id
};

class VarTable {
 public:
  VarId fresh(std::string name, Sort sort, VarOrigin origin = VarOrigin::Original,
              VarId of = -1) {
    vars_.push_back(VarInfo{std::move(name), sort, origin, of});
    return static_cast<VarId>(vars_.size() - 1);
  }

  const VarInfo& info(VarId v) const {
    assert(v >= 0 && v < static_cast<VarId>(vars_.size()));
    return vars_[v];
  }

  const std::string& name(VarId v) const { return info(v).name; }
  Sort sort(VarId v) const { return info(v).sort; }
  bool is_int(VarId v) const { return sort(v) == Sort::Int; }
  bool is_bool(VarId v) const { return sort(v) == Sort::Bool; }
  int size() const { return static_cast<int>(vars_.size()); }

  VarId find(const std::string& name) const {
    for (VarId v = 0; v < size(); ++v)
      if (vars_[v].name == name) return v;
    return -1;
  }

 private:
  std::vector<VarInfo> vars_;
};

}  // namespace nlia
