#include "nlia/simplex.hpp"

#include <cassert>

namespace nlia {

int Simplex::add_var() {
  int v = num_vars();
  vals_.emplace_back();
  lower_.emplace_back();
  upper_.emplace_back();
  row_of_var_.push_back(-1);
  for (auto& row : rows_) row.emplace_back(0);
  return v;
}

void Simplex::define(int var, const std::vector<std::pair<int, Rational>>& form) {
  assert(row_of_var_[var] == -1);
  std::vector<Rational> row(num_vars(), Rational(0));
  DeltaRational val;
  for (auto& [v, c] : form) {
    if (row_of_var_[v] >= 0) {
      // Substitute currently-basic variables by their rows.
      const auto& sub = rows_[row_of_var_[v]];
      for (int j = 0; j < num_vars(); ++j) row[j] += c * sub[j];
    } else {
      row[v] += c;
    }
  }
  row[var] = 0;
  for (int j = 0; j < num_vars(); ++j)
    if (row[j] != 0) val += vals_[j] * row[j];
  int r = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  basic_of_row_.push_back(var);
  row_of_var_[var] = r;
  vals_[var] = val;
}

std::optional<Simplex::Conflict> Simplex::set_bound(int var, bool lower,
                                                   const DeltaRational& b,
                                                   int tag) {
  Bound& mine = lower ? lower_[var] : upper_[var];
  const Bound& other = lower ? upper_[var] : lower_[var];
  if (mine.present && (lower ? mine.val >= b : mine.val <= b))
    return std::nullopt;  // already at least as strict
  if (other.present && (lower ? b > other.val : b < other.val))
    return Conflict{{tag, other.tag}};
  trail_.push_back(UndoBound{var, lower, mine});
  mine = Bound{true, b, tag};
  if (row_of_var_[var] == -1) {
    if (lower ? vals_[var] < b : vals_[var] > b) update_nonbasic(var, b);
  }
  return std::nullopt;
}

std::optional<Simplex::Conflict> Simplex::assert_lower(int var,
                                                       const DeltaRational& b,
                                                       int tag) {
  return set_bound(var, true, b, tag);
}

std::optional<Simplex::Conflict> Simplex::assert_upper(int var,
                                                       const DeltaRational& b,
                                                       int tag) {
  return set_bound(var, false, b, tag);
}

void Simplex::update_nonbasic(int var, const DeltaRational& v) {
  DeltaRational d = v - vals_[var];
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rational& c = rows_[r][var];
    if (c != 0) vals_[basic_of_row_[r]] += d * c;
  }
  vals_[var] = v;
}

void Simplex::pivot_and_update(int basic, int nonbasic, const DeltaRational& v) {
  int r = row_of_var_[basic];
  const Rational& a = rows_[r][nonbasic];
  assert(a != 0);
  DeltaRational theta = (v - vals_[basic]) / a;
  for (size_t r2 = 0; r2 < rows_.size(); ++r2) {
    if (static_cast<int>(r2) == r) continue;
    const Rational& c = rows_[r2][nonbasic];
    if (c != 0) vals_[basic_of_row_[r2]] += theta * c;
  }
  vals_[basic] = v;
  vals_[nonbasic] += theta;
  pivot(basic, nonbasic);
}

void Simplex::pivot(int basic, int nonbasic) {
  int r = row_of_var_[basic];
  std::vector<Rational>& row = rows_[r];
  Rational a = row[nonbasic];
  // New row: nonbasic = (basic - sum_{j != nonbasic} a_j x_j) / a
  std::vector<Rational> newrow(num_vars(), Rational(0));
  for (int j = 0; j < num_vars(); ++j) {
    if (j == nonbasic || row[j] == 0) continue;
    newrow[j] = -row[j] / a;
  }
  newrow[basic] = Rational(1) / a;
  rows_[r] = newrow;
  basic_of_row_[r] = nonbasic;
  row_of_var_[basic] = -1;
  row_of_var_[nonbasic] = r;
  for (size_t r2 = 0; r2 < rows_.size(); ++r2) {
    if (static_cast<int>(r2) == r) continue;
    Rational c = rows_[r2][nonbasic];
    if (c == 0) continue;
    rows_[r2][nonbasic] = 0;
    for (int j = 0; j < num_vars(); ++j)
      if (newrow[j] != 0) rows_[r2][j] += c * newrow[j];
  }
}

std::optional<Simplex::Conflict> Simplex::check() {
  for (;;) {
    // Bland's rule: smallest violating basic variable first.
    int viol = -1;
    bool below = false;
    for (int v = 0; v < num_vars(); ++v) {
      if (row_of_var_[v] == -1) continue;
      if (lower_[v].present && vals_[v] < lower_[v].val) {
        viol = v;
        below = true;
        break;
      }
      if (upper_[v].present && vals_[v] > upper_[v].val) {
        viol = v;
        below = false;
        break;
      }
    }
    if (viol == -1) return std::nullopt;
    const std::vector<Rational>& row = rows_[row_of_var_[viol]];
    int pick = -1;
    for (int j = 0; j < num_vars(); ++j) {
      const Rational& a = row[j];
      if (a == 0 || row_of_var_[j] != -1) continue;
      bool can_up = !upper_[j].present || vals_[j] < upper_[j].val;
      bool can_down = !lower_[j].present || vals_[j] > lower_[j].val;
      bool ok = below ? (a > 0 ? can_up : can_down)
                      : (a > 0 ? can_down : can_up);
      if (ok) {
        pick = j;
        break;
      }
    }
    if (pick == -1) {
      Conflict c;
      c.tags.push_back(below ? lower_[viol].tag : upper_[viol].tag);
      for (int j = 0; j < num_vars(); ++j) {
        const Rational& a = row[j];
        if (a == 0 || row_of_var_[j] != -1) continue;
        bool need_upper = below ? a > 0 : a < 0;
        c.tags.push_back(need_upper ? upper_[j].tag : lower_[j].tag);
      }
      return c;
    }
    pivot_and_update(viol, pick,
                     below ? lower_[viol].val : upper_[viol].val);
  }
}

void Simplex::pop_to(size_t m) {
  while (trail_.size() > m) {
    UndoBound u = trail_.back();
    trail_.pop_back();
    (u.is_lower ? lower_[u.var] : upper_[u.var]) = u.old;
  }
}

std::vector<Rational> Simplex::concrete_values() const {
  Rational d0 = 1;
  auto tighten = [&](const DeltaRational& val, const DeltaRational& bnd,
                     bool is_lower) {
    // Need val >= bnd (lower) or val <= bnd (upper) after materializing.
    const DeltaRational& lo = is_lower ? bnd : val;
    const DeltaRational& hi = is_lower ? val : bnd;
    // hi >= lo holds in delta order; keep it after substitution.
    if (hi.real > lo.real && hi.delta < lo.delta) {
      Rational cand = (hi.real - lo.real) / (lo.delta - hi.delta);
      if (cand < d0) d0 = cand;
    }
  };
  for (int v = 0; v < num_vars(); ++v) {
    if (lower_[v].present) tighten(vals_[v], lower_[v].val, true);
    if (upper_[v].present) tighten(vals_[v], upper_[v].val, false);
  }
  std::vector<Rational> out(num_vars());
  for (int v = 0; v < num_vars(); ++v)
    out[v] = vals_[v].real + vals_[v].delta * d0;
  return out;
}

}  // namespace nlia
