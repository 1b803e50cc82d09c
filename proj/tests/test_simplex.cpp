#include <doctest.h>

#include <algorithm>

#include "nlia/simplex.hpp"

using namespace nlia;

TEST_CASE("feasible system of two defined forms") {
  Simplex s;
  int x = s.add_var();
  int y = s.add_var();
  int f1 = s.add_var();
  s.define(f1, {{x, rat(1)}, {y, rat(1)}});  // x + y
  int f2 = s.add_var();
  s.define(f2, {{x, rat(1)}, {y, rat(-1)}});  // x - y

  CHECK_FALSE(s.assert_lower(f1, DeltaRational(rat(4)), 0));
  CHECK_FALSE(s.assert_upper(f2, DeltaRational(rat(0)), 1));
  CHECK_FALSE(s.assert_upper(x, DeltaRational(rat(1)), 2));
  CHECK_FALSE(s.check());

  auto vals = s.concrete_values();
  CHECK(vals[x] + vals[y] >= rat(4));
  CHECK(vals[x] - vals[y] <= rat(0));
  CHECK(vals[x] <= rat(1));
}

TEST_CASE("conflict between opposite bounds on one variable") {
  Simplex s;
  int x = s.add_var();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(3)), 7));
  auto c = s.assert_upper(x, DeltaRational(rat(2)), 9);
  REQUIRE(c);
  std::vector<int> tags = c->tags;
  std::sort(tags.begin(), tags.end());
  CHECK(tags == std::vector<int>{7, 9});
}

TEST_CASE("conflict found by pivoting carries the responsible tags") {
  Simplex s;
  int x = s.add_var();
  int y = s.add_var();
  int f = s.add_var();
  s.define(f, {{x, rat(1)}, {y, rat(1)}});
  CHECK_FALSE(s.assert_upper(x, DeltaRational(rat(1)), 0));
  CHECK_FALSE(s.assert_upper(y, DeltaRational(rat(1)), 1));
  CHECK_FALSE(s.assert_lower(f, DeltaRational(rat(3)), 2));
  auto c = s.check();
  REQUIRE(c);
  std::vector<int> tags = c->tags;
  std::sort(tags.begin(), tags.end());
  CHECK(tags == std::vector<int>{0, 1, 2});
}

TEST_CASE("strict bounds are honored by concrete values") {
  Simplex s;
  int x = s.add_var();
  // 0 < x < 1
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(0), rat(1)), 0));
  CHECK_FALSE(s.assert_upper(x, DeltaRational(rat(1), rat(-1)), 1));
  CHECK_FALSE(s.check());
  auto vals = s.concrete_values();
  CHECK(vals[x] > rat(0));
  CHECK(vals[x] < rat(1));
}

TEST_CASE("strict bounds meeting at a point conflict") {
  Simplex s;
  int x = s.add_var();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(1), rat(1)), 0));  // x > 1
  auto c = s.assert_upper(x, DeltaRational(rat(1)), 1);              // x <= 1
  CHECK(c);
}

TEST_CASE("backtracking restores bounds") {
  Simplex s;
  int x = s.add_var();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(0)), 0));
  size_t m = s.mark();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(10)), 1));
  CHECK(s.assert_upper(x, DeltaRational(rat(5)), 2));
  s.pop_to(m);
  CHECK_FALSE(s.assert_upper(x, DeltaRational(rat(5)), 3));
  CHECK_FALSE(s.check());
  auto vals = s.concrete_values();
  CHECK(vals[x] >= rat(0));
  CHECK(vals[x] <= rat(5));
}

TEST_CASE("redundant weaker bound leaves no trail entry") {
  Simplex s;
  int x = s.add_var();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(5)), 0));
  size_t m = s.mark();
  CHECK_FALSE(s.assert_lower(x, DeltaRational(rat(3)), 1));
  CHECK(s.mark() == m);
}

TEST_CASE("chained definitions substitute basic variables") {
  Simplex s;
  int x = s.add_var();
  int y = s.add_var();
  int f = s.add_var();
  s.define(f, {{x, rat(1)}, {y, rat(1)}});
  // Force a pivot so f's definition is in play before g is defined.
  CHECK_FALSE(s.assert_lower(f, DeltaRational(rat(2)), 0));
  CHECK_FALSE(s.check());
  int g = s.add_var();
  s.define(g, {{x, rat(2)}, {y, rat(2)}});
  CHECK_FALSE(s.assert_upper(g, DeltaRational(rat(3)), 1));
  auto c = s.check();
  CHECK(c);  // g = 2f >= 4 contradicts g <= 3
}
