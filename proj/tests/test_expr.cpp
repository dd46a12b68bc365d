#include <doctest.h>

#include <cmath>

#include <spinor_hardy/expr.hpp>

using namespace spinh;

static double ev(const char* src, double r = 0.0) { return RadialExpr::parse(src)(r); }

TEST_CASE("literals: decimal and scientific forms") {
  CHECK(ev("3") == 3.0);
  CHECK(ev("0.5") == 0.5);
  CHECK(ev("3.5e-2") == doctest::Approx(0.035).epsilon(1e-15));
  CHECK(ev("1E3") == 1000.0);
  CHECK(ev("2.25e+1") == 22.5);
}

TEST_CASE("precedence and associativity") {
  CHECK(ev("2+3*4") == 14.0);
  CHECK(ev("2*3+4") == 10.0);
  CHECK(ev("2*3^2") == 18.0);
  CHECK(ev("(2*3)^2") == 36.0);
  CHECK(ev("2^3^2") == 512.0);  // right-associative
  CHECK(ev("-2^2") == -4.0);    // unary minus binds looser than ^
  CHECK(ev("(-2)^2") == 4.0);
  CHECK(ev("2^-1") == 0.5);
  CHECK(ev("7-3-2") == 2.0);  // left-associative
  CHECK(ev("8/4/2") == 1.0);
  CHECK(ev("1 - -1") == 2.0);
}

TEST_CASE("variable and functions") {
  CHECK(ev("r", 2.5) == 2.5);
  CHECK(ev("r^2", 3.0) == 9.0);
  CHECK(ev("exp(0)") == 1.0);
  CHECK(ev("exp(-r)", 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(ev("sin(0)") == 0.0);
  CHECK(ev("cos(0)") == 1.0);
  CHECK(ev("sqrt(r)", 9.0) == 3.0);
  CHECK(ev("pow(r, 3)", 2.0) == 8.0);
  CHECK(ev("pow(2, r)", 10.0) == 1024.0);
  CHECK(ev("r^2 * exp(-r)", 1.5) ==
        doctest::Approx(2.25 * std::exp(-1.5)).epsilon(1e-15));
  CHECK(ev("r^(-1.5)", 4.0) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(ev("  2 +  3\t*4 ") == 14.0);
  CHECK(ev(" pow ( r , 2 ) ", 5.0) == 25.0);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(RadialExpr::parse("2 +"), ExprError);
  CHECK_THROWS_AS(RadialExpr::parse("(1 + 2"), ExprError);
  CHECK_THROWS_AS(RadialExpr::parse("foo(r)"), ExprError);
  CHECK_THROWS_AS(RadialExpr::parse("1 2"), ExprError);
  CHECK_THROWS_AS(RadialExpr::parse(""), ExprError);
  CHECK_THROWS_AS(RadialExpr::parse("pow(r)"), ExprError);

  try {
    RadialExpr::parse("2 * ?");
    FAIL("expected ExprError");
  } catch (const ExprError& e) {
    CHECK(e.position() == 4);  // byte offset of '?'
    CHECK(std::string(e.what()).find("5") != std::string::npos);  // 1-based column
  }
}

TEST_CASE("parsed expression remembers its source text") {
  const RadialExpr e = RadialExpr::parse("exp(-r)*r");
  CHECK(e.text() == "exp(-r)*r");
}
