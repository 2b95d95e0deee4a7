#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hkint/expression.hpp"
#include "properties.hpp"

using namespace hkint;
using K = Expression::Kind;

TEST(Parse, Literal) {
  const Expression e = parse_expression("3");
  EXPECT_EQ(e.root().kind, K::number);
  EXPECT_EQ(e(0.0), 3.0);
  EXPECT_EQ(e(-17.5), 3.0);
}

TEST(Parse, OscillatingProduct) {
  const Expression e = parse_expression("x^2*sin(1/x^2)");
  const Expression x2 = Expression::binary(K::pow, Expression::var(), Expression::number(2));
  const Expression want = Expression::binary(
      K::mul, x2, Expression::call(Func::sin, Expression::binary(K::div, Expression::number(1), x2)));
  EXPECT_TRUE(e == want);
  // reference value: sin(4) = -0.7568024953079282
  EXPECT_NEAR(e(0.5), 0.25 * -0.7568024953079282, 1e-15);
  EXPECT_NEAR(e(0.5), -0.189200623, 1e-9);
}

TEST(Parse, PowerIsRightAssociative) {
  const Expression e = parse_expression("2^3^2");
  EXPECT_EQ(e(0.0), 512.0);
  EXPECT_TRUE(e == parse_expression("2^(3^2)"));
  EXPECT_FALSE(e == parse_expression("(2^3)^2"));
}

TEST(Parse, UnaryMinusBindsTighterThanPower) {
  EXPECT_TRUE(parse_expression("-x^2") == parse_expression("(-x)^2"));
  EXPECT_EQ(parse_expression("-x^2")(3.0), 9.0);
  EXPECT_EQ(parse_expression("0-x^2")(3.0), -9.0);
  EXPECT_EQ(parse_expression("--x")(2.0), 2.0);
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_expression("1+2*3")(0), 7.0);
  EXPECT_EQ(parse_expression("8-3-2")(0), 3.0);
  EXPECT_EQ(parse_expression("8/4/2")(0), 1.0);
  EXPECT_EQ(parse_expression("(1+2)*3")(0), 9.0);
  EXPECT_EQ(parse_expression("2*x^3")(2.0), 16.0);
}

TEST(Parse, WhitespaceInsensitive) {
  EXPECT_TRUE(parse_expression("  x ^ 2 *\tsin ( 1 / x ^ 2 ) ") == parse_expression("x^2*sin(1/x^2)"));
}

TEST(Parse, Numbers) {
  EXPECT_EQ(parse_expression("2.5")(0), 2.5);
  EXPECT_EQ(parse_expression(".5")(0), 0.5);
  EXPECT_EQ(parse_expression("1e-3")(0), 1e-3);
  EXPECT_EQ(parse_expression("1.5E+2")(0), 150.0);
  EXPECT_EQ(parse_expression("7.")(0), 7.0);
}

TEST(Parse, SyntaxErrorsCarryOffsetAndExpectedTokens) {
  try {
    parse_expression("x + * 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    const auto& ex = e.expected();
    EXPECT_NE(std::find(ex.begin(), ex.end(), "number"), ex.end());
    EXPECT_NE(std::find(ex.begin(), ex.end(), "("), ex.end());
  }
  try {
    parse_expression("(x + 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{")"});
  }
  try {
    parse_expression("x 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(parse_expression(""), ParseError);
  EXPECT_THROW(parse_expression("1e"), ParseError);
  EXPECT_THROW(parse_expression("1e999"), ParseError);
  EXPECT_THROW(parse_expression("sin x"), ParseError);
  EXPECT_THROW(parse_expression("x $ 1"), ParseError);
}

TEST(Parse, UnknownIdentifier) {
  try {
    parse_expression("2*log(x)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_NE(std::string(e.what()).find("log"), std::string::npos);
    const auto& ex = e.expected();
    EXPECT_NE(std::find(ex.begin(), ex.end(), "ln"), ex.end());
  }
  EXPECT_THROW(parse_expression("y"), ParseError);
}

TEST(Eval, Examples) {
  for (double x : {-3.0, 0.0, 1e10}) EXPECT_EQ(parse_expression("pi")(x), 3.141592653589793);
  EXPECT_EQ(parse_expression("abs(-x)")(2.0), 2.0);
  EXPECT_EQ(parse_expression("sqrt(x)")(4.0), 2.0);
  EXPECT_EQ(parse_expression("ln(exp(x))")(1.0), 1.0);
  EXPECT_EQ(parse_expression("cos(0)+tan(0)")(0.0), 1.0);
  EXPECT_EQ(parse_expression("(-2)^3")(0.0), -8.0);
}

TEST(Eval, FaultsNameThePoint) {
  try {
    parse_expression("1/sqrt(x)")(0.0);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.at(), 0.0);
    EXPECT_NE(std::string(e.what()).find("division by zero"), std::string::npos);
  }
  EXPECT_THROW(parse_expression("ln(x)")(0.0), EvaluationError);
  EXPECT_THROW(parse_expression("sqrt(x)")(-1.0), EvaluationError);
  EXPECT_THROW(parse_expression("x^0.5")(-1.0), EvaluationError);
  EXPECT_THROW(parse_expression("x^-1")(0.0), EvaluationError);
  EXPECT_THROW(parse_expression("exp(x)")(1000.0), EvaluationError);
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(parse_expression("(x^2)*sin((1/(x^2)))").to_string(), "x^2*sin(1/x^2)");
  EXPECT_EQ(parse_expression("2^(3^2)").to_string(), "2^3^2");
  EXPECT_EQ(parse_expression("(2^3)^2").to_string(), "(2^3)^2");
  EXPECT_EQ(parse_expression("x-(x-1)").to_string(), "x-(x-1)");
  EXPECT_EQ(parse_expression("-(x+1)").to_string(), "-(x+1)");
  EXPECT_EQ(parse_expression("(-x)^2").to_string(), "-x^2");
}

TEST(ParseProperty, RoundTrip) {
  const auto r = hkint::testing::parser_round_trip(21, 1000);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(ParseProperty, IdentityEvaluation) {
  const auto r = hkint::testing::identity_eval(22, 1000);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(MakeIntegrand, SingularPointsEvaluateToZero) {
  const Integrand f = make_integrand(parse_expression("1/sqrt(x)"), {0.0});
  EXPECT_EQ(f.eval(0.0), 0.0);
  EXPECT_EQ(f.eval(4.0), 0.5);
  EXPECT_EQ(f.singular_points, std::vector<double>{0.0});
}
