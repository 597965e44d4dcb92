#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gaugekit/error.hpp"
#include "gaugekit/expr.hpp"
#include "support/oracles.hpp"

namespace gaugekit {
namespace {

using Pt = std::array<double, 4>;

TEST(Parse, SumOfProductAndFunction) {
  const Expr e = parse("x1*x2 + sin(x0)");
  ASSERT_EQ(e.kind(), NodeKind::add);
  EXPECT_EQ(e.child(0).kind(), NodeKind::multiply);
  EXPECT_EQ(e.child(0).child(0).variable().index, 1);
  EXPECT_EQ(e.child(0).child(1).variable().index, 2);
  EXPECT_EQ(e.child(1).kind(), NodeKind::sin);
  EXPECT_EQ(e.child(1).child(0).variable().index, 0);
}

TEST(Parse, UnaryMinusBindsTighterThanProduct) {
  const Expr e = parse("-B*x2/2");
  ASSERT_EQ(e.kind(), NodeKind::divide);
  const Expr& prod = e.child(0);
  ASSERT_EQ(prod.kind(), NodeKind::multiply);
  ASSERT_EQ(prod.child(0).kind(), NodeKind::negate);
  EXPECT_EQ(prod.child(0).child(0).parameter_name(), "B");
  EXPECT_EQ(prod.child(1).variable().index, 2);
  EXPECT_EQ(e.child(1).constant_value(), 2.0);
}

TEST(Parse, PowerBindsTighterThanUnaryMinus) {
  EXPECT_EQ(evaluate(parse("-x1^2"), Pt{0, 3, 0, 0}), -9.0);
  EXPECT_EQ(parse("-x1^2").to_string(), "(-(x1^2))");
}

TEST(Parse, LeftAssociativeBinaries) {
  EXPECT_EQ(evaluate(parse("8 - 3 - 2"), Pt{}), 3.0);
  EXPECT_EQ(evaluate(parse("8 / 4 / 2"), Pt{}), 1.0);
}

TEST(Parse, RightAssociativePowerAndSignedExponent) {
  EXPECT_EQ(evaluate(parse("2^3^2"), Pt{}), 512.0);
  EXPECT_EQ(evaluate(parse("x0^-2"), Pt{2, 0, 0, 0}), 0.25);
}

TEST(Parse, NumbersAndWhitespace) {
  EXPECT_DOUBLE_EQ(evaluate(parse("  1.5e1 +\t.5 "), Pt{}), 15.5);
  EXPECT_EQ(evaluate(parse("((x3))"), Pt{0, 0, 0, 7}), 7.0);
}

TEST(Parse, SyntaxErrorOffset) {
  try {
    parse("x1 +");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::syntax);
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parse, ErrorKinds) {
  const auto kind_of = [](const char* s) {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << s << " parsed";
    return ParseError::Kind::syntax;
  };
  EXPECT_EQ(kind_of("foo(x1)"), ParseError::Kind::unknown_function);
  EXPECT_EQ(kind_of("x4"), ParseError::Kind::coordinate_index);
  EXPECT_EQ(kind_of("x10"), ParseError::Kind::coordinate_index);
  EXPECT_EQ(kind_of("(x1"), ParseError::Kind::syntax);
  EXPECT_EQ(kind_of("x1)"), ParseError::Kind::syntax);
  EXPECT_EQ(kind_of(""), ParseError::Kind::syntax);
  EXPECT_EQ(kind_of("x1^0.5"), ParseError::Kind::syntax);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(parse("x0^2"), Pt{3, 0, 0, 0}), 9.0);
  EXPECT_EQ(evaluate(parse("sin(x0)"), Pt{0, 5, -1, 2}), 0.0);
  EXPECT_EQ(evaluate(parse("B*x1"), Pt{0, 2, 0, 0}, ParamSet{{"B", 1.5}}), 3.0);
}

TEST(Evaluate, MissingParameterNamesIt) {
  try {
    evaluate(parse("B*x1"), Pt{0, 2, 0, 0});
    FAIL();
  } catch (const MissingParameterError& e) {
    EXPECT_STREQ(e.what(), "undefined parameter: B");
  }
}

TEST(Evaluate, DomainErrorsCarryLocation) {
  try {
    evaluate(parse("x1 + 1/(x0-x0)"), Pt{});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("(x0 - x0)"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("offset 6"), std::string::npos) << e.what();
  }
  EXPECT_THROW(evaluate(parse("sqrt(x0 - 1)"), Pt{}), DomainError);
}

TEST(Evaluate, ParameterValidation) {
  ParamSet p;
  EXPECT_THROW(p.set("1abc", 1.0), std::invalid_argument);
  EXPECT_THROW(p.set("x1", 1.0), std::invalid_argument);
  EXPECT_THROW(p.set("q", std::nan("")), std::invalid_argument);
  p.set("q", 2.0);
  EXPECT_EQ(p.at("q"), 2.0);
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(parse("x0^2"), 0).to_string(), "(2*x0)");
  EXPECT_TRUE(differentiate(parse("sin(x0)"), 1).is_zero());
  const Expr d = differentiate(parse("x0*cos(x0)"), 0);
  const auto f = [](const Point4& x) { return x[0] * std::cos(x[0]); };
  const Point4 x{0.7, 0, 0, 0};
  const double fd = testing::central_difference(f, x, 0, 1e-5);
  EXPECT_LE(std::fabs(evaluate(d, x) - fd) / std::fabs(fd), 1e-8);
}

TEST(Differentiate, MixedPartialsCommuteUpToRoundOff) {
  Rng rng(11);
  testing::ExprGenerator gen(rng);
  for (int i = 0; i < 50; ++i) {
    const Expr e = gen.generate(4);
    const Expr d01 = differentiate(differentiate(e, 0), 1);
    const Expr d10 = differentiate(differentiate(e, 1), 0);
    const Point4 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    EXPECT_LE(testing::relative_error(evaluate(d01, x), evaluate(d10, x)), 1e-12) << e.to_string(200);
  }
}

TEST(Differentiate, MatchesFiniteDifferencesOnRandomExpressions) {
  Rng rng(2024);
  testing::ExprGenerator gen(rng);
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen.generate(5);
    const int mu = static_cast<int>(rng.index(4));
    const Point4 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const CompiledExpr f(e, {});
    const double fd = testing::central_difference([&](const Point4& p) { return f(p); }, x, mu, 1e-5);
    EXPECT_LE(testing::relative_error(evaluate(differentiate(e, mu), x), fd), 1e-6) << e.to_string(200);
  }
}

TEST(Differentiate, MomentumAndIsospinVariables) {
  const Expr e = Expr::momentum(2) * Expr::isospin(1) + Expr::coordinate(0);
  const Expr dp = differentiate(e, Variable{VarKind::momentum, 2});
  const Expr dI = differentiate(e, Variable{VarKind::isospin, 1});
  const std::array<double, 4> pi{0, 0, 5, 0};
  const std::vector<double> iso{0, 3};
  const VariableValues v{Pt{}, pi, iso};
  EXPECT_EQ(evaluate(dp, v), 3.0);
  EXPECT_EQ(evaluate(dI, v), 5.0);
  EXPECT_TRUE(differentiate(e, 1).is_zero());
}

TEST(Expr, SharedDagStaysCheap) {
  Expr e = Expr::coordinate(0);
  for (int i = 0; i < 60; ++i) e = e * e + Expr::coordinate(1);
  EXPECT_LT(e.node_count(), 200u);
  EXPECT_TRUE(e.depends_on(Variable{VarKind::coordinate, 1}));
  EXPECT_FALSE(e.depends_on(Variable{VarKind::coordinate, 2}));
  EXPECT_LE(e.to_string(100).size(), 110u);
}

TEST(Expr, CollectParameters) {
  std::set<std::string> names;
  parse("a*x1 + sin(b) - a").collect_parameters(names);
  EXPECT_EQ(names, (std::set<std::string>{"a", "b"}));
}

TEST(Expr, ToStringRoundTripsThroughParser) {
  Rng rng(5);
  testing::ExprGenerator gen(rng);
  for (int i = 0; i < 100; ++i) {
    const Expr e = gen.generate(4);
    const Expr back = parse(e.to_string());
    const Point4 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    EXPECT_EQ(evaluate(back, x), evaluate(e, x)) << e.to_string();
  }
}

TEST(CompiledExpr, MultipleOutputsShareTape) {
  const Expr s = sin(Expr::coordinate(0) * Expr::coordinate(1));
  const std::vector<Expr> outs{s + Expr(1.0), s * s, Expr(4.0)};
  const CompiledExpr c(outs, {});
  std::vector<double> got(3);
  const Pt x{0.3, 0.9, 0, 0};
  c.evaluate_into(VariableValues{x, {}, {}}, got);
  const double sv = std::sin(0.3 * 0.9);
  EXPECT_EQ(got[0], sv + 1.0);
  EXPECT_EQ(got[1], sv * sv);
  EXPECT_EQ(got[2], 4.0);
  EXPECT_EQ(c.output_count(), 3u);
}

TEST(CompiledExpr, BindsParametersAtCompileTime) {
  EXPECT_THROW(CompiledExpr(parse("k*x0"), ParamSet{}), MissingParameterError);
  const CompiledExpr c(parse("k*x0"), ParamSet{{"k", 2.0}});
  EXPECT_EQ(c(Pt{3, 0, 0, 0}), 6.0);
}

}  // namespace
}  // namespace gaugekit
