#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "contactlab/errors.hpp"
#include "contactlab/expr.hpp"
#include "oracles.hpp"

namespace contactlab {
namespace {

using K = ExprNode::Kind;

std::vector<TokenKind> kinds(std::string_view src) {
  std::vector<TokenKind> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

const SymbolTable kXYZ{{"x", "y", "z"}, {"a"}};

TEST(Tokenize, Examples) {
  using T = TokenKind;
  EXPECT_EQ(kinds("exp(2*z)"),
            (std::vector<T>{T::identifier, T::lparen, T::number, T::star, T::identifier, T::rparen, T::end}));
  EXPECT_EQ(kinds("-x*exp(z)+z"),
            (std::vector<T>{T::minus, T::identifier, T::star, T::identifier, T::lparen, T::identifier,
                            T::rparen, T::plus, T::identifier, T::end}));
  const auto t = tokenize("1e-3 + pi");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].kind, T::number);
  EXPECT_DOUBLE_EQ(t[0].number, 0.001);
  EXPECT_EQ(t[1].kind, T::plus);
  EXPECT_EQ(t[2].text, "pi");
  EXPECT_EQ(t[2].offset, 7u);
}

TEST(Tokenize, RejectsIllegalCharacter) {
  try {
    tokenize("x + $y");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parse, TreeShapes) {
  const Expr e = compile("-x*exp(z)+z", kXYZ);
  const ExprNode& r = e.root();
  ASSERT_EQ(r.kind, K::add);
  ASSERT_EQ(r.lhs->kind, K::negate);
  ASSERT_EQ(r.lhs->lhs->kind, K::mul);
  EXPECT_EQ(r.lhs->lhs->lhs->kind, K::coordinate);
  EXPECT_EQ(r.lhs->lhs->rhs->kind, K::call);
  EXPECT_EQ(r.lhs->lhs->rhs->fn, UnaryFn::exp);
  EXPECT_EQ(r.rhs->kind, K::coordinate);
  EXPECT_EQ(r.rhs->index, 2);

  const Expr v = compile("(1-a)*x", kXYZ);
  ASSERT_EQ(v.root().kind, K::mul);
  ASSERT_EQ(v.root().lhs->kind, K::sub);
  EXPECT_EQ(v.root().lhs->lhs->kind, K::constant);
  EXPECT_EQ(v.root().lhs->rhs->kind, K::parameter);
  EXPECT_EQ(v.root().rhs->kind, K::coordinate);
}

TEST(Parse, PowerIsRightAssociativeAndBindsTighterThanMinus) {
  const Point p = {0, 0, 0};
  EXPECT_EQ(evaluate(compile("2^3^2", kXYZ), p, {}, 0).value(), 512.0);
  const Point q = {3, 0, 0};
  EXPECT_EQ(evaluate(compile("-x^2", kXYZ), q, {}, 0).value(), -9.0);
  EXPECT_EQ(evaluate(compile("2^-1", kXYZ), q, {}, 0).value(), 0.5);
  EXPECT_EQ(evaluate(compile("8/2/2", kXYZ), q, {}, 0).value(), 2.0);
  EXPECT_EQ(evaluate(compile("1-2-3", kXYZ), q, {}, 0).value(), -4.0);
}

TEST(Parse, ErrorsCarryOffsets) {
  auto offset_of = [](std::string_view src) -> long {
    try {
      compile(src, kXYZ);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset_of("x + w"), 4);
  EXPECT_EQ(offset_of("(x + y"), 6);
  EXPECT_EQ(offset_of("x + y)"), 5);
  EXPECT_EQ(offset_of("foo(x)"), 0);
  EXPECT_EQ(offset_of("x *"), 3);
}

TEST(Parse, List) {
  const auto list = parse_list(tokenize("(1 - a)*x, (1 - a)*y, a"), "(1 - a)*x, (1 - a)*y, a");
  EXPECT_EQ(list.size(), 3u);
  EXPECT_THROW(parse_list(tokenize("x y"), "x y"), ParseError);
}

TEST(Parse, ReservedConstants) {
  const Point p = {0, 0, 0};
  EXPECT_DOUBLE_EQ(evaluate(compile("pi", kXYZ), p, {}, 0).value(), std::acos(-1.0));
  EXPECT_DOUBLE_EQ(evaluate(compile("e", kXYZ), p, {}, 0).value(), std::exp(1.0));
  EXPECT_TRUE(is_reserved_name("e"));
  EXPECT_TRUE(is_reserved_name("pi"));
  EXPECT_TRUE(is_reserved_name("exp"));
  EXPECT_FALSE(is_reserved_name("x"));
}

TEST(Evaluate, Examples) {
  const Point p = {1, 1, 0};
  const Jet g = evaluate(compile("exp(2*z)", kXYZ), p, {}, 3);
  EXPECT_DOUBLE_EQ(g.value(), 1.0);
  EXPECT_DOUBLE_EQ(g.partial(2), 2.0);
  EXPECT_DOUBLE_EQ(g.partial(2, 2), 4.0);

  const Jet f = evaluate(compile("-x*exp(z)+z", kXYZ), p, {}, 3);
  EXPECT_DOUBLE_EQ(f.value(), -1.0);
  EXPECT_DOUBLE_EQ(f.partial(0), -1.0);
  EXPECT_DOUBLE_EQ(f.partial(2), 0.0);

  const Jet one = evaluate(compile("1", kXYZ), p, {}, 3);
  EXPECT_EQ(one.value(), 1.0);
  EXPECT_TRUE(one.is_constant());

  const ParamTable params{{"a", 0.25}};
  const Jet v = evaluate(compile("(1-a)*x", kXYZ), p, params, 2);
  EXPECT_DOUBLE_EQ(v.value(), 0.75);
  EXPECT_DOUBLE_EQ(v.partial(0), 0.75);
}

TEST(Evaluate, DomainErrorsCitePointAndExpression) {
  const Point p = {-1, 0, 0};
  try {
    evaluate(compile("ln(x)", kXYZ), p, {}, 2);
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("ln(x)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("(-1, 0, 0)"), std::string::npos) << msg;
  }
  EXPECT_THROW(evaluate(compile("x^y", kXYZ), p, {}, 2), EvalError);
  EXPECT_NO_THROW(evaluate(compile("x^3", kXYZ), p, {}, 2));
}

// Random ASTs over + - * / ^ and the unary functions, built as source text.
std::string random_source(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const char* leaves[] = {"x", "y", "z", "a", "2", "0.5", "3"};
  if (depth == 0) return leaves[std::uniform_int_distribution<int>(0, 6)(rng)];
  switch (pick(rng)) {
    case 0: return "(" + random_source(rng, depth - 1) + " + " + random_source(rng, depth - 1) + ")";
    case 1: return "(" + random_source(rng, depth - 1) + " - " + random_source(rng, depth - 1) + ")";
    case 2:
    case 3: return random_source(rng, depth - 1) + " * " + random_source(rng, depth - 1);
    case 4: return "-" + random_source(rng, depth - 1);
    case 5: return "sin(" + random_source(rng, depth - 1) + ")";
    case 6: return "exp(" + random_source(rng, depth - 1) + "/4)";
    case 7: return "(" + random_source(rng, depth - 1) + ")^2";
    case 8: return "cos(" + random_source(rng, depth - 1) + ")";
    default: return "tanh(" + random_source(rng, depth - 1) + ")";
  }
}

TEST(Expr, PrintParseRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string src = random_source(rng, 4);
    const Expr e = parse(src);
    const Expr again = parse(print(e));
    EXPECT_TRUE(structurally_equal(e, again)) << src << " -> " << print(e);
  }
}

TEST(Expr, ValueMatchesDirectEvaluation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ParamTable params{{"a", 0.7}};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string src = random_source(rng, 4);
    const Expr e = compile(src, kXYZ);
    const Point p = {u(rng), u(rng), u(rng)};
    const double direct = oracle::eval(e, p, params);
    const Jet j1 = evaluate(e, p, params, 2);
    const Jet j2 = evaluate(e, p, params, 2);
    EXPECT_NEAR(j1.value(), direct, 1e-14 * std::max(1.0, std::abs(direct))) << src;
    EXPECT_EQ(std::vector<double>(j1.coeffs().begin(), j1.coeffs().end()),
              std::vector<double>(j2.coeffs().begin(), j2.coeffs().end()));
    for (int i = 0; i < 3; ++i) {
      const double fd = oracle::d1(oracle::field_of(e, params), p, i);
      EXPECT_NEAR(j1.partial(i), fd, 1e-5 * std::max(1.0, std::abs(fd))) << src;
    }
  }
}

TEST(Expr, DependsOnCoordinates) {
  EXPECT_FALSE(compile("2*a + pi", kXYZ).depends_on_coordinates());
  EXPECT_TRUE(compile("a*z", kXYZ).depends_on_coordinates());
  EXPECT_TRUE(Expr().is_zero_constant());
  EXPECT_FALSE(Expr::constant(1.0).is_zero_constant());
}

}  // namespace
}  // namespace contactlab
