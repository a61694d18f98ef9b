#include <gtest/gtest.h>

#include "coind_while/evaluate.hpp"
#include "support/generators.hpp"

namespace cwhile {
namespace {

const Var x{0};

TEST(EvaluateTest, Literal) { EXPECT_EQ(evaluate(AExp::num(7), State{}), 7); }

TEST(EvaluateTest, LiteralArithmetic) {
  EXPECT_EQ(evaluate(AExp::add(AExp::num(2), AExp::num(3)), State{}), 5);
  EXPECT_EQ(evaluate(AExp::sub(AExp::num(2), AExp::num(3)), State{}), -1);
  EXPECT_EQ(evaluate(AExp::mul(AExp::num(-4), AExp::num(3)), State{}), -12);
}

TEST(EvaluateTest, VariableReadsState) {
  EXPECT_EQ(evaluate(AExp::var(x), State{}.update(x, 9)), 9);
  EXPECT_EQ(evaluate(AExp::var(x), State{}), 0);
}

TEST(EvaluateTest, Overflow) {
  AExp big = AExp::num(std::numeric_limits<Val>::max());
  EXPECT_EQ(evaluate(AExp::add(big, AExp::num(1)), State{}), std::numeric_limits<Val>::min());
}

TEST(EvaluateTest, MultiplyByZeroAbsorbs) {
  testing::ProgramGen gen(11);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(evaluate(AExp::mul(AExp::var(x), AExp::num(0)), gen.state()), 0);
  }
}

TEST(EvaluateTest, BooleanBasics) {
  State s;
  EXPECT_TRUE(evaluate(BExp::tt(), s));
  EXPECT_FALSE(evaluate(BExp::ff(), s));
  EXPECT_TRUE(evaluate(BExp::le(AExp::num(1), AExp::num(1)), s));
  EXPECT_FALSE(evaluate(BExp::le(AExp::num(2), AExp::num(1)), s));
  EXPECT_TRUE(evaluate(BExp::negate(BExp::ff()), s));
  EXPECT_TRUE(evaluate(BExp::eq(AExp::var(x), AExp::num(0)), s));
  EXPECT_FALSE(evaluate(BExp::conj(BExp::tt(), BExp::ff()), s));
  EXPECT_TRUE(evaluate(BExp::disj(BExp::ff(), BExp::tt()), s));
}

TEST(EvaluateTest, PureAndRepeatable) {
  testing::ProgramGen gen(12);
  for (int i = 0; i < 200; ++i) {
    AExp a = gen.aexp(4);
    BExp b = gen.bexp(3);
    State s = gen.state();
    EXPECT_EQ(evaluate(a, s), evaluate(a, s));
    EXPECT_EQ(evaluate(b, s), evaluate(b, s));
  }
}

TEST(SyntaxTest, PurityPredicate) {
  EXPECT_TRUE(is_pure(Stmt::seq(Stmt::skip(), Stmt::assign(x, AExp::num(1)))));
  EXPECT_FALSE(is_pure(Stmt::loop(BExp::tt(), Stmt::seq(Stmt::skip(), Stmt::input(x)))));
  EXPECT_FALSE(is_pure(Stmt::cond(BExp::tt(), Stmt::skip(), Stmt::output(AExp::num(1)))));
}

TEST(SyntaxTest, StructuralEquality) {
  Stmt a = Stmt::seq(Stmt::assign(x, AExp::num(1)), Stmt::skip());
  Stmt b = Stmt::seq(Stmt::assign(x, AExp::num(1)), Stmt::skip());
  EXPECT_EQ(a, b);
  EXPECT_NE(a, Stmt::seq(Stmt::assign(x, AExp::num(2)), Stmt::skip()));
  EXPECT_NE(a, Stmt::seq(Stmt::skip(), Stmt::assign(x, AExp::num(1))));
}

}  // namespace
}  // namespace cwhile
