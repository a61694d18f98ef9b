#include <gtest/gtest.h>

#include <memory>
#include <vector>

#include "coind_while/analysis.hpp"
#include "coind_while/parser.hpp"
#include "coind_while/trace.hpp"
#include "support/generators.hpp"

namespace cwhile {
namespace {

using pure::eval;
using pure::norm;
using pure::red;

const Var x{0};
const State s0 = State{}.update(Var{1}, 4);

const TNil& as_nil(const TraceStep& step) {
  EXPECT_TRUE(std::holds_alternative<TNil>(step));
  return std::get<TNil>(step);
}

const TDelay& as_delay(const TraceStep& step) {
  EXPECT_TRUE(std::holds_alternative<TDelay>(step));
  return std::get<TDelay>(step);
}

std::vector<State> copies(const State& s, std::size_t n) { return std::vector<State>(n, s); }

const Stmt spin = Stmt::loop(BExp::tt(), Stmt::skip());

TEST(EvalTest, SkipIsSilent) { EXPECT_EQ(as_nil(eval(Stmt::skip(), s0).observe()).state, s0); }

TEST(EvalTest, AssignmentTakesOneStep) {
  TraceStep step = eval(Stmt::assign(x, AExp::num(17)), s0).observe();
  const TDelay& d = as_delay(step);
  EXPECT_EQ(d.state, s0);
  EXPECT_EQ(as_nil(d.tail.observe()).state, s0.update(x, 17));
}

TEST(EvalTest, FalseGuardStillSteps) {
  TraceStep step = eval(Stmt::loop(BExp::ff(), Stmt::skip()), s0).observe();
  const TDelay& d = as_delay(step);
  EXPECT_EQ(d.state, s0);
  EXPECT_EQ(as_nil(d.tail.observe()).state, s0);
}

TEST(EvalTest, TrueGuardOverSkipDelaysForever) {
  EXPECT_EQ(take(eval(spin, s0), 4), (TracePrefix{copies(s0, 4), PrefixStatus::Truncated}));
}

TEST(EvalTest, ConditionalStepsThenRunsBranch) {
  Stmt c = Stmt::cond(BExp::eq(AExp::var(x), AExp::num(0)), Stmt::assign(x, AExp::num(1)), Stmt::skip());
  EXPECT_EQ(take(eval(c, State{}), 10),
            (TracePrefix{{State{}, State{}, State{}.update(x, 1)}, PrefixStatus::Ended}));
  EXPECT_EQ(take(eval(c, State{}.update(x, 5)), 10),
            (TracePrefix{copies(State{}.update(x, 5), 2), PrefixStatus::Ended}));
}

// Expected states by unfolding red by hand on
//   x := 3 ; while 1 <= x do x := x - 1 od
// from the empty state: the assignment, then per iteration one guard test
// and one decrement, then the final failing guard test.
TEST(EvalTest, CountdownMatchesHandUnfolding) {
  ParsedProgram p = parse("x := 3 ; while 1 <= x do x := x - 1 od");
  Var v = *p.names.find("x");
  auto at = [&](Val n) { return State{}.update(v, n); };
  TracePrefix expected{{State{}, at(3), at(3), at(2), at(2), at(1), at(1), at(0), at(0)}, PrefixStatus::Ended};
  EXPECT_EQ(take(norm(p.stmt, State{}), 64), expected);
  EXPECT_EQ(take(eval(p.stmt, State{}), 64), expected);
}

TEST(EvalTest, RejectsInputOutput) {
  EXPECT_THROW(eval(Stmt::input(x), s0), ContractError);
  EXPECT_THROW(eval(Stmt::seq(Stmt::skip(), Stmt::output(AExp::num(1))), s0), ContractError);
  EXPECT_THROW(red(Stmt::output(AExp::num(1)), s0), ContractError);
  EXPECT_THROW(norm(Stmt::loop(BExp::ff(), Stmt::input(x)), s0), ContractError);
}

TEST(SequeTest, TerminatedTraceHandsOver) {
  pure::Cont k = [](const State& s) { return delay(s, nil(s.update(x, 9))); };
  EXPECT_EQ(take(pure::seque(k, nil(s0)), 10), take(k(s0), 10));
}

TEST(SequeTest, DelayIsCopied) {
  pure::Cont k = [](const State& s) { return nil(s.update(x, 9)); };
  TraceStep step = pure::seque(k, delay(s0, nil(s0))).observe();
  EXPECT_EQ(as_delay(step).state, s0);
  EXPECT_EQ(take(as_delay(step).tail, 5), (TracePrefix{{s0.update(x, 9)}, PrefixStatus::Ended}));
}

TEST(SequeTest, InfiniteTraceNeverReachesContinuation) {
  auto called = std::make_shared<bool>(false);
  pure::Cont k = [called](const State& s) {
    *called = true;
    return nil(s);
  };
  EXPECT_EQ(take(pure::seque(k, eval(spin, s0)), 500), (TracePrefix{copies(s0, 500), PrefixStatus::Truncated}));
  EXPECT_FALSE(*called);
}

TEST(SequeTest, SilentContinuationIsRightIdentity) {
  testing::ProgramGen gen(31);
  pure::Cont k = [](const State& s) { return nil(s); };
  for (int i = 0; i < 100; ++i) {
    Stmt p = gen.program();
    State s = gen.state();
    Trace t = eval(p, s);
    for (std::size_t fuel : {0u, 1u, 7u, 64u}) ASSERT_EQ(take(pure::seque(k, t), fuel), take(t, fuel));
  }
}

TEST(LoopTest, FalseGuardEndsImmediately) {
  pure::Cont k = [](const State& s) { return delay(s, nil(s)); };
  EXPECT_EQ(as_nil(pure::loop(k, [](const State&) { return false; }, s0).observe()).state, s0);
}

TEST(LoopTest, SilentBodyUnderTrueGuardDelaysForever) {
  Trace t = pure::loop([](const State& s) { return nil(s); }, [](const State&) { return true; }, s0);
  EXPECT_EQ(take(t, 1000), (TracePrefix{copies(s0, 1000), PrefixStatus::Truncated}));
}

TEST(LoopTest, SteppingBodyContinuesWithLoopseq) {
  // Body increments x under guard x <= 1. Each pass shows the body's delay,
  // then loopseq's delay re-entering loop; at x = 2 the guard fails.
  pure::Cont k = [](const State& s) { return delay(s, nil(s.update(x, s.lookup(x) + 1))); };
  pure::Guard p = [](const State& s) { return s.lookup(x) <= 1; };
  auto at = [](Val n) { return State{}.update(x, n); };
  EXPECT_EQ(take(pure::loop(k, p, at(0)), 20), (TracePrefix{{at(0), at(1), at(1), at(2), at(2)}, PrefixStatus::Ended}));
}

TEST(LoopseqTest, EndOfBodyReentersLoopAfterDelay) {
  pure::Cont k = [](const State& s) { return nil(s); };
  pure::Guard p = [](const State&) { return false; };
  TraceStep step = pure::loopseq(k, p, nil(s0)).observe();
  EXPECT_EQ(as_delay(step).state, s0);
  EXPECT_EQ(take(as_delay(step).tail, 3), take(pure::loop(k, p, s0), 3));
}

TEST(LoopseqTest, DelayIsCopied) {
  pure::Cont k = [](const State& s) { return nil(s); };
  pure::Guard p = [](const State&) { return false; };
  TraceStep step = pure::loopseq(k, p, delay(s0.update(x, 2), nil(s0))).observe();
  EXPECT_EQ(as_delay(step).state, s0.update(x, 2));
  EXPECT_EQ(take(as_delay(step).tail, 5), (TracePrefix{{s0, s0}, PrefixStatus::Ended}));
}

TEST(LoopseqTest, InfiniteBodyNeverReentersLoop) {
  auto guard_tests = std::make_shared<int>(0);
  pure::Guard p = [guard_tests](const State&) {
    ++*guard_tests;
    return true;
  };
  pure::Cont k = [](const State& s) { return nil(s); };
  EXPECT_EQ(take(pure::loopseq(k, p, eval(spin, s0)), 300).status, PrefixStatus::Truncated);
  EXPECT_EQ(*guard_tests, 0);
}

TEST(RedTest, Equations) {
  EXPECT_FALSE(red(Stmt::skip(), s0));
  AExp a = AExp::add(AExp::var(Var{1}), AExp::num(1));
  EXPECT_EQ(red(Stmt::assign(x, a), s0), (pure::Config{Stmt::skip(), s0.update(x, 5)}));
  EXPECT_EQ(red(spin, s0), (pure::Config{Stmt::seq(Stmt::skip(), spin), s0}));
  EXPECT_EQ(red(Stmt::loop(BExp::ff(), Stmt::skip()), s0), (pure::Config{Stmt::skip(), s0}));
  Stmt c = Stmt::cond(BExp::ff(), Stmt::skip(), spin);
  EXPECT_EQ(red(c, s0), (pure::Config{spin, s0}));
}

TEST(RedTest, TerminalPrefixFallsThrough) {
  Stmt tail = Stmt::assign(x, AExp::num(2));
  EXPECT_EQ(red(Stmt::seq(Stmt::seq(Stmt::skip(), Stmt::skip()), tail), s0),
            (pure::Config{Stmt::skip(), s0.update(x, 2)}));
  EXPECT_FALSE(red(Stmt::seq(Stmt::skip(), Stmt::seq(Stmt::skip(), Stmt::skip())), s0));
}

TEST(RedTest, SequenceReducesFirstComponent) {
  Stmt first = Stmt::assign(x, AExp::num(1));
  Stmt second = Stmt::assign(x, AExp::num(2));
  EXPECT_EQ(red(Stmt::seq(first, second), s0), (pure::Config{Stmt::seq(Stmt::skip(), second), s0.update(x, 1)}));
}

TEST(NormTest, SkipIsSilent) { EXPECT_EQ(as_nil(norm(Stmt::skip(), s0).observe()).state, s0); }

TEST(NormTest, SpinUnfoldsByHand) {
  // red(spin) = skip ; spin, and red(skip ; spin) = red(spin): every step
  // leaves the configuration at skip ; spin with the state unchanged.
  Stmt cfg = Stmt::seq(Stmt::skip(), spin);
  EXPECT_EQ(red(spin, s0), (pure::Config{cfg, s0}));
  EXPECT_EQ(red(cfg, s0), (pure::Config{cfg, s0}));
  for (std::size_t n : {1u, 3u, 100u}) {
    EXPECT_EQ(take(norm(spin, s0), n), (TracePrefix{copies(s0, n), PrefixStatus::Truncated}));
  }
}

TEST(TakeTest, FuelCountsDelays) {
  EXPECT_EQ(take(nil(s0), 0), (TracePrefix{{s0}, PrefixStatus::Ended}));
  EXPECT_EQ(take(eval(spin, s0), 2), (TracePrefix{copies(s0, 2), PrefixStatus::Truncated}));
  EXPECT_EQ(take(eval(spin, s0), 0), (TracePrefix{{}, PrefixStatus::Truncated}));
  EXPECT_EQ(take(delay(s0, nil(s0)), 1), (TracePrefix{copies(s0, 2), PrefixStatus::Ended}));
  EXPECT_EQ(take(delay(s0, nil(s0)), 0), (TracePrefix{{}, PrefixStatus::Truncated}));
}

TEST(TraceProperties, BigAndSmallStepAgree) {
  testing::ProgramGen gen(41);
  for (int i = 0; i < 150; ++i) {
    Stmt p = gen.program();
    for (int j = 0; j < 3; ++j) {
      State s = gen.state();
      ASSERT_EQ(take(eval(p, s), 256), take(norm(p, s), 256));
    }
  }
}

TEST(TraceProperties, SkipIsIdentityOfSequencing) {
  testing::ProgramGen gen(42);
  for (int i = 0; i < 150; ++i) {
    Stmt p = gen.program();
    State s = gen.state();
    TracePrefix base = take(eval(p, s), 256);
    ASSERT_EQ(take(eval(Stmt::seq(Stmt::skip(), p), s), 256), base);
    ASSERT_EQ(take(eval(Stmt::seq(p, Stmt::skip()), s), 256), base);
  }
}

TEST(TraceProperties, SequencingIsAssociative) {
  testing::ProgramGen gen(43);
  for (int i = 0; i < 100; ++i) {
    Stmt a = gen.stmt(3);
    Stmt b = gen.stmt(3);
    Stmt c = gen.stmt(3);
    State s = gen.state();
    ASSERT_EQ(take(eval(Stmt::seq(Stmt::seq(a, b), c), s), 256), take(eval(Stmt::seq(a, Stmt::seq(b, c)), s), 256));
  }
}

TEST(TraceProperties, WhileAlwaysStepsFirst) {
  testing::ProgramGen gen(44);
  for (int i = 0; i < 200; ++i) {
    Stmt w = gen.while_stmt();
    State s = gen.state();
    ASSERT_TRUE(std::holds_alternative<TDelay>(eval(w, s).observe()));
    ASSERT_TRUE(std::holds_alternative<TDelay>(norm(w, s).observe()));
  }
}

TEST(TraceProperties, ObservationIsRepeatable) {
  testing::ProgramGen gen(45);
  for (int i = 0; i < 100; ++i) {
    Stmt p = gen.program();
    State s = gen.state();
    Trace t = eval(p, s);
    for (std::size_t fuel : {0u, 3u, 50u, 200u}) ASSERT_EQ(take(t, fuel), take(t, fuel));
  }
}

}  // namespace
}  // namespace cwhile
