#pragma once

#include <functional>
#include <utility>
#include <variant>

#include "coind_while/codata.hpp"
#include "coind_while/evaluate.hpp"
#include "coind_while/state.hpp"
#include "coind_while/syntax.hpp"

namespace cwhile {

struct RRet;
struct RIn;
struct ROut;
struct RDelay;
using ResStep = std::variant<RRet, RIn, ROut, RDelay>;

/// Interaction tree of a program run: terminate, await input, emit output,
/// or take a silent step.
using Res = Codata<ResStep>;

/// Continuation of an input node. Must be pure: it may be applied several
/// times, to the same or to different values.
using InputCont = std::function<Res(Val)>;

struct RRet {
  State state;
};

struct RIn {
  InputCont next;
};

struct ROut {
  Val value;
  Res next;
};

struct RDelay {
  Res next;
};

inline Res ret(State s) { return Res::now(RRet{std::move(s)}); }
inline Res in(InputCont f) { return Res::now(RIn{std::move(f)}); }
inline Res out(Val v, Res r) { return Res::now(ROut{v, std::move(r)}); }
inline Res delay(Res r) { return Res::now(RDelay{std::move(r)}); }

// Sample resumptions. All of them are corecursive, so each unfolding is
// produced on observation.

/// Silent divergence.
inline Res bot() {
  return Res::defer([]() -> ResStep { return RDelay{bot()}; });
}

/// Outputs `v` forever, two delays before every output.
inline Res rep(Val v) {
  return Res::defer([v]() -> ResStep {
    return RDelay{delay(Res::defer([v]() -> ResStep { return ROut{v, rep(v)}; }))};
  });
}

/// Like rep, one delay before every output.
inline Res rep_fast(Val v) {
  return Res::defer([v]() -> ResStep {
    return RDelay{Res::defer([v]() -> ResStep { return ROut{v, rep_fast(v)}; })};
  });
}

/// Echoes each 0 it reads; terminates in `s` on the first nonzero input.
inline Res echo(State s) {
  return in([s](Val v) {
    return delay(Res::defer([s, v]() -> ResStep {
      if (v == 0) return ROut{v, echo(s)};
      return RRet{s};
    }));
  });
}

/// Echoes each 0 it reads; diverges silently on the first nonzero input.
inline Res echo_div() {
  return in([](Val v) {
    return delay(Res::defer([v]() -> ResStep {
      if (v == 0) return ROut{v, echo_div()};
      return RDelay{bot()};
    }));
  });
}

struct LRet;
struct LIn;
struct LOut;
struct LDelay;

/// Outcome of one small step of I/O While.
using Lconf = std::variant<LRet, LIn, LOut, LDelay>;

struct LRet {
  State state;
};

struct LIn {
  Stmt next;
  std::function<State(Val)> bind;
};

struct LOut {
  Val value;
  Stmt next;
  State state;
};

struct LDelay {
  Stmt next;
  State state;
};

/// Resumption semantics of While with interactive I/O.
namespace io {

using Cont = std::function<Res(const State&)>;
using Guard = std::function<bool(const State&)>;

inline Res seque(Cont k, Res r) {
  return Res::defer([k = std::move(k), r = std::move(r)]() -> ResStep {
    return std::visit(overloaded{
                          [&](const RRet& x) { return k(x.state).observe(); },
                          [&](const RIn& x) -> ResStep {
                            return RIn{[k, f = x.next](Val v) { return seque(k, f(v)); }};
                          },
                          [&](const ROut& x) -> ResStep { return ROut{x.value, seque(k, x.next)}; },
                          [&](const RDelay& x) -> ResStep { return RDelay{seque(k, x.next)}; },
                      },
                      r.observe());
  });
}

inline Res loopseq(Cont k, Guard p, Res r);

inline Res loop(Cont k, Guard p, State s) {
  return Res::defer([k = std::move(k), p = std::move(p), s = std::move(s)]() -> ResStep {
    if (!p(s)) return RRet{s};
    return std::visit(overloaded{
                          [&](const RRet& x) -> ResStep { return RDelay{loop(k, p, x.state)}; },
                          [&](const RIn& x) -> ResStep {
                            return RIn{[k, p, f = x.next](Val v) { return loopseq(k, p, f(v)); }};
                          },
                          [&](const ROut& x) -> ResStep { return ROut{x.value, loopseq(k, p, x.next)}; },
                          [&](const RDelay& x) -> ResStep { return RDelay{loopseq(k, p, x.next)}; },
                      },
                      k(s).observe());
  });
}

inline Res loopseq(Cont k, Guard p, Res r) {
  return Res::defer([k = std::move(k), p = std::move(p), r = std::move(r)]() -> ResStep {
    return std::visit(overloaded{
                          [&](const RRet& x) -> ResStep { return RDelay{loop(k, p, x.state)}; },
                          [&](const RIn& x) -> ResStep {
                            return RIn{[k, p, f = x.next](Val v) { return loopseq(k, p, f(v)); }};
                          },
                          [&](const ROut& x) -> ResStep { return ROut{x.value, loopseq(k, p, x.next)}; },
                          [&](const RDelay& x) -> ResStep { return RDelay{loopseq(k, p, x.next)}; },
                      },
                      r.observe());
  });
}

/// Big-step resumption interpreter.
inline Res eval(const Stmt& stmt, const State& s) {
  return std::visit(
      overloaded{
          [&](const Stmt::Skip&) { return ret(s); },
          [&](const Stmt::Seq& q) {
            Stmt second = q.second;
            return seque([second](const State& s1) { return eval(second, s1); }, eval(q.first, s));
          },
          [&](const Stmt::Assign& a) { return delay(ret(s.update(a.var, evaluate(a.expr, s)))); },
          [&](const Stmt::If& c) {
            return delay(eval(evaluate(c.guard, s) ? c.then_branch : c.else_branch, s));
          },
          [&](const Stmt::While& w) {
            if (!evaluate(w.guard, s)) return delay(ret(s));
            Stmt body = w.body;
            BExp guard = w.guard;
            return delay(loop([body](const State& s1) { return eval(body, s1); },
                              [guard](const State& s1) { return evaluate(guard, s1); }, s));
          },
          [&](const Stmt::Input& i) {
            Var x = i.var;
            return in([x, s](Val v) { return ret(s.update(x, v)); });
          },
          [&](const Stmt::Output& o) { return out(evaluate(o.expr, s), ret(s)); },
      },
      stmt.node());
}

/// One small step, labelled with the action it performs.
inline Lconf red(const Stmt& stmt, const State& s) {
  return std::visit(
      overloaded{
          [&](const Stmt::Skip&) -> Lconf { return LRet{s}; },
          [&](const Stmt::Assign& a) -> Lconf {
            return LDelay{Stmt::skip(), s.update(a.var, evaluate(a.expr, s))};
          },
          [&](const Stmt::Seq& q) -> Lconf {
            return std::visit(overloaded{
                                  [&](const LRet& x) -> Lconf { return red(q.second, x.state); },
                                  [&](const LIn& x) -> Lconf {
                                    return LIn{Stmt::seq(x.next, q.second), x.bind};
                                  },
                                  [&](const LOut& x) -> Lconf {
                                    return LOut{x.value, Stmt::seq(x.next, q.second), x.state};
                                  },
                                  [&](const LDelay& x) -> Lconf {
                                    return LDelay{Stmt::seq(x.next, q.second), x.state};
                                  },
                              },
                              red(q.first, s));
          },
          [&](const Stmt::If& c) -> Lconf {
            return LDelay{evaluate(c.guard, s) ? c.then_branch : c.else_branch, s};
          },
          [&](const Stmt::While& w) -> Lconf {
            if (evaluate(w.guard, s)) return LDelay{Stmt::seq(w.body, stmt), s};
            return LDelay{Stmt::skip(), s};
          },
          [&](const Stmt::Input& i) -> Lconf {
            Var x = i.var;
            return LIn{Stmt::skip(), [x, s](Val v) { return s.update(x, v); }};
          },
          [&](const Stmt::Output& o) -> Lconf { return LOut{evaluate(o.expr, s), Stmt::skip(), s}; },
      },
      stmt.node());
}

/// Small-step resumption interpreter: iterates `red`.
inline Res norm(Stmt stmt, State s) {
  return Res::defer([stmt = std::move(stmt), s = std::move(s)]() -> ResStep {
    return std::visit(overloaded{
                          [](const LRet& x) -> ResStep { return RRet{x.state}; },
                          [](const LIn& x) -> ResStep {
                            return RIn{[next = x.next, bind = x.bind](Val v) { return norm(next, bind(v)); }};
                          },
                          [](const LOut& x) -> ResStep { return ROut{x.value, norm(x.next, x.state)}; },
                          [](const LDelay& x) -> ResStep { return RDelay{norm(x.next, x.state)}; },
                      },
                      red(stmt, s));
  });
}

}  // namespace io
}  // namespace cwhile
