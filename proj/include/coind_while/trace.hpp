#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "coind_while/codata.hpp"
#include "coind_while/evaluate.hpp"
#include "coind_while/state.hpp"
#include "coind_while/syntax.hpp"

namespace cwhile {

struct TNil;
struct TDelay;
using TraceStep = std::variant<TNil, TDelay>;

/// Nonempty, possibly infinite sequence of states.
using Trace = Codata<TraceStep>;

struct TNil {
  State state;
};

struct TDelay {
  State state;
  Trace tail;
};

inline Trace nil(State s) { return Trace::now(TNil{std::move(s)}); }
inline Trace delay(State s, Trace tail) { return Trace::now(TDelay{std::move(s), std::move(tail)}); }

inline const State& head_state(const TraceStep& step) {
  return std::visit([](const auto& o) -> const State& { return o.state; }, step);
}

enum class PrefixStatus { Ended, Truncated };

struct TracePrefix {
  std::vector<State> states;
  PrefixStatus status = PrefixStatus::Truncated;

  bool operator==(const TracePrefix&) const = default;
};

/// Walks at most `fuel` delays of `t`, handing each state to `sink`.
///
/// The observation after the last permitted delay is still made, so a trace
/// that ends exactly within the budget reports Ended. A run cut short never
/// forwards the state of the delay it refused to consume.
template <typename Sink>
PrefixStatus walk(Trace t, std::size_t fuel, Sink&& sink) {
  for (std::size_t used = 0;; ++used) {
    TraceStep step = t.observe();
    if (auto* n = std::get_if<TNil>(&step)) {
      sink(n->state);
      return PrefixStatus::Ended;
    }
    if (used == fuel) return PrefixStatus::Truncated;
    auto& d = std::get<TDelay>(step);
    sink(d.state);
    Trace next = std::move(d.tail);
    t = std::move(next);
  }
}

/// Finite observation of a trace: all states seen within `fuel` delays.
inline TracePrefix take(const Trace& t, std::size_t fuel) {
  TracePrefix out;
  out.status = walk(t, fuel, [&](const State& s) { out.states.push_back(s); });
  return out;
}

/// Trace semantics of pure While: big-step `eval` and small-step `norm`.
namespace pure {

using Cont = std::function<Trace(const State&)>;
using Guard = std::function<bool(const State&)>;

/// Runs `k` from the last state of `t`; an infinite `t` passes through.
inline Trace seque(Cont k, Trace t) {
  return Trace::defer([k = std::move(k), t = std::move(t)]() -> TraceStep {
    TraceStep step = t.observe();
    if (auto* n = std::get_if<TNil>(&step)) return k(n->state).observe();
    auto& d = std::get<TDelay>(step);
    return TDelay{d.state, seque(k, d.tail)};
  });
}

inline Trace loopseq(Cont k, Guard p, Trace t);

/// Repeats `k` while `p` holds, after the guard has already been tested once.
/// Every corecursive call sits under a TDelay.
inline Trace loop(Cont k, Guard p, State s) {
  return Trace::defer([k = std::move(k), p = std::move(p), s = std::move(s)]() -> TraceStep {
    if (!p(s)) return TNil{s};
    TraceStep body = k(s).observe();
    if (auto* n = std::get_if<TNil>(&body)) return TDelay{n->state, loop(k, p, n->state)};
    auto& d = std::get<TDelay>(body);
    return TDelay{d.state, loopseq(k, p, d.tail)};
  });
}

inline Trace loopseq(Cont k, Guard p, Trace t) {
  return Trace::defer([k = std::move(k), p = std::move(p), t = std::move(t)]() -> TraceStep {
    TraceStep step = t.observe();
    if (auto* n = std::get_if<TNil>(&step)) return TDelay{n->state, loop(k, p, n->state)};
    auto& d = std::get<TDelay>(step);
    return TDelay{d.state, loopseq(k, p, d.tail)};
  });
}

namespace detail {

inline void require_pure(const Stmt& stmt, const char* who) {
  if (!is_pure(stmt)) {
    throw ContractError(std::string(who) + ": input/output statements have no trace semantics");
  }
}

inline Trace eval_unchecked(const Stmt& stmt, const State& s) {
  return std::visit(
      overloaded{
          [&](const Stmt::Skip&) { return nil(s); },
          [&](const Stmt::Seq& q) {
            Stmt second = q.second;
            return seque([second](const State& s1) { return eval_unchecked(second, s1); },
                         eval_unchecked(q.first, s));
          },
          [&](const Stmt::Assign& a) { return delay(s, nil(s.update(a.var, evaluate(a.expr, s)))); },
          [&](const Stmt::If& c) {
            return delay(s, eval_unchecked(evaluate(c.guard, s) ? c.then_branch : c.else_branch, s));
          },
          [&](const Stmt::While& w) {
            if (!evaluate(w.guard, s)) return delay(s, nil(s));
            Stmt body = w.body;
            BExp guard = w.guard;
            return delay(s, loop([body](const State& s1) { return eval_unchecked(body, s1); },
                                 [guard](const State& s1) { return evaluate(guard, s1); }, s));
          },
          [&](const Stmt::Input&) -> Trace { throw ContractError("eval: input statement in pure program"); },
          [&](const Stmt::Output&) -> Trace { throw ContractError("eval: output statement in pure program"); },
      },
      stmt.node());
}

}  // namespace detail

/// Big-step trace interpreter, by recursion on the statement.
inline Trace eval(const Stmt& stmt, const State& s) {
  detail::require_pure(stmt, "eval");
  return detail::eval_unchecked(stmt, s);
}

struct Config {
  Stmt stmt;
  State state;

  bool operator==(const Config&) const = default;
};

/// Empty exactly for terminal statements (Skip and sequences of Skips).
using StepResult = std::optional<Config>;

namespace detail {

inline StepResult red_unchecked(const Stmt& stmt, const State& s) {
  return std::visit(
      overloaded{
          [&](const Stmt::Skip&) -> StepResult { return std::nullopt; },
          [&](const Stmt::Assign& a) -> StepResult {
            return Config{Stmt::skip(), s.update(a.var, evaluate(a.expr, s))};
          },
          [&](const Stmt::Seq& q) -> StepResult {
            if (auto r = red_unchecked(q.first, s)) return Config{Stmt::seq(r->stmt, q.second), r->state};
            return red_unchecked(q.second, s);
          },
          [&](const Stmt::If& c) -> StepResult {
            return Config{evaluate(c.guard, s) ? c.then_branch : c.else_branch, s};
          },
          [&](const Stmt::While& w) -> StepResult {
            if (evaluate(w.guard, s)) return Config{Stmt::seq(w.body, stmt), s};
            return Config{Stmt::skip(), s};
          },
          [&](const Stmt::Input&) -> StepResult { throw ContractError("red: input statement in pure program"); },
          [&](const Stmt::Output&) -> StepResult { throw ContractError("red: output statement in pure program"); },
      },
      stmt.node());
}

inline Trace norm_unchecked(Stmt stmt, State s) {
  return Trace::defer([stmt = std::move(stmt), s = std::move(s)]() -> TraceStep {
    StepResult r = red_unchecked(stmt, s);
    if (!r) return TNil{s};
    return TDelay{s, norm_unchecked(std::move(r->stmt), std::move(r->state))};
  });
}

}  // namespace detail

/// One small step, or nothing when the statement is terminal.
inline StepResult red(const Stmt& stmt, const State& s) {
  detail::require_pure(stmt, "red");
  return detail::red_unchecked(stmt, s);
}

/// Small-step trace interpreter: iterates `red`, one TDelay per step.
inline Trace norm(const Stmt& stmt, const State& s) {
  detail::require_pure(stmt, "norm");
  return detail::norm_unchecked(stmt, s);
}

}  // namespace pure
}  // namespace cwhile
