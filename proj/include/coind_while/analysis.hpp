#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "coind_while/resumption.hpp"
#include "coind_while/run.hpp"
#include "coind_while/trace.hpp"

namespace cwhile {

// Bounded checkers for delay-bisimilarity and responsiveness of resumptions.
// Both notions quantify over unbounded delay runs and over every input
// value, so the checkers cap delays, unfolding depth and explored nodes, and
// probe input continuations on a finite sample. A Distinguished or
// LatencyExceeded verdict is backed by a concrete replayable path; an
// "up to bounds" verdict is only as strong as the budgets.

/// The resumption still delaying once the strip budget ran out. Its head is
/// an RDelay.
struct StillDelaying {
  Res rest;
};

using StripHead = std::variant<RRet, RIn, ROut, StillDelaying>;

struct StripResult {
  std::size_t delays_consumed = 0;
  StripHead head;
};

/// Peels at most `budget` leading delays off `r`.
inline StripResult strip_delays(Res r, std::size_t budget) {
  for (std::size_t n = 0;; ++n) {
    ResStep step = r.observe();
    if (auto* d = std::get_if<RDelay>(&step)) {
      if (n == budget) return {n, StillDelaying{std::move(r)}};
      Res next = std::move(d->next);
      r = std::move(next);
      continue;
    }
    if (auto* x = std::get_if<RRet>(&step)) return {n, std::move(*x)};
    if (auto* x = std::get_if<RIn>(&step)) return {n, std::move(*x)};
    return {n, std::move(std::get<ROut>(step))};
  }
}

struct BisimConfig {
  std::size_t delay_budget = 16;
  std::size_t depth_budget = 100;
  std::vector<Val> input_sample{0, 1, -1};
  /// Cap on explored pairs; input branching makes the search tree grow
  /// exponentially with depth.
  std::size_t node_budget = 100000;

  void validate() const {
    if (delay_budget == 0 || depth_budget == 0 || node_budget == 0) {
      throw std::invalid_argument("bisimulation budgets must be positive");
    }
    if (input_sample.empty()) throw std::invalid_argument("input sample must be nonempty");
  }
};

/// Summary of what one side showed at the point where two runs part ways.
struct Observation {
  enum class Kind { Ret, In, Out, Delay };
  Kind kind = Kind::Delay;
  Val value = 0;
  State state;

  static Observation ret(State s) { return {Kind::Ret, 0, std::move(s)}; }
  static Observation input() { return {Kind::In, 0, {}}; }
  static Observation output(Val v) { return {Kind::Out, v, {}}; }
  static Observation delayed(State s = {}) { return {Kind::Delay, 0, std::move(s)}; }

  bool operator==(const Observation&) const = default;
};

enum class Budget { Delay, Nodes };

/// No disagreement within the budgets. `cut_branches` counts the branches
/// abandoned at the depth or fuel limit; zero means the search was
/// exhaustive over the sampled inputs.
struct EquivalentUpToBounds {
  std::size_t cut_branches = 0;
};

/// `path` is the common behaviour leading to the disagreement: inputs fed,
/// outputs matched, and delays taken in lock-step.
struct Distinguished {
  std::vector<Event> path;
  Observation left;
  Observation right;
};

struct BudgetExhausted {
  Budget budget = Budget::Delay;
  std::vector<Event> path;
};

using Verdict = std::variant<EquivalentUpToBounds, Distinguished, BudgetExhausted>;

namespace detail {

inline Observation summarize(const StripHead& h) {
  return std::visit(overloaded{
                        [](const RRet& x) { return Observation::ret(x.state); },
                        [](const RIn&) { return Observation::input(); },
                        [](const ROut& x) { return Observation::output(x.value); },
                        [](const StillDelaying&) { return Observation::delayed(); },
                    },
                    h);
}

}  // namespace detail

/// Bounded search for a termination-sensitive delay-bisimulation relating
/// `r0` and `r1`.
///
/// At each pair both sides are stripped of up to `delay_budget` delays. Two
/// resolved heads must agree: equal final states, both inputs (then every
/// sampled value is probed), or equal outputs. When neither side resolves,
/// the stripped delays are matched pairwise and the search continues one
/// level deeper. One side resolving while the other keeps delaying cannot be
/// settled and is reported as BudgetExhausted unless some other branch is
/// Distinguished. The search is breadth-first, so the reported path is a
/// shortest one.
inline Verdict delay_bisim(const Res& r0, const Res& r1, const BisimConfig& cfg) {
  cfg.validate();
  struct Pending {
    Res left;
    Res right;
    std::size_t depth;
    std::vector<Event> path;
  };
  std::deque<Pending> queue;
  queue.push_back({r0, r1, cfg.depth_budget, {}});
  std::optional<BudgetExhausted> exhausted;
  std::size_t cut = 0;
  std::size_t explored = 0;

  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();
    if (item.depth == 0) {
      ++cut;
      continue;
    }
    if (explored++ == cfg.node_budget) {
      if (!exhausted) exhausted = BudgetExhausted{Budget::Nodes, std::move(item.path)};
      break;
    }
    StripResult a = strip_delays(item.left, cfg.delay_budget);
    StripResult b = strip_delays(item.right, cfg.delay_budget);
    auto* still_a = std::get_if<StillDelaying>(&a.head);
    auto* still_b = std::get_if<StillDelaying>(&b.head);

    if (still_a && still_b) {
      std::vector<Event> path = std::move(item.path);
      path.insert(path.end(), cfg.delay_budget, Event{EvDelay{}});
      queue.push_back({still_a->rest, still_b->rest, item.depth - 1, std::move(path)});
      continue;
    }
    if (still_a || still_b) {
      if (!exhausted) exhausted = BudgetExhausted{Budget::Delay, std::move(item.path)};
      continue;
    }

    auto distinguished = [&] {
      return Distinguished{std::move(item.path), detail::summarize(a.head), detail::summarize(b.head)};
    };
    if (a.head.index() != b.head.index()) return distinguished();

    if (auto* x = std::get_if<RRet>(&a.head)) {
      if (x->state != std::get<RRet>(b.head).state) return distinguished();
    } else if (auto* x = std::get_if<ROut>(&a.head)) {
      const auto& y = std::get<ROut>(b.head);
      if (x->value != y.value) return distinguished();
      std::vector<Event> path = std::move(item.path);
      path.push_back(EvOut{x->value});
      queue.push_back({x->next, y.next, item.depth - 1, std::move(path)});
    } else {
      const auto& f0 = std::get<RIn>(a.head).next;
      const auto& f1 = std::get<RIn>(b.head).next;
      for (Val v : cfg.input_sample) {
        std::vector<Event> path = item.path;
        path.push_back(EvIn{v});
        queue.push_back({f0(v), f1(v), item.depth - 1, std::move(path)});
      }
    }
  }
  if (exhausted) return *exhausted;
  return EquivalentUpToBounds{cut};
}

struct ResponsiveUpToBounds {
  std::size_t cut_branches = 0;
};

/// `path` is a replayable event prefix whose last latency_budget + 1 events
/// are delays.
struct LatencyExceeded {
  std::vector<Event> path;
};

struct ResponsivenessBudgetExhausted {
  std::vector<Event> path;
};

using ResponsiveVerdict = std::variant<ResponsiveUpToBounds, LatencyExceeded, ResponsivenessBudgetExhausted>;

/// Checks that along every sampled branch, within `depth_budget` visible
/// actions, the resumption terminates, reads, or writes after at most
/// `latency_budget` delays.
inline ResponsiveVerdict responsive(const Res& r, std::size_t latency_budget, std::size_t depth_budget,
                                    const std::vector<Val>& input_sample, std::size_t node_budget = 100000) {
  if (latency_budget == 0 || depth_budget == 0 || node_budget == 0) {
    throw std::invalid_argument("responsiveness budgets must be positive");
  }
  if (input_sample.empty()) throw std::invalid_argument("input sample must be nonempty");

  struct Pending {
    Res res;
    std::size_t depth;
    std::vector<Event> path;
  };
  std::deque<Pending> queue;
  queue.push_back({r, depth_budget, {}});
  std::size_t cut = 0;
  std::size_t explored = 0;

  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();
    if (item.depth == 0) {
      ++cut;
      continue;
    }
    if (explored++ == node_budget) return ResponsivenessBudgetExhausted{std::move(item.path)};

    StripResult s = strip_delays(item.res, latency_budget);
    item.path.insert(item.path.end(), s.delays_consumed, Event{EvDelay{}});
    if (std::holds_alternative<StillDelaying>(s.head)) {
      item.path.push_back(EvDelay{});
      return LatencyExceeded{std::move(item.path)};
    }
    if (std::holds_alternative<RRet>(s.head)) continue;
    if (auto* x = std::get_if<ROut>(&s.head)) {
      item.path.push_back(EvOut{x->value});
      queue.push_back({x->next, item.depth - 1, std::move(item.path)});
      continue;
    }
    const auto& f = std::get<RIn>(s.head).next;
    for (Val v : input_sample) {
      std::vector<Event> path = item.path;
      path.push_back(EvIn{v});
      queue.push_back({f(v), item.depth - 1, std::move(path)});
    }
  }
  return ResponsiveUpToBounds{cut};
}

/// Lock-step comparison of two traces over at most `fuel` delays. A
/// Distinguished result's path holds one EvDelay per agreeing position, so
/// its length is the index of the first disagreement.
inline Verdict trace_eq(const Trace& t0, const Trace& t1, std::size_t fuel) {
  auto summarize = [](const TraceStep& step) {
    if (auto* n = std::get_if<TNil>(&step)) return Observation::ret(n->state);
    return Observation::delayed(std::get<TDelay>(step).state);
  };
  Trace a = t0;
  Trace b = t1;
  std::vector<Event> path;
  for (std::size_t i = 0;; ++i) {
    TraceStep x = a.observe();
    TraceStep y = b.observe();
    Observation ox = summarize(x);
    Observation oy = summarize(y);
    if (ox != oy) return Distinguished{std::move(path), std::move(ox), std::move(oy)};
    if (ox.kind == Observation::Kind::Ret) return EquivalentUpToBounds{0};
    if (i == fuel) return EquivalentUpToBounds{1};
    path.push_back(EvDelay{});
    Trace na = std::get<TDelay>(x).tail;
    Trace nb = std::get<TDelay>(y).tail;
    a = std::move(na);
    b = std::move(nb);
  }
}

}  // namespace cwhile
