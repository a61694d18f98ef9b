#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "coind_while/resumption.hpp"

namespace cwhile {

/// Finite list of input values, consumed front to back.
class InputScript {
 public:
  InputScript() = default;
  explicit InputScript(std::vector<Val> values) : values_(std::move(values)) {}

  std::optional<Val> next_input() {
    if (cursor_ == values_.size()) return std::nullopt;
    return values_[cursor_++];
  }

  std::size_t consumed() const { return cursor_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<Val> values_;
  std::size_t cursor_ = 0;
};

struct EvDelay {
  bool operator==(const EvDelay&) const = default;
};
struct EvIn {
  Val value;
  bool operator==(const EvIn&) const = default;
};
struct EvOut {
  Val value;
  bool operator==(const EvOut&) const = default;
};
struct EvRet {
  State state;
  bool operator==(const EvRet&) const = default;
};
struct EvTruncated {
  bool operator==(const EvTruncated&) const = default;
};
struct EvInputExhausted {
  bool operator==(const EvInputExhausted&) const = default;
};

/// One observable step of a driven resumption. EvRet, EvTruncated and
/// EvInputExhausted only ever end a log.
using Event = std::variant<EvDelay, EvIn, EvOut, EvRet, EvTruncated, EvInputExhausted>;

inline bool is_terminal(const Event& e) {
  return std::holds_alternative<EvRet>(e) || std::holds_alternative<EvTruncated>(e) ||
         std::holds_alternative<EvInputExhausted>(e);
}

/// Drives `r`, feeding inputs from `source` and emitting every event to
/// `sink` as soon as it is observed. Each Delay, In and Out consumes one unit
/// of fuel; reaching Ret is free. Returns the terminal event.
///
/// `source` needs `std::optional<Val> next_input()`; an empty optional ends
/// the run with EvInputExhausted.
template <typename Source, typename Sink>
Event drive(Res r, Source& source, std::size_t fuel, Sink&& sink) {
  auto finish = [&](Event e) {
    sink(e);
    return e;
  };
  for (;;) {
    ResStep step = r.observe();
    if (auto* x = std::get_if<RRet>(&step)) return finish(EvRet{x->state});
    if (fuel == 0) return finish(EvTruncated{});
    if (auto* x = std::get_if<RIn>(&step)) {
      std::optional<Val> v = source.next_input();
      if (!v) return finish(EvInputExhausted{});
      sink(Event{EvIn{*v}});
      r = x->next(*v);
    } else if (auto* x = std::get_if<ROut>(&step)) {
      sink(Event{EvOut{x->value}});
      Res next = std::move(x->next);
      r = std::move(next);
    } else {
      sink(Event{EvDelay{}});
      Res next = std::move(std::get<RDelay>(step).next);
      r = std::move(next);
    }
    --fuel;
  }
}

/// Deterministic scripted run; the whole event log, terminal event last.
inline std::vector<Event> run(const Res& r, InputScript script, std::size_t fuel) {
  std::vector<Event> log;
  drive(r, script, fuel, [&](const Event& e) { log.push_back(e); });
  return log;
}

}  // namespace cwhile
