#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "coind_while/analysis.hpp"
#include "coind_while/parser.hpp"
#include "coind_while/run.hpp"

namespace cwhile {

inline std::string var_name(Var v, const NameTable& names) {
  if (auto n = names.name(v)) return std::string(*n);
  return "v" + std::to_string(v.index);
}

/// Name-sorted bindings of a state, defaults omitted.
inline std::vector<std::pair<std::string, Val>> named_bindings(const State& s, const NameTable& names) {
  std::vector<std::pair<std::string, Val>> out;
  for (const auto& [var, value] : s.bindings()) out.emplace_back(var_name(var, names), value);
  std::sort(out.begin(), out.end());
  return out;
}

/// `{x=1, y=2}`.
inline std::string format_state(const State& s, const NameTable& names) {
  std::string text = "{";
  bool first = true;
  for (const auto& [name, value] : named_bindings(s, names)) {
    if (!first) text += ", ";
    first = false;
    text += name + "=" + std::to_string(value);
  }
  return text + "}";
}

inline std::string format_event(const Event& e, const NameTable& names) {
  return std::visit(overloaded{
                        [](const EvDelay&) -> std::string { return "delay"; },
                        [](const EvIn& x) { return "in " + std::to_string(x.value); },
                        [](const EvOut& x) { return "out " + std::to_string(x.value); },
                        [&](const EvRet& x) { return "ret " + format_state(x.state, names); },
                        [](const EvTruncated&) -> std::string { return "truncated"; },
                        [](const EvInputExhausted&) -> std::string { return "input-exhausted"; },
                    },
                    e);
}

inline std::string format_observation(const Observation& o, const NameTable& names) {
  switch (o.kind) {
    case Observation::Kind::Ret: return "ret " + format_state(o.state, names);
    case Observation::Kind::In: return "in";
    case Observation::Kind::Out: return "out " + std::to_string(o.value);
    case Observation::Kind::Delay: return o.state.empty() ? "delay" : "delay " + format_state(o.state, names);
  }
  return "";
}

/// Events joined by ", ", with runs of delays collapsed to `delay*n`.
inline std::string format_path(const std::vector<Event>& path, const NameTable& names) {
  std::string text;
  for (std::size_t i = 0; i < path.size();) {
    std::size_t j = i;
    while (j < path.size() && std::holds_alternative<EvDelay>(path[j])) ++j;
    std::string item = j > i + 1 ? "delay*" + std::to_string(j - i) : format_event(path[i], names);
    if (j == i) ++j;
    if (!text.empty()) text += ", ";
    text += item;
    i = j;
  }
  return "[" + text + "]";
}

}  // namespace cwhile
