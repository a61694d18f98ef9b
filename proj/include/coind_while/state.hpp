#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cwhile {

/// Interned variable. The parser owns the mapping from surface names.
struct Var {
  std::uint32_t index = 0;

  auto operator<=>(const Var&) const = default;
};

/// 64-bit two's-complement value; arithmetic wraps on overflow.
using Val = std::int64_t;

inline Val wrapping_add(Val a, Val b) {
  return static_cast<Val>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

inline Val wrapping_sub(Val a, Val b) {
  return static_cast<Val>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}

inline Val wrapping_mul(Val a, Val b) {
  return static_cast<Val>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

/// Total map from variables to values with default 0.
///
/// Stored as a flat vector sorted by variable index. Bindings to the default
/// are never stored, so two States compare equal exactly when they denote
/// the same function.
class State {
 public:
  using Binding = std::pair<Var, Val>;

  static constexpr Val default_value = 0;

  State() = default;

  Val lookup(Var x) const {
    auto it = find(x);
    return it != bindings_.end() && it->first == x ? it->second : default_value;
  }

  State update(Var x, Val v) const {
    State out = *this;
    auto it = out.find_mut(x);
    bool present = it != out.bindings_.end() && it->first == x;
    if (v == default_value) {
      if (present) out.bindings_.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      out.bindings_.insert(it, {x, v});
    }
    return out;
  }

  std::span<const Binding> bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  bool operator==(const State&) const = default;

 private:
  std::vector<Binding>::const_iterator find(Var x) const {
    return std::lower_bound(bindings_.begin(), bindings_.end(), x,
                            [](const Binding& b, Var key) { return b.first < key; });
  }
  std::vector<Binding>::iterator find_mut(Var x) {
    return std::lower_bound(bindings_.begin(), bindings_.end(), x,
                            [](const Binding& b, Var key) { return b.first < key; });
  }

  std::vector<Binding> bindings_;
};

}  // namespace cwhile
