#pragma once

#include <functional>
#include <memory>
#include <utility>

namespace cwhile {

/// A possibly infinite value observed one constructor at a time.
///
/// Holds a pure producer for its head observation. Nothing is memoized, so
/// dropping the handle to an already-observed prefix releases it and a long
/// walk over an infinite structure runs in constant space. Re-observing
/// recomputes and yields an equal result.
template <typename Observation>
class Codata {
 public:
  using Producer = std::function<Observation()>;

  template <typename F>
  static Codata defer(F&& producer) {
    return Codata(std::make_shared<const Producer>(std::forward<F>(producer)));
  }

  static Codata now(Observation head) {
    return defer([head = std::move(head)]() { return head; });
  }

  Observation observe() const { return (*producer_)(); }

 private:
  explicit Codata(std::shared_ptr<const Producer> p) : producer_(std::move(p)) {}

  std::shared_ptr<const Producer> producer_;
};

}  // namespace cwhile
