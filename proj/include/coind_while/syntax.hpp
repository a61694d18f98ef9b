#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "coind_while/state.hpp"

namespace cwhile {

/// Raised when a caller violates an interpreter precondition, e.g. feeding
/// I/O statements to the pure trace interpreters.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ArithOp { Add, Sub, Mul };
enum class CompareOp { Eq, Le };
enum class LogicOp { And, Or };

// Syntax trees are immutable and share subtrees through shared_ptr, so
// copying a node is O(1) and the small-step reducer can rebuild a spine
// without cloning the untouched parts.

class AExp {
 public:
  struct Num;
  struct Ref;
  struct Arith;
  using Node = std::variant<Num, Ref, Arith>;

  static AExp num(Val v);
  static AExp var(Var x);
  static AExp add(AExp lhs, AExp rhs);
  static AExp sub(AExp lhs, AExp rhs);
  static AExp mul(AExp lhs, AExp rhs);

  const Node& node() const;

  friend bool operator==(const AExp& a, const AExp& b);

 private:
  explicit AExp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct AExp::Num {
  Val value;
  bool operator==(const Num&) const = default;
};

struct AExp::Ref {
  Var var;
  bool operator==(const Ref&) const = default;
};

struct AExp::Arith {
  ArithOp op;
  AExp lhs;
  AExp rhs;
  bool operator==(const Arith&) const = default;
};

inline const AExp::Node& AExp::node() const { return *node_; }

inline AExp AExp::num(Val v) { return AExp(std::make_shared<const Node>(Num{v})); }
inline AExp AExp::var(Var x) { return AExp(std::make_shared<const Node>(Ref{x})); }
inline AExp AExp::add(AExp l, AExp r) {
  return AExp(std::make_shared<const Node>(Arith{ArithOp::Add, std::move(l), std::move(r)}));
}
inline AExp AExp::sub(AExp l, AExp r) {
  return AExp(std::make_shared<const Node>(Arith{ArithOp::Sub, std::move(l), std::move(r)}));
}
inline AExp AExp::mul(AExp l, AExp r) {
  return AExp(std::make_shared<const Node>(Arith{ArithOp::Mul, std::move(l), std::move(r)}));
}

inline bool operator==(const AExp& a, const AExp& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

class BExp {
 public:
  struct Lit;
  struct Compare;
  struct Not;
  struct Logic;
  using Node = std::variant<Lit, Compare, Not, Logic>;

  static BExp tt();
  static BExp ff();
  static BExp eq(AExp lhs, AExp rhs);
  static BExp le(AExp lhs, AExp rhs);
  static BExp negate(BExp b);
  static BExp conj(BExp lhs, BExp rhs);
  static BExp disj(BExp lhs, BExp rhs);

  const Node& node() const;

  friend bool operator==(const BExp& a, const BExp& b);

 private:
  explicit BExp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct BExp::Lit {
  bool value;
  bool operator==(const Lit&) const = default;
};

struct BExp::Compare {
  CompareOp op;
  AExp lhs;
  AExp rhs;
  bool operator==(const Compare&) const = default;
};

struct BExp::Not {
  BExp operand;
  bool operator==(const Not&) const = default;
};

struct BExp::Logic {
  LogicOp op;
  BExp lhs;
  BExp rhs;
  bool operator==(const Logic&) const = default;
};

inline const BExp::Node& BExp::node() const { return *node_; }

inline BExp BExp::tt() {
  static const auto node = std::make_shared<const Node>(Lit{true});
  return BExp(node);
}
inline BExp BExp::ff() {
  static const auto node = std::make_shared<const Node>(Lit{false});
  return BExp(node);
}
inline BExp BExp::eq(AExp l, AExp r) {
  return BExp(std::make_shared<const Node>(Compare{CompareOp::Eq, std::move(l), std::move(r)}));
}
inline BExp BExp::le(AExp l, AExp r) {
  return BExp(std::make_shared<const Node>(Compare{CompareOp::Le, std::move(l), std::move(r)}));
}
inline BExp BExp::negate(BExp b) { return BExp(std::make_shared<const Node>(Not{std::move(b)})); }
inline BExp BExp::conj(BExp l, BExp r) {
  return BExp(std::make_shared<const Node>(Logic{LogicOp::And, std::move(l), std::move(r)}));
}
inline BExp BExp::disj(BExp l, BExp r) {
  return BExp(std::make_shared<const Node>(Logic{LogicOp::Or, std::move(l), std::move(r)}));
}

inline bool operator==(const BExp& a, const BExp& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

/// Statements of While extended with interactive input and output.
class Stmt {
 public:
  struct Skip;
  struct Seq;
  struct Assign;
  struct If;
  struct While;
  struct Input;
  struct Output;
  using Node = std::variant<Skip, Seq, Assign, If, While, Input, Output>;

  static Stmt skip();
  static Stmt seq(Stmt first, Stmt second);
  static Stmt assign(Var x, AExp a);
  static Stmt cond(BExp guard, Stmt then_branch, Stmt else_branch);
  static Stmt loop(BExp guard, Stmt body);
  static Stmt input(Var x);
  static Stmt output(AExp a);

  const Node& node() const;

  template <typename T>
  bool is() const;

  friend bool operator==(const Stmt& a, const Stmt& b);

 private:
  explicit Stmt(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Stmt::Skip {
  bool operator==(const Skip&) const = default;
};

struct Stmt::Seq {
  Stmt first;
  Stmt second;
  bool operator==(const Seq&) const = default;
};

struct Stmt::Assign {
  Var var;
  AExp expr;
  bool operator==(const Assign&) const = default;
};

struct Stmt::If {
  BExp guard;
  Stmt then_branch;
  Stmt else_branch;
  bool operator==(const If&) const = default;
};

struct Stmt::While {
  BExp guard;
  Stmt body;
  bool operator==(const While&) const = default;
};

struct Stmt::Input {
  Var var;
  bool operator==(const Input&) const = default;
};

struct Stmt::Output {
  AExp expr;
  bool operator==(const Output&) const = default;
};

inline const Stmt::Node& Stmt::node() const { return *node_; }

template <typename T>
bool Stmt::is() const {
  return std::holds_alternative<T>(*node_);
}

inline Stmt Stmt::skip() {
  static const auto node = std::make_shared<const Node>(Skip{});
  return Stmt(node);
}
inline Stmt Stmt::seq(Stmt a, Stmt b) {
  return Stmt(std::make_shared<const Node>(Seq{std::move(a), std::move(b)}));
}
inline Stmt Stmt::assign(Var x, AExp a) {
  return Stmt(std::make_shared<const Node>(Assign{x, std::move(a)}));
}
inline Stmt Stmt::cond(BExp b, Stmt s0, Stmt s1) {
  return Stmt(std::make_shared<const Node>(If{std::move(b), std::move(s0), std::move(s1)}));
}
inline Stmt Stmt::loop(BExp b, Stmt body) {
  return Stmt(std::make_shared<const Node>(While{std::move(b), std::move(body)}));
}
inline Stmt Stmt::input(Var x) { return Stmt(std::make_shared<const Node>(Input{x})); }
inline Stmt Stmt::output(AExp a) { return Stmt(std::make_shared<const Node>(Output{std::move(a)})); }

inline bool operator==(const Stmt& a, const Stmt& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

template <typename... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

/// True when no Input or Output occurs anywhere in the tree.
inline bool is_pure(const Stmt& stmt) {
  return std::visit(overloaded{
                        [](const Stmt::Seq& s) { return is_pure(s.first) && is_pure(s.second); },
                        [](const Stmt::If& s) { return is_pure(s.then_branch) && is_pure(s.else_branch); },
                        [](const Stmt::While& s) { return is_pure(s.body); },
                        [](const Stmt::Input&) { return false; },
                        [](const Stmt::Output&) { return false; },
                        [](const auto&) { return true; },
                    },
                    stmt.node());
}

inline std::size_t size(const Stmt& stmt) {
  return std::visit(overloaded{
                        [](const Stmt::Seq& s) { return 1 + size(s.first) + size(s.second); },
                        [](const Stmt::If& s) { return 1 + size(s.then_branch) + size(s.else_branch); },
                        [](const Stmt::While& s) { return 1 + size(s.body); },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    stmt.node());
}

}  // namespace cwhile
