#pragma once

#include <variant>

#include "coind_while/state.hpp"
#include "coind_while/syntax.hpp"

namespace cwhile {

inline Val evaluate(const AExp& a, const State& s) {
  return std::visit(overloaded{
                        [](const AExp::Num& n) { return n.value; },
                        [&](const AExp::Ref& r) { return s.lookup(r.var); },
                        [&](const AExp::Arith& e) {
                          Val l = evaluate(e.lhs, s);
                          Val r = evaluate(e.rhs, s);
                          switch (e.op) {
                            case ArithOp::Add: return wrapping_add(l, r);
                            case ArithOp::Sub: return wrapping_sub(l, r);
                            case ArithOp::Mul: return wrapping_mul(l, r);
                          }
                          return Val{0};
                        },
                    },
                    a.node());
}

inline bool evaluate(const BExp& b, const State& s) {
  return std::visit(overloaded{
                        [](const BExp::Lit& l) { return l.value; },
                        [&](const BExp::Compare& c) {
                          Val l = evaluate(c.lhs, s);
                          Val r = evaluate(c.rhs, s);
                          return c.op == CompareOp::Eq ? l == r : l <= r;
                        },
                        [&](const BExp::Not& n) { return !evaluate(n.operand, s); },
                        [&](const BExp::Logic& l) {
                          // Both operands are total and pure, so short-circuiting is unobservable.
                          return l.op == LogicOp::And ? evaluate(l.lhs, s) && evaluate(l.rhs, s)
                                                      : evaluate(l.lhs, s) || evaluate(l.rhs, s);
                        },
                    },
                    b.node());
}

}  // namespace cwhile
