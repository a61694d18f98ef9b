#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coind_while/syntax.hpp"

namespace cwhile {

// Concrete syntax:
//
//   stmt   ::= simple [ ";" stmt ]
//   simple ::= "skip" | id ":=" aexp | "input" id | "output" aexp
//            | "if" bexp "then" stmt "else" stmt "fi"
//            | "while" bexp "do" stmt "od"
//            | "repeat" stmt "until" bexp
//            | "(" stmt ")"
//   aexp   ::= term { ("+" | "-") term }
//   term   ::= factor { "*" factor }
//   factor ::= number | "-" number | id | "(" aexp ")"
//   bexp   ::= conj { "or" conj }
//   conj   ::= neg { "and" neg }
//   neg    ::= "not" neg | "tt" | "ff" | aexp ("=" | "<=") aexp | "(" bexp ")"
//
// `#` starts a comment running to the end of the line. `repeat s until b`
// is sugar for `s ; while not b do s od`.

inline constexpr std::array<std::string_view, 17> keywords{
    "skip", "if", "then", "else", "fi", "while", "do", "od", "input",
    "output", "repeat", "until", "not", "and", "or", "tt", "ff"};

inline bool is_keyword(std::string_view word) {
  return std::find(keywords.begin(), keywords.end(), word) != keywords.end();
}

inline bool is_identifier(std::string_view word) {
  if (word.empty() || is_keyword(word)) return false;
  auto head = static_cast<unsigned char>(word.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(word.begin() + 1, word.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

/// Bijection between surface identifiers and dense variable indices.
class NameTable {
 public:
  Var intern(std::string_view name) {
    if (auto v = find(name)) return *v;
    Var v{static_cast<std::uint32_t>(names_.size())};
    names_.emplace_back(name);
    index_.emplace(names_.back(), v.index);
    return v;
  }

  std::optional<Var> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return Var{it->second};
  }

  std::optional<std::string_view> name(Var v) const {
    if (v.index >= names_.size()) return std::nullopt;
    return names_[v.index];
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, std::string found,
             std::size_t offset = 0)
      : std::runtime_error(describe(line, column, expected, found)),
        line_(line),
        column_(column),
        offset_(offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  static std::string describe(std::size_t line, std::size_t column, const std::vector<std::string>& expected,
                              const std::string& found) {
    std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    return msg + ", found " + found;
  }

  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

struct ParsedProgram {
  Stmt stmt;
  NameTable names;
};

namespace detail {

struct Token {
  enum class Kind { Ident, Keyword, Number, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::size_t offset;

  std::string describe() const {
    switch (kind) {
      case Kind::End: return "end of input";
      case Kind::Number: return "number " + text;
      case Kind::Ident: return "identifier '" + text + "'";
      default: return "'" + text + "'";
    }
  }
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    auto c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok{Token::Kind::Symbol, "", line, col, i};
    std::size_t len = 0;
    if (std::isalpha(c) || c == '_') {
      while (i + len < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_')) {
        ++len;
      }
      tok.text = std::string(src.substr(i, len));
      tok.kind = is_keyword(tok.text) ? Token::Kind::Keyword : Token::Kind::Ident;
    } else if (std::isdigit(c)) {
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      tok.text = std::string(src.substr(i, len));
      tok.kind = Token::Kind::Number;
    } else if (src.substr(i, 2) == ":=" || src.substr(i, 2) == "<=") {
      len = 2;
      tok.text = std::string(src.substr(i, 2));
    } else if (std::string_view("();+-*=").find(static_cast<char>(c)) != std::string_view::npos) {
      len = 1;
      tok.text = std::string(1, static_cast<char>(c));
    } else {
      std::string shown = c < 0x20 || c >= 0x7f ? "byte " + std::to_string(c) : "'" + std::string(1, char(c)) + "'";
      throw ParseError(line, col, {"token"}, "unexpected character " + shown, i);
    }
    advance(len);
    out.push_back(std::move(tok));
  }
  out.push_back({Token::Kind::End, "", line, col, src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, NameTable names) : tokens_(std::move(tokens)), names_(std::move(names)) {}

  ParsedProgram program() {
    Stmt s = stmt();
    if (peek().kind != Token::Kind::End) fail({"';'", "end of input"});
    return {std::move(s), std::move(names_)};
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool at(std::string_view text) const {
    const Token& t = peek();
    return (t.kind == Token::Kind::Symbol || t.kind == Token::Kind::Keyword) && t.text == text;
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, std::move(expected), t.describe(), t.offset);
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail({"'" + std::string(text) + "'"});
  }

  Var identifier() {
    if (peek().kind != Token::Kind::Ident) fail({"identifier"});
    return names_.intern(tokens_[pos_++].text);
  }

  Stmt stmt() {
    Stmt first = simple();
    if (accept(";")) return Stmt::seq(std::move(first), stmt());
    return first;
  }

  Stmt simple() {
    if (accept("skip")) return Stmt::skip();
    if (accept("input")) return Stmt::input(identifier());
    if (accept("output")) return Stmt::output(aexp());
    if (accept("if")) {
      BExp b = bexp();
      expect("then");
      Stmt s0 = stmt();
      expect("else");
      Stmt s1 = stmt();
      expect("fi");
      return Stmt::cond(std::move(b), std::move(s0), std::move(s1));
    }
    if (accept("while")) {
      BExp b = bexp();
      expect("do");
      Stmt body = stmt();
      expect("od");
      return Stmt::loop(std::move(b), std::move(body));
    }
    if (accept("repeat")) {
      Stmt body = stmt();
      expect("until");
      BExp b = bexp();
      return Stmt::seq(body, Stmt::loop(BExp::negate(std::move(b)), body));
    }
    if (accept("(")) {
      Stmt s = stmt();
      expect(")");
      return s;
    }
    if (peek().kind == Token::Kind::Ident) {
      Var x = identifier();
      expect(":=");
      return Stmt::assign(x, aexp());
    }
    fail({"statement"});
  }

  AExp aexp() {
    AExp acc = term();
    for (;;) {
      if (accept("+")) {
        acc = AExp::add(std::move(acc), term());
      } else if (accept("-")) {
        acc = AExp::sub(std::move(acc), term());
      } else {
        return acc;
      }
    }
  }

  AExp term() {
    AExp acc = factor();
    while (accept("*")) acc = AExp::mul(std::move(acc), factor());
    return acc;
  }

  AExp factor() {
    if (accept("(")) {
      AExp a = aexp();
      expect(")");
      return a;
    }
    if (peek().kind == Token::Kind::Ident) return AExp::var(identifier());
    bool negative = accept("-");
    if (peek().kind != Token::Kind::Number) fail({negative ? "number" : "arithmetic expression"});
    return AExp::num(number(negative));
  }

  Val number(bool negative) {
    const Token& t = peek();
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t magnitude = 0;
    bool overflow = false;
    for (char c : t.text) {
      auto digit = static_cast<std::uint64_t>(c - '0');
      if (magnitude > (limit - digit) / 10) {
        overflow = true;
        break;
      }
      magnitude = magnitude * 10 + digit;
    }
    if (overflow || magnitude > limit || (!negative && magnitude == limit)) {
      fail({"number within 64-bit signed range"});
    }
    ++pos_;
    if (negative) return static_cast<Val>(std::uint64_t{0} - magnitude);
    return static_cast<Val>(magnitude);
  }

  BExp bexp() {
    BExp acc = conj();
    while (accept("or")) acc = BExp::disj(std::move(acc), conj());
    return acc;
  }

  BExp conj() {
    BExp acc = neg();
    while (accept("and")) acc = BExp::conj(std::move(acc), neg());
    return acc;
  }

  BExp neg() {
    if (accept("not")) return BExp::negate(neg());
    if (accept("tt")) return BExp::tt();
    if (accept("ff")) return BExp::ff();
    if (!at("(")) return comparison();

    // "(" opens either a nested boolean or the left operand of a
    // comparison; try the boolean reading first and fall back.
    std::size_t start = pos_;
    std::size_t name_count = names_.size();
    try {
      ++pos_;
      BExp b = bexp();
      expect(")");
      return b;
    } catch (const ParseError& first) {
      pos_ = start;
      rollback_names(name_count);
      try {
        return comparison();
      } catch (const ParseError& second) {
        if (first.offset() > second.offset()) throw;
        if (second.offset() > first.offset()) throw second;
        std::vector<std::string> merged = first.expected();
        for (const auto& e : second.expected()) {
          if (std::find(merged.begin(), merged.end(), e) == merged.end()) merged.push_back(e);
        }
        throw ParseError(second.line(), second.column(), std::move(merged), second.found(), second.offset());
      }
    }
  }

  BExp comparison() {
    AExp lhs = aexp();
    if (accept("=")) return BExp::eq(std::move(lhs), aexp());
    if (accept("<=")) return BExp::le(std::move(lhs), aexp());
    fail({"'='", "'<='"});
  }

  // A failed alternative may have interned names that the successful one
  // will intern again; keep indices dense in order of first appearance.
  void rollback_names(std::size_t count) {
    if (names_.size() == count) return;
    NameTable kept;
    for (std::size_t i = 0; i < count; ++i) kept.intern(names_.names()[i]);
    names_ = std::move(kept);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  NameTable names_;
};

}  // namespace detail

/// Parses a program, extending `names` with every new identifier in order of
/// first appearance.
inline ParsedProgram parse(std::string_view src, NameTable names = {}) {
  detail::Parser p(detail::lex(src), std::move(names));
  return p.program();
}

namespace detail {

class Printer {
 public:
  explicit Printer(const NameTable& names) : names_(names) {}

  std::string name(Var v) const {
    auto n = names_.name(v);
    if (!n) throw ContractError("pretty: variable #" + std::to_string(v.index) + " has no name");
    return std::string(*n);
  }

  // Precedence levels: 0 sum, 1 product, 2 atom.
  std::string aexp(const AExp& a, int context = 0) const {
    return std::visit(overloaded{
                          [](const AExp::Num& n) { return std::to_string(n.value); },
                          [&](const AExp::Ref& r) { return name(r.var); },
                          [&](const AExp::Arith& e) {
                            int level = e.op == ArithOp::Mul ? 1 : 0;
                            const char* op = e.op == ArithOp::Add ? " + " : e.op == ArithOp::Sub ? " - " : " * ";
                            std::string text = aexp(e.lhs, level) + op + aexp(e.rhs, level + 1);
                            return level < context ? "(" + text + ")" : text;
                          },
                      },
                      a.node());
  }

  // Precedence levels: 0 or, 1 and, 2 not/atom.
  std::string bexp(const BExp& b, int context = 0) const {
    return std::visit(overloaded{
                          [](const BExp::Lit& l) -> std::string { return l.value ? "tt" : "ff"; },
                          [&](const BExp::Compare& c) {
                            return aexp(c.lhs) + (c.op == CompareOp::Eq ? " = " : " <= ") + aexp(c.rhs);
                          },
                          [&](const BExp::Not& n) { return "not " + bexp(n.operand, 2); },
                          [&](const BExp::Logic& l) {
                            int level = l.op == LogicOp::And ? 1 : 0;
                            std::string text =
                                bexp(l.lhs, level) + (level ? " and " : " or ") + bexp(l.rhs, level + 1);
                            return level < context ? "(" + text + ")" : text;
                          },
                      },
                      b.node());
  }

  std::string stmt(const Stmt& s, std::size_t indent) const {
    std::string pad(indent, ' ');
    std::string inner(indent + 2, ' ');
    return std::visit(
        overloaded{
            [](const Stmt::Skip&) -> std::string { return "skip"; },
            [&](const Stmt::Assign& a) { return name(a.var) + " := " + aexp(a.expr); },
            [&](const Stmt::Input& i) { return "input " + name(i.var); },
            [&](const Stmt::Output& o) { return "output " + aexp(o.expr); },
            [&](const Stmt::Seq& q) {
              std::string first = q.first.is<Stmt::Seq>() ? "(" + stmt(q.first, indent + 1) + ")"
                                                          : stmt(q.first, indent);
              return first + " ;\n" + pad + stmt(q.second, indent);
            },
            [&](const Stmt::If& c) {
              return "if " + bexp(c.guard) + " then\n" + inner + stmt(c.then_branch, indent + 2) + "\n" + pad +
                     "else\n" + inner + stmt(c.else_branch, indent + 2) + "\n" + pad + "fi";
            },
            [&](const Stmt::While& w) {
              return "while " + bexp(w.guard) + " do\n" + inner + stmt(w.body, indent + 2) + "\n" + pad + "od";
            },
        },
        s.node());
  }

 private:
  const NameTable& names_;
};

}  // namespace detail

/// Source text that parses back to `stmt`. Throws ContractError when a
/// variable has no entry in `names`.
inline std::string pretty(const Stmt& stmt, const NameTable& names) {
  return detail::Printer(names).stmt(stmt, 0);
}

inline std::string pretty(const AExp& a, const NameTable& names) { return detail::Printer(names).aexp(a); }
inline std::string pretty(const BExp& b, const NameTable& names) { return detail::Printer(names).bexp(b); }

}  // namespace cwhile
