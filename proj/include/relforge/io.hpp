#ifndef RELFORGE_IO_HPP_
#define RELFORGE_IO_HPP_

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/expr.hpp"
#include "relforge/monoid.hpp"
#include "relforge/relation.hpp"

namespace relforge::io {

// Formats:
//   relation arity=<M> order=<N>   followed by order^(M-1) rows of N cells
//   monoid order=<N>               followed by N rows of N element indices
//   cell := "-" | digits joined by "*"   ("phi" and "N" read as "-")
//   expr := (var INDEX) | (sum expr+) | (apply [cell,...] expr)
// Printing is canonical (undefined as "-", digits ascending) and parsing a
// canonical form is the exact inverse.

inline std::string print_value_set(ValueSet v) {
  if (v.empty()) return "-";
  std::string out;
  v.for_each([&](elem_t e) {
    if (!out.empty()) out += '*';
    out += std::to_string(e);
  });
  return out;
}

inline ValueSet parse_value_set(std::string_view cell, unsigned order,
                                const std::string& where) {
  if (cell == "-" || cell == "phi" || cell == "N") return ValueSet::none();
  ValueSet out;
  std::size_t pos = 0;
  while (pos <= cell.size()) {
    const std::size_t star = cell.find('*', pos);
    const std::string_view part =
        cell.substr(pos, star == std::string_view::npos ? star : star - pos);
    if (part.empty() || part.find_first_not_of("0123456789") !=
                            std::string_view::npos)
      fail(errc::syntax_error,
           where + ": cell \"" + std::string(cell) + "\" is not a value list");
    unsigned long v = std::stoul(std::string(part));
    if (v >= order)
      fail(errc::range_error, where + ": value " + std::string(part) +
                                  " is outside 0.." + std::to_string(order - 1));
    out.insert(static_cast<elem_t>(v));
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return out;
}

namespace detail {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t col;
};

//! Whitespace-separated tokens with positions (1-based).
inline std::vector<Token> split_words(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::string cur;
  std::size_t tline = 0, tcol = 0;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back({cur, tline, tcol});
      cur.clear();
    }
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush();
      ++line;
      col = 1;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      flush();
      ++col;
      continue;
    }
    if (cur.empty()) {
      tline = line;
      tcol = col;
    }
    cur += ch;
    ++col;
  }
  flush();
  return out;
}

inline std::string at(const Token& t) {
  return "line " + std::to_string(t.line) + ", col " + std::to_string(t.col);
}

//! Parse "key=<number>" returning the number.
inline unsigned long key_value(const Token& t, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (t.text.rfind(prefix, 0) != 0)
    fail(errc::syntax_error,
         at(t) + ": expected " + prefix + "<n>, got \"" + t.text + "\"");
  const std::string num = t.text.substr(prefix.size());
  if (num.empty() ||
      num.find_first_not_of("0123456789") != std::string::npos)
    fail(errc::syntax_error, at(t) + ": \"" + num + "\" is not a number");
  return std::stoul(num);
}

}  // namespace detail

inline Relation parse_relation(std::string_view text) {
  const auto words = detail::split_words(text);
  if (words.size() < 3 || words[0].text != "relation")
    fail(errc::syntax_error,
         "line 1, col 1: expected header \"relation arity=<M> order=<N>\"");
  const unsigned long arity = detail::key_value(words[1], "arity");
  const unsigned long order = detail::key_value(words[2], "order");
  if (arity < 1) fail(errc::shape_error, "arity must be >= 1");
  if (order < 1 || order > ValueSet::max_order)
    fail(errc::shape_error,
         "order must be in 1.." + std::to_string(ValueSet::max_order));

  Relation r(static_cast<unsigned>(arity), static_cast<unsigned>(order));
  const std::size_t cells = r.point_count();
  if (words.size() - 3 != cells)
    fail(errc::shape_error, "expected " + std::to_string(cells / order) +
                                " rows of " + std::to_string(order) +
                                " cells, got " +
                                std::to_string(words.size() - 3) + " cells");
  for (std::size_t i = 0; i < cells; ++i) {
    const auto& w = words[3 + i];
    r.set_cell(i, parse_value_set(w.text, static_cast<unsigned>(order),
                                  detail::at(w)));
  }
  return r;
}

inline std::string print_relation(const Relation& r) {
  std::string out = "relation arity=" + std::to_string(r.arity()) +
                    " order=" + std::to_string(r.order()) + "\n";
  for (std::size_t i = 0; i < r.point_count(); ++i) {
    out += print_value_set(r.cell(i));
    out += (i + 1) % r.order() == 0 ? '\n' : ' ';
  }
  return out;
}

inline Monoid parse_monoid(std::string_view text) {
  const auto words = detail::split_words(text);
  if (words.size() < 2 || words[0].text != "monoid")
    fail(errc::syntax_error,
         "line 1, col 1: expected header \"monoid order=<N>\"");
  const unsigned long order = detail::key_value(words[1], "order");
  if (order < 1) fail(errc::shape_error, "order must be >= 1");
  if (words.size() - 2 != order * order)
    fail(errc::shape_error,
         "expected " + std::to_string(order) + " rows of " +
             std::to_string(order) + " entries, got " +
             std::to_string(words.size() - 2) + " entries");
  std::vector<elem_t> flat;
  flat.reserve(order * order);
  for (std::size_t i = 0; i < order * order; ++i) {
    const auto& w = words[2 + i];
    if (w.text.find_first_not_of("0123456789") != std::string::npos)
      fail(errc::syntax_error,
           detail::at(w) + ": \"" + w.text + "\" is not an element index");
    const unsigned long v = std::stoul(w.text);
    if (v >= order)
      fail(errc::range_error, detail::at(w) + ": entry " + w.text +
                                  " is outside 0.." + std::to_string(order - 1));
    flat.push_back(static_cast<elem_t>(v));
  }
  return Monoid::from_flat_table(static_cast<unsigned>(order), std::move(flat));
}

inline std::string print_monoid(const Monoid& m) {
  std::string out = "monoid order=" + std::to_string(m.order()) + "\n";
  for (elem_t a = 0; a < m.order(); ++a)
    for (elem_t b = 0; b < m.order(); ++b) {
      out += std::to_string(m.add(a, b));
      out += b + 1 == m.order() ? '\n' : ' ';
    }
  return out;
}

namespace detail {

//! Lexer for the s-expression grammar: "(", ")", bracketed relation
//! tokens, and bare atoms.
inline std::vector<Token> lex_expr(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](char ch) {
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      advance(ch);
      ++i;
      continue;
    }
    const std::size_t tline = line, tcol = col;
    if (ch == '(' || ch == ')') {
      out.push_back({std::string(1, ch), tline, tcol});
      advance(ch);
      ++i;
      continue;
    }
    if (ch == '[') {
      std::string tok;
      while (i < text.size() && text[i] != ']') {
        tok += text[i];
        advance(text[i]);
        ++i;
      }
      if (i == text.size())
        fail(errc::syntax_error, "line " + std::to_string(tline) + ", col " +
                                     std::to_string(tcol) + ": unclosed '['");
      tok += ']';
      advance(']');
      ++i;
      out.push_back({tok, tline, tcol});
      continue;
    }
    std::string tok;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '(' && text[i] != ')') {
      tok += text[i];
      advance(text[i]);
      ++i;
    }
    out.push_back({tok, tline, tcol});
  }
  return out;
}

inline Relation parse_reltoken(const Token& t) {
  // "[cell,cell,...]": an arity-1 relation whose order is the cell count
  const std::string_view body(t.text.data() + 1, t.text.size() - 2);
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    cells.push_back(body.substr(
        pos, comma == std::string_view::npos ? comma : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  const unsigned order = static_cast<unsigned>(cells.size());
  if (order == 0 || order > ValueSet::max_order)
    fail(errc::syntax_error, at(t) + ": relation token needs 1.." +
                                 std::to_string(ValueSet::max_order) +
                                 " cells");
  Relation r(1, order);
  for (elem_t x = 0; x < order; ++x)
    r.set_cell(x, parse_value_set(cells[x], order, at(t)));
  return r;
}

struct ExprParser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  const Token& peek() const {
    if (pos >= toks.size())
      fail(errc::syntax_error, "unexpected end of expression");
    return toks[pos];
  }

  const Token& take() {
    const Token& t = peek();
    ++pos;
    return t;
  }

  Expr parse() {
    const Token& open = take();
    if (open.text != "(")
      fail(errc::syntax_error, at(open) + ": expected '('");
    const Token& head = take();
    if (head.text == "var") {
      const Token& num = take();
      if (num.text.empty() ||
          num.text.find_first_not_of("0123456789") != std::string::npos)
        fail(errc::syntax_error,
             at(num) + ": expected a variable index, got \"" + num.text + "\"");
      Expr e = Expr::var(static_cast<unsigned>(std::stoul(num.text)));
      expect_close();
      return e;
    }
    if (head.text == "sum") {
      std::vector<Expr> kids;
      while (peek().text != ")") kids.push_back(parse());
      take();  // ')'
      if (kids.empty())
        fail(errc::syntax_error, at(head) + ": sum needs at least one child");
      return Expr::sum(std::move(kids));
    }
    if (head.text == "apply") {
      const Token& rel = take();
      if (rel.text.size() < 2 || rel.text.front() != '[' ||
          rel.text.back() != ']')
        fail(errc::syntax_error,
             at(rel) + ": expected a [..] relation token");
      Relation f = parse_reltoken(rel);
      Expr child = parse();
      expect_close();
      return Expr::apply(std::move(f), std::move(child));
    }
    fail(errc::syntax_error,
         at(head) + ": expected var, sum or apply, got \"" + head.text + "\"");
  }

  void expect_close() {
    const Token& t = take();
    if (t.text != ")") fail(errc::syntax_error, at(t) + ": expected ')'");
  }
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) {
  const auto toks = detail::lex_expr(text);
  detail::ExprParser p{toks};
  Expr e = p.parse();
  if (p.pos != toks.size())
    fail(errc::syntax_error,
         detail::at(toks[p.pos]) + ": trailing input after expression");
  return e;
}

inline std::string print_expr(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::var:
      return "(var " + std::to_string(e.var_index()) + ")";
    case Expr::Kind::sum: {
      std::string out = "(sum";
      for (const Expr& c : e.children()) {
        out += ' ';
        out += print_expr(c);
      }
      return out + ")";
    }
    case Expr::Kind::apply: {
      std::string out = "(apply [";
      const Relation& f = e.rel();
      for (elem_t x = 0; x < f.order(); ++x) {
        if (x) out += ',';
        out += print_value_set(f.cell(x));
      }
      return out + "] " + print_expr(e.child()) + ")";
    }
  }
  fail(errc::shape_error, "malformed expression node");
}

}  // namespace relforge::io

#endif  // RELFORGE_IO_HPP_
