#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/poly.hpp"

namespace fthresh {

namespace detail {

// expr   := ['-'] term (('+'|'-') term)*
// term   := factor ('*'? factor)*
// factor := INT | VAR ('^' INT)? | '(' expr ')' ('^' INT)?
class PolyParser {
public:
  PolyParser(std::string_view text, const RingPtr &ring, const Budget &budget)
      : text_(text), ring_(ring), budget_(budget) {}

  Poly parse() {
    skip_ws();
    if (at_end())
      fail("empty polynomial");
    Poly result = expr();
    skip_ws();
    if (!at_end())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError(what, pos_ + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return at_end() ? '\0' : text_[pos_];
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Poly expr() {
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    Poly acc = term();
    if (negate)
      acc = -acc;
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-')
        return acc;
      ++pos_;
      Poly rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
      budget_.check(acc);
    }
  }

  bool starts_factor(char c) const {
    return c == '(' || ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !starts_factor(text_[pos_]))
          fail("expected factor after '*'");
      } else if (!starts_factor(c)) {
        return acc;
      }
      acc = acc * factor();
      budget_.check(acc);
    }
  }

  Poly factor() {
    char c = peek();
    if (at_end())
      fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Reduce digit by digit so arbitrarily long literals are fine.
      const auto &F = ring_->field;
      std::uint32_t v = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = F.add(F.mul(v, F.reduce(10)), F.reduce(text_[pos_] - '0'));
        ++pos_;
      }
      return Poly::constant(ring_, v);
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (!at_end() && ident_char(text_[pos_]))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      std::size_t index = ring_->nvars();
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (ring_->variables[i] == name)
          index = i;
      if (index == ring_->nvars()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      auto power = exponent();
      return Poly::monomial(ring_,
                            Monomial::variable(ring_->nvars(), index, power));
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (peek() != ')')
        fail("expected ')'");
      ++pos_;
      auto power = exponent();
      if (power == 1)
        return inner;
      return poly_pow(inner, power, budget_);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::uint32_t exponent() {
    if (peek() != '^')
      return 1;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        pos_ = start;
        fail("exponent overflow");
      }
    }
    if (pos_ == start)
      fail("expected integer exponent after '^'");
    return static_cast<std::uint32_t>(v);
  }

  std::string_view text_;
  const RingPtr &ring_;
  const Budget &budget_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a polynomial expression in `ring`; coefficients are reduced mod p.
inline Poly parse_poly(std::string_view text, const RingPtr &ring,
                       const Budget &budget = {}) {
  try {
    return detail::PolyParser(text, ring, budget).parse();
  } catch (const OverflowError &e) {
    throw ParseError(std::string("exponent overflow (") + e.what() + ")", 1);
  }
}

/// Splits a comma-separated generator list. The shortcut "@m" expands to the
/// homogeneous maximal ideal (all variables).
inline std::vector<Poly> parse_generators(std::string_view text,
                                          const RingPtr &ring,
                                          const Budget &budget = {}) {
  std::vector<Poly> gens;
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  if (trimmed == "@m") {
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      gens.push_back(Poly::variable(ring, i));
    return gens;
  }
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(')
      ++depth;
    else if (i < text.size() && text[i] == ')' && depth > 0)
      --depth;
    else if (i == text.size() || (text[i] == ',' && depth == 0)) {
      try {
        gens.push_back(parse_poly(text.substr(start, i - start), ring, budget));
      } catch (const ParseError &e) {
        // Re-anchor the column to the whole generator list.
        std::string msg = e.what();
        msg = msg.substr(0, msg.rfind(" at column"));
        throw ParseError(msg, start + e.column());
      }
      start = i + 1;
    }
  }
  return gens;
}

} // namespace fthresh
