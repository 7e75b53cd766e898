#pragma once

// Literal grammars for config files.
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := INT | 'g' ['^' INT] | 't' ['^' ['-'] INT] | '(' expr ')' | 'O(t^' ['-'] INT ')'
//
// Field literals are expressions without `t`.

#include <cctype>
#include <string>
#include <string_view>

#include "rrb/laurent.hpp"

namespace rrb {

namespace detail {

class LiteralParser {
 public:
  LiteralParser(const GaloisField& f, std::string_view src, bool allow_t, int column_base = 1)
      : f_(f), s_(src), allow_t_(allow_t), base_(column_base) {}

  LaurentSeries parse() {
    LaurentSeries v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, "column " + std::to_string(pos_ + base_) + ": " + msg + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000LL) error("integer too large");
    }
    return neg ? -v : v;
  }

  LaurentSeries expr() {
    bool neg = eat('-');
    LaurentSeries acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  LaurentSeries term() {
    LaurentSeries acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  LaurentSeries factor() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentSeries::constant(FieldElement::from_int(f_, integer()));
    if (c == '(') {
      ++pos_;
      LaurentSeries v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (c == 'g') {
      ++pos_;
      long long e = 1;
      if (eat('^')) e = integer();
      if (e < 0) error("negative power of g");
      return LaurentSeries::constant(FieldElement::generator(f_).pow(e));
    }
    if (c == 't') {
      if (!allow_t_) error("'t' not allowed in a field literal");
      ++pos_;
      long long e = 1;
      if (eat('^')) e = integer();
      return LaurentSeries::t_power(f_, static_cast<int>(e));
    }
    if (c == 'O') {
      if (!allow_t_) error("'O' not allowed in a field literal");
      ++pos_;
      if (!eat('(') || !eat('t')) error("expected O(t^N)");
      long long e = 1;
      if (eat('^')) e = integer();
      if (!eat(')')) error("expected ')'");
      return LaurentSeries::big_o(f_, static_cast<int>(e));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const GaloisField& f_;
  std::string_view s_;
  bool allow_t_;
  int base_;
  size_t pos_ = 0;
};

}  // namespace detail

/// `column_base` is the reported column of src[0].
inline LaurentSeries parse_laurent(const GaloisField& f, std::string_view src, int column_base = 1) {
  return detail::LiteralParser(f, src, true, column_base).parse();
}

inline FieldElement parse_field_element(const GaloisField& f, std::string_view src, int column_base = 1) {
  const LaurentSeries v = detail::LiteralParser(f, src, false, column_base).parse();
  return v.is_exact_zero() ? FieldElement::zero(f) : v.coeff(0);
}

}  // namespace rrb
