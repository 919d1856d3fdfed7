#pragma once

// Recursive-descent parser for the shared expression grammar:
//
//   expr    := sum ('#' sum)*                 tensor legs, left to right
//   sum     := product (('+'|'-') product)*
//   product := power ((('*'|'.')? power) | '/' power)*   juxtaposition multiplies
//   power   := atom postfix* ('^' integer)?
//   postfix := '\'' | '[' integer ']'         formal adjoint; explicit leg tag
//   atom    := integer | 'q' | generator | '(' expr ')' | '-' power
//   generator := ('u'|'w') '(' int ',' int ')' | 'x'
//
// Integers are exact; `0` and `1` are the structural zero polynomial and
// empty word. Division requires a scalar (empty-word) divisor.

#include <cctype>
#include <string>
#include <vector>

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/rational.hpp"

namespace qlim {

/// What generator atoms an expression may mention.
struct ParseContext {
  Family family = Family::u;
  int level = 1;
  bool allow_x = false;
  int max_legs = 3;

  static ParseContext for_suq(int n) { return {Family::u, n, false, 3}; }
  static ParseContext for_contraction(int n) { return {Family::w, n, false, 3}; }
  static ParseContext for_circle() { return {Family::x, 1, true, 3}; }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::string& text, const ParseContext& ctx) : text_(text), ctx_(ctx) {}

  StarPolynomial parse() {
    StarPolynomial p = parse_tensor();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected trailing input", col());
    return p;
  }

 private:
  int col() const { return static_cast<int>(pos_) + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", col());
  }

  bool atom_ahead() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  long long parse_integer() {
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected an integer", col());
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1LL << 40)) throw ParseError("integer literal too large", col());
      ++pos_;
    }
    return neg ? -v : v;
  }

  StarPolynomial parse_tensor() {
    StarPolynomial acc = parse_sum();
    int leg_offset = 0;
    while (peek('#')) {
      ++pos_;
      if (leg_offset == 0) {
        int m = 0;
        for (uint8_t l : acc.legs()) m = std::max(m, static_cast<int>(l));
        leg_offset = std::max(m, 1);
      }
      StarPolynomial rhs = parse_sum();
      int rhs_max = 0;
      for (uint8_t l : rhs.legs()) rhs_max = std::max(rhs_max, static_cast<int>(l));
      rhs_max = std::max(rhs_max, 1);
      if (leg_offset + rhs_max > ctx_.max_legs)
        throw ParseError("tensor power exceeds " + std::to_string(ctx_.max_legs) + " legs", col());
      acc = tensor_product(acc, rhs.with_legs_shifted(leg_offset));
      leg_offset += rhs_max;
    }
    return acc;
  }

  StarPolynomial parse_sum() {
    StarPolynomial acc = parse_product();
    while (true) {
      if (accept('+'))
        acc += parse_product();
      else if (accept('-'))
        acc -= parse_product();
      else
        return acc;
    }
  }

  StarPolynomial parse_product() {
    StarPolynomial acc = parse_power();
    while (true) {
      if (accept('*') || accept('.')) {
        acc = acc * parse_power();
      } else if (peek('/')) {
        ++pos_;
        const int at = col();
        StarPolynomial d = parse_power();
        acc = acc * StarPolynomial(scalar_of(d, at).pow(-1));
      } else if (atom_ahead()) {
        acc = acc * parse_power();  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  /// Requires the polynomial to be a pure scalar (multiple of the unit).
  RatFuncQ scalar_of(const StarPolynomial& p, int at) {
    if (p.is_zero()) throw DivisionByZero("division by zero at column " + std::to_string(at));
    if (p.term_count() != 1 || !p.leading_word().is_unit())
      throw ParseError("division requires a scalar divisor", at);
    return p.leading_coeff();
  }

  StarPolynomial parse_power() {
    StarPolynomial base = parse_atom();
    while (peek('\'') || peek('[')) {
      if (accept('\'')) {
        base = base.star();
        continue;
      }
      // Explicit leg tag: the printed form of tensor letters.
      ++pos_;
      const int at = col();
      long long leg = parse_integer();
      expect(']');
      if (leg < 1 || leg > ctx_.max_legs)
        throw ParseError("leg tag out of range 1.." + std::to_string(ctx_.max_legs), at);
      for (uint8_t l : base.legs())
        if (l != 1) throw ParseError("leg tag on an already-tagged expression", at);
      base = base.with_legs_shifted(static_cast<int>(leg) - 1);
    }
    if (peek('^')) {
      ++pos_;
      const int at = col();
      long long e = parse_integer();
      if (e < 0) {
        return StarPolynomial(scalar_of(base, at).pow(e));
      }
      if (e > 64) throw ParseError("exponent too large", at);
      StarPolynomial acc = StarPolynomial::one();
      for (long long k = 0; k < e; ++k) acc = acc * base;
      return acc;
    }
    return base;
  }

  StarPolynomial parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", col());
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      StarPolynomial inner = parse_tensor();
      expect(')');
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -parse_power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = parse_integer();
      return StarPolynomial(RatFuncQ(Rational(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw ParseError(std::string("unexpected character '") + c + "'", col());
  }

  StarPolynomial parse_name() {
    const int at = col();
    // Names are single letters (u, w, x, q); juxtaposed letters multiply.
    std::string name(1, text_[pos_++]);
    if (name == "q") return StarPolynomial(RatFuncQ::q());
    if (name == "x") {
      if (!ctx_.allow_x) throw NameError("generator 'x' is not in this context", at);
      return StarPolynomial(make_x());
    }
    if (name == "u" || name == "w") {
      const Family fam = (name == "u") ? Family::u : Family::w;
      if (fam != ctx_.family)
        throw NameError("generator family '" + name + "' is not in this context", at);
      expect('(');
      long long i = parse_integer();
      expect(',');
      long long j = parse_integer();
      expect(')');
      if (i < 1 || i > ctx_.level || j < 1 || j > ctx_.level)
        throw NameError("generator " + name + "(" + std::to_string(i) + "," + std::to_string(j) +
                            ") is outside level " + std::to_string(ctx_.level),
                        at);
      return StarPolynomial(fam == Family::u
                                ? make_u(ctx_.level, static_cast<int>(i), static_cast<int>(j))
                                : make_w(ctx_.level, static_cast<int>(i), static_cast<int>(j)));
    }
    throw NameError("unknown name '" + name + "'", at);
  }

  const std::string& text_;
  ParseContext ctx_;
  size_t pos_ = 0;
};

}  // namespace detail

inline StarPolynomial parse_expression(const std::string& text, const ParseContext& ctx) {
  return detail::ExprParser(text, ctx).parse();
}

}  // namespace qlim
