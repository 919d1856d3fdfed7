#pragma once

// Exact arithmetic in Q(q): dense univariate polynomials over the rationals
// and reduced rational functions with a monic denominator. This is the
// coefficient field for every symbolic computation in the engine; evaluation
// at a numeric point feeds the representation oracles.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qlim/errors.hpp"

namespace qlim {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Dense polynomial in the formal parameter q with exact rational
/// coefficients. Invariant: no trailing zero coefficients, so the zero
/// polynomial is the empty coefficient vector and degree() == -1.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  PolyQ(int c) : PolyQ(Rational(c)) {}
  explicit PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The polynomial q itself.
  static PolyQ variable() { return PolyQ(std::vector<Rational>{0, 1}); }

  /// c * q^k.
  static PolyQ monomial(const Rational& c, int k) {
    if (c == 0) return PolyQ();
    std::vector<Rational> v(static_cast<size_t>(k) + 1, Rational(0));
    v.back() = c;
    return PolyQ(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& coeff(int k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[static_cast<size_t>(k)];
  }

  const Rational& leading_coeff() const {
    if (is_zero()) throw Error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return PolyQ(std::move(c));
  }
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }
  PolyQ operator-() const {
    PolyQ r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyQ(std::move(c));
  }

  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

  /// Euclidean division: returns (quotient, remainder) with deg r < deg b.
  static std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    PolyQ r = a;
    std::vector<Rational> qc;
    const int db = b.degree();
    if (r.degree() >= db) qc.assign(static_cast<size_t>(r.degree() - db) + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= db) {
      const int shift = r.degree() - db;
      Rational f = r.leading_coeff() / b.leading_coeff();
      qc[static_cast<size_t>(shift)] = f;
      std::vector<Rational> sub(static_cast<size_t>(r.degree()) + 1, Rational(0));
      for (int i = 0; i <= db; ++i) sub[static_cast<size_t>(i + shift)] = f * b.coeff(i);
      r = r - PolyQ(std::move(sub));
    }
    return {PolyQ(std::move(qc)), r};
  }

  /// Exponent k when the polynomial is a single term c*q^k, else -1.
  int monomial_exp() const {
    int e = -1;
    for (int k = 0; k <= degree(); ++k) {
      if (coeffs_[static_cast<size_t>(k)] == 0) continue;
      if (e >= 0) return -1;
      e = k;
    }
    return e;
  }

  int lowest_nonzero_exp() const {
    for (int k = 0; k <= degree(); ++k)
      if (coeffs_[static_cast<size_t>(k)] != 0) return k;
    return -1;
  }

  /// Monic gcd via the Euclidean algorithm over Q. Exact; gcd(0,0) = 0.
  /// Monomial arguments short-circuit: gcd(c*q^k, p) = q^min(k, ord(p)).
  static PolyQ gcd(PolyQ a, PolyQ b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    int ea = a.monomial_exp(), eb = b.monomial_exp();
    if (ea >= 0 || eb >= 0) {
      int e = (ea >= 0 && eb >= 0) ? std::min(ea, eb)
              : (ea >= 0)          ? std::min(ea, b.lowest_nonzero_exp())
                                   : std::min(eb, a.lowest_nonzero_exp());
      std::vector<Rational> c(static_cast<size_t>(e) + 1, Rational(0));
      c.back() = 1;
      return PolyQ(std::move(c));
    }
    while (!b.is_zero()) {
      PolyQ r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Divides by the leading coefficient; no-op on zero.
  PolyQ monic() const {
    if (is_zero()) return *this;
    PolyQ r = *this;
    const Rational lc = r.leading_coeff();
    for (auto& c : r.coeffs_) c /= lc;
    return r;
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string() const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

namespace detail {
inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}
}  // namespace detail

inline std::string PolyQ::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeff(k);
    if (c == 0) continue;
    const bool neg = c < 0;
    Rational ac = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mag = detail::rational_str(ac);
    if (k == 0) {
      out += mag;
    } else {
      if (ac != 1) out += mag + "*";
      out += (k == 1) ? "q" : "q^" + std::to_string(k);
    }
  }
  return out;
}

/// Reduced rational function in Q(q). Canonical form: gcd(num, den) = 1,
/// den monic and nonzero; zero is 0/1. Equal values have identical
/// representations, so operator== is componentwise.
class RatFuncQ {
 public:
  RatFuncQ() : num_(), den_(1) {}
  RatFuncQ(int c) : num_(c), den_(1) {}
  RatFuncQ(const Rational& c) : num_(c), den_(1) {}
  RatFuncQ(const PolyQ& p) : num_(p), den_(1) {}
  RatFuncQ(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  /// The deformation parameter q as an element of Q(q).
  static RatFuncQ q() { return RatFuncQ(PolyQ::variable()); }

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == PolyQ(1) && den_ == PolyQ(1); }

  friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) {
    return RatFuncQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) {
    return RatFuncQ(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFuncQ operator-() const {
    RatFuncQ r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
    return RatFuncQ(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    return RatFuncQ(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFuncQ& operator+=(const RatFuncQ& o) { return *this = *this + o; }
  RatFuncQ& operator-=(const RatFuncQ& o) { return *this = *this - o; }
  RatFuncQ& operator*=(const RatFuncQ& o) { return *this = *this * o; }
  RatFuncQ& operator/=(const RatFuncQ& o) { return *this = *this / o; }

  /// Integer power; negative exponents invert (nonzero base required).
  RatFuncQ pow(long long e) const {
    if (e < 0) return (RatFuncQ(1) / *this).pow(-e);
    RatFuncQ acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const RatFuncQ& a, const RatFuncQ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFuncQ& a, const RatFuncQ& b) { return !(a == b); }

  /// Exact evaluation of the reduced fraction; q0 on a pole raises.
  Rational eval_exact(const Rational& q0) const {
    Rational d = den_.eval(q0);
    if (d == 0) throw EvaluationPole("pole at q = " + detail::rational_str(q0));
    return num_.eval(q0) / d;
  }

  /// Evaluation at a double: the double is converted to an exact dyadic
  /// rational, the reduced fraction is evaluated exactly, and the result is
  /// rounded once at the end.
  double eval(double q0) const {
    Rational exact = eval_exact(Rational(q0));
    return static_cast<double>(exact);
  }

  std::string to_string() const {
    auto wrap = [](const PolyQ& p) {
      std::string s = p.to_string();
      return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
    };
    if (den_ == PolyQ(1)) return wrap(num_);
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw DivisionByZero("zero denominator in Q(q)");
    if (num_.is_zero()) {
      den_ = PolyQ(1);
      return;
    }
    // Laurent-monomial fast path: almost every coefficient in the engine is
    // of the form c*q^a / q^b.
    const int en = num_.monomial_exp(), ed = den_.monomial_exp();
    if (en >= 0 && ed >= 0) {
      const int shift = std::min(en, ed);
      num_ = PolyQ::monomial(num_.coeff(en) / den_.coeff(ed), en - shift);
      den_ = PolyQ::monomial(1, ed - shift);
      return;
    }
    PolyQ g = PolyQ::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = PolyQ::divmod(num_, g).first;
      den_ = PolyQ::divmod(den_, g).first;
    }
    const Rational lc = den_.leading_coeff();
    if (lc != 1) {
      num_ = num_ * PolyQ(Rational(1) / lc);
      den_ = den_ * PolyQ(Rational(1) / lc);
    }
  }

  PolyQ num_, den_;
};

/// rf_reduce / rf_arith / rf_eval spellings from the operation contracts.
inline RatFuncQ rf_reduce(const PolyQ& num, const PolyQ& den) { return RatFuncQ(num, den); }

inline RatFuncQ rf_add(const RatFuncQ& a, const RatFuncQ& b) { return a + b; }
inline RatFuncQ rf_sub(const RatFuncQ& a, const RatFuncQ& b) { return a - b; }
inline RatFuncQ rf_mul(const RatFuncQ& a, const RatFuncQ& b) { return a * b; }
inline RatFuncQ rf_div(const RatFuncQ& a, const RatFuncQ& b) { return a / b; }

}  // namespace qlim
