#pragma once

// The free associative *-algebra over Q(q) on a generator set, together with
// tensor squares and cubes modeled structurally through leg tags. Words are
// kept in cross-leg normal form (all leg-1 letters before leg-2 before
// leg-3), which makes (a (x) 1)(1 (x) b) = (1 (x) b)(a (x) 1) an identity of
// the data structure rather than a rewrite rule.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qlim/errors.hpp"
#include "qlim/rational.hpp"

namespace qlim {

enum class Family : uint8_t { u, w, x };

inline char family_char(Family f) {
  switch (f) {
    case Family::u: return 'u';
    case Family::w: return 'w';
    case Family::x: return 'x';
  }
  return '?';
}

/// One letter of the free *-algebra: a named generator, its formal adjoint
/// flag, the presentation level it belongs to, and a tensor-leg tag (1 for
/// the plain algebra).
struct Generator {
  Family family = Family::u;
  uint16_t level = 1;
  uint16_t i = 1, j = 1;
  uint8_t leg = 1;
  bool starred = false;

  Generator star() const {
    Generator g = *this;
    g.starred = !g.starred;
    return g;
  }
  Generator unstarred() const {
    Generator g = *this;
    g.starred = false;
    return g;
  }
  Generator with_leg(uint8_t l) const {
    Generator g = *this;
    g.leg = l;
    return g;
  }

  /// Term-order key: legs ascending, unstarred before starred within a leg,
  /// then row-major indices.
  auto key() const { return std::make_tuple(leg, starred, family, level, i, j); }

  friend bool operator==(const Generator& a, const Generator& b) { return a.key() == b.key(); }
  friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
  friend bool operator<(const Generator& a, const Generator& b) { return a.key() < b.key(); }

  std::string to_string() const {
    std::string s;
    if (family == Family::x) {
      s = "x";
    } else {
      s = family_char(family);
      s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    if (starred) s += "'";
    if (leg > 1) s += "[" + std::to_string(leg) + "]";
    return s;
  }
};

inline Generator make_u(int level, int i, int j, bool starred = false, int leg = 1) {
  Generator g;
  g.family = Family::u;
  g.level = static_cast<uint16_t>(level);
  g.i = static_cast<uint16_t>(i);
  g.j = static_cast<uint16_t>(j);
  g.leg = static_cast<uint8_t>(leg);
  g.starred = starred;
  return g;
}

inline Generator make_w(int level, int i, int j, bool starred = false, int leg = 1) {
  Generator g = make_u(level, i, j, starred, leg);
  g.family = Family::w;
  return g;
}

inline Generator make_x(bool starred = false, int leg = 1) {
  Generator g = make_u(1, 1, 1, starred, leg);
  g.family = Family::x;
  return g;
}

/// A monomial: a (possibly empty) product of generators. The empty word is
/// the unit 1. Letters are stored leg-sorted (stable), the structural normal
/// form for tensor contexts.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Generator> letters) : letters_(std::move(letters)) { normalize(); }
  Word(std::initializer_list<Generator> letters)
      : Word(std::vector<Generator>(letters)) {}

  static Word unit() { return Word(); }
  static Word of(const Generator& g) { return Word({g}); }

  bool is_unit() const { return letters_.empty(); }
  int degree() const { return static_cast<int>(letters_.size()); }
  const std::vector<Generator>& letters() const { return letters_; }

  /// The involution: reverses the word and stars each letter.
  Word star() const {
    std::vector<Generator> rev(letters_.rbegin(), letters_.rend());
    for (auto& g : rev) g = g.star();
    return Word(std::move(rev));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Generator> cat = a.letters_;
    cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(cat));
  }

  /// Letters belonging to one tensor leg, in order.
  std::vector<Generator> leg_part(uint8_t leg) const {
    std::vector<Generator> out;
    for (const auto& g : letters_)
      if (g.leg == leg) out.push_back(g);
    return out;
  }

  uint8_t max_leg() const {
    uint8_t m = 1;
    for (const auto& g : letters_) m = std::max(m, g.leg);
    return m;
  }

  Word with_legs_shifted(int offset) const {
    std::vector<Generator> ls = letters_;
    for (auto& g : ls) g.leg = static_cast<uint8_t>(g.leg + offset);
    return Word(std::move(ls));
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  /// Degree-lexicographic order: length first, then letter-by-letter.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    for (size_t k = 0; k < a.letters_.size(); ++k) {
      if (a.letters_[k] != b.letters_[k]) return a.letters_[k] < b.letters_[k];
    }
    return false;
  }

  std::string to_string() const {
    if (is_unit()) return "1";
    std::string s;
    for (size_t k = 0; k < letters_.size(); ++k) {
      if (k) s += ".";
      s += letters_[k].to_string();
    }
    return s;
  }

 private:
  void normalize() {
    // Stable: letters within the same leg keep their mutual order.
    std::stable_sort(letters_.begin(), letters_.end(),
                     [](const Generator& a, const Generator& b) { return a.leg < b.leg; });
  }
  std::vector<Generator> letters_;
};

/// Ambient-context fingerprint of a polynomial: which (family, level) pairs
/// its letters draw from. Distinct pairs never legally mix in one product.
struct Context {
  std::set<std::pair<Family, uint16_t>> fam_levels;

  void absorb(const Generator& g) { fam_levels.insert({g.family, g.level}); }
  bool compatible(const Context& o) const {
    if (fam_levels.empty() || o.fam_levels.empty()) return true;
    return fam_levels == o.fam_levels;
  }
};

/// A finite Q(q)-linear combination of words, canonically ordered with no
/// zero coefficients stored. Equal polynomials have identical
/// representations.
class StarPolynomial {
 public:
  using TermMap = std::map<Word, RatFuncQ>;

  StarPolynomial() = default;
  StarPolynomial(const RatFuncQ& c) {
    if (!c.is_zero()) terms_[Word::unit()] = c;
  }
  StarPolynomial(int c) : StarPolynomial(RatFuncQ(c)) {}
  explicit StarPolynomial(const Word& w) { terms_[w] = RatFuncQ(1); }
  explicit StarPolynomial(const Generator& g) { terms_[Word::of(g)] = RatFuncQ(1); }

  static StarPolynomial zero() { return StarPolynomial(); }
  static StarPolynomial one() { return StarPolynomial(1); }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  int degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
  }

  /// Largest word under the term order. Undefined on zero.
  const Word& leading_word() const {
    if (terms_.empty()) throw Error("leading word of the zero polynomial");
    return terms_.rbegin()->first;
  }
  const RatFuncQ& leading_coeff() const {
    if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
    return terms_.rbegin()->second;
  }

  RatFuncQ coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RatFuncQ(0) : it->second;
  }

  void add_term(const Word& w, const RatFuncQ& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend StarPolynomial operator+(const StarPolynomial& a, const StarPolynomial& b) {
    StarPolynomial r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, c);
    return r;
  }
  friend StarPolynomial operator-(const StarPolynomial& a, const StarPolynomial& b) {
    StarPolynomial r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
    return r;
  }
  StarPolynomial operator-() const {
    StarPolynomial r;
    for (const auto& [w, c] : terms_) r.terms_[w] = -c;
    return r;
  }

  friend StarPolynomial operator*(const RatFuncQ& c, const StarPolynomial& p) {
    StarPolynomial r;
    if (c.is_zero()) return r;
    for (const auto& [w, pc] : p.terms_) r.terms_[w] = c * pc;
    return r;
  }

  friend StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b) {
    check_contexts(a, b);
    StarPolynomial r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
    return r;
  }

  StarPolynomial& operator+=(const StarPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  StarPolynomial& operator-=(const StarPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  StarPolynomial& operator*=(const StarPolynomial& o) { return *this = *this * o; }

  /// The *-algebra involution: stars every word; coefficients are fixed
  /// because q is a real formal parameter.
  StarPolynomial star() const {
    StarPolynomial r;
    for (const auto& [w, c] : terms_) r.add_term(w.star(), c);
    return r;
  }

  StarPolynomial with_legs_shifted(int offset) const {
    StarPolynomial r;
    for (const auto& [w, c] : terms_) r.add_term(w.with_legs_shifted(offset), c);
    return r;
  }

  Context context() const {
    Context ctx;
    for (const auto& [w, c] : terms_)
      for (const auto& g : w.letters()) ctx.absorb(g);
    return ctx;
  }

  std::set<uint8_t> legs() const {
    std::set<uint8_t> ls;
    for (const auto& [w, c] : terms_)
      for (const auto& g : w.letters()) ls.insert(g.leg);
    return ls;
  }

  friend bool operator==(const StarPolynomial& a, const StarPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const StarPolynomial& a, const StarPolynomial& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Print leading terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [w, c] = *it;
      std::string cs = c.to_string();
      bool neg = !cs.empty() && cs[0] == '-';
      std::string mag = neg ? cs.substr(1) : cs;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (w.is_unit()) {
        out += mag;
      } else {
        if (mag != "1") out += mag + "*";
        out += w.to_string();
      }
    }
    return out;
  }

 private:
  static void check_contexts(const StarPolynomial& a, const StarPolynomial& b) {
    Context ca = a.context(), cb = b.context();
    if (!ca.compatible(cb))
      throw ContextMismatch("product of polynomials from different ambient algebras");
  }
  TermMap terms_;
};

inline StarPolynomial poly_mul(const StarPolynomial& a, const StarPolynomial& b) { return a * b; }
inline StarPolynomial poly_star(const StarPolynomial& p) { return p.star(); }
inline Word word_star(const Word& w) { return w.star(); }

/// Product of a leg-1 polynomial with an already-relabeled higher-leg one.
/// The legs of the two factors must not collide.
inline StarPolynomial tensor_product(const StarPolynomial& p, const StarPolynomial& r) {
  std::set<uint8_t> lp = p.legs(), lr = r.legs();
  for (uint8_t l : lp)
    if (lr.count(l)) throw ContextMismatch("tensor factors share leg " + std::to_string(l));
  return p * r;
}

/// p (x) r for plain (leg-1) polynomials: relabels r to leg 2.
inline StarPolynomial tensor2(const StarPolynomial& p, const StarPolynomial& r) {
  return tensor_product(p, r.with_legs_shifted(1));
}

}  // namespace qlim
