#pragma once

// Generator/relation pairs: the q-deformed special unitary presentations,
// the norm-bounded contraction system, the circle algebra, and the twisted
// Levi-Civita symbol that drives the determinant relations.

#include <string>
#include <unordered_set>
#include <vector>

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/rational.hpp"

namespace qlim {

enum class RelationKind { algebraic, norm_bound };

/// Either an algebraic relation body = 0 or a norm bound ||subject|| <= bound.
struct Relation {
  RelationKind kind = RelationKind::algebraic;
  StarPolynomial body;     // algebraic only; nonzero as a polynomial
  Generator subject;       // norm_bound only
  Rational bound = 1;      // norm_bound only; > 0
  std::string label;

  static Relation algebraic(StarPolynomial body, std::string label) {
    if (body.is_zero()) throw Error("trivial relation 0 = 0 rejected: " + label);
    Relation r;
    r.kind = RelationKind::algebraic;
    r.body = std::move(body);
    r.label = std::move(label);
    return r;
  }
  static Relation norm_bound(Generator subject, Rational bound, std::string label) {
    if (bound <= 0) throw Error("norm bound must be positive: " + label);
    Relation r;
    r.kind = RelationKind::norm_bound;
    r.subject = subject;
    r.bound = std::move(bound);
    r.label = std::move(label);
    return r;
  }
};

struct Admissibility {
  bool weakly_admissible = false;
  std::string note;
};

struct Presentation {
  Family family = Family::u;
  uint16_t level = 1;
  std::vector<Generator> generators;  // unstarred
  std::vector<Relation> relations;
  bool star_closed = false;
  Admissibility admissibility;

  std::vector<const Relation*> algebraic_relations() const {
    std::vector<const Relation*> out;
    for (const auto& r : relations)
      if (r.kind == RelationKind::algebraic) out.push_back(&r);
    return out;
  }

  bool has_generator(const Generator& g) const {
    Generator plain = g.unstarred().with_leg(1);
    for (const auto& h : generators)
      if (h == plain) return true;
    return false;
  }
};

/// Number of index pairs (a,b), a < b, with t_a > t_b.
inline int inversion_count(const std::vector<int>& t) {
  int count = 0;
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = a + 1; b < t.size(); ++b)
      if (t[a] > t[b]) ++count;
  return count;
}

/// The twisted Levi-Civita coefficient: 0 on repeated entries, (-q)^inv
/// otherwise. Entries must lie in 1..n and the tuple must have length n.
inline RatFuncQ e_symbol(const std::vector<int>& t, int n) {
  if (static_cast<int>(t.size()) != n)
    throw IndexError("e_symbol: tuple length " + std::to_string(t.size()) +
                     " does not match n = " + std::to_string(n));
  for (int v : t)
    if (v < 1 || v > n) throw IndexError("e_symbol: entry " + std::to_string(v) + " out of 1.." + std::to_string(n));
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  for (int v : t) {
    if (seen[static_cast<size_t>(v)]) return RatFuncQ(0);
    seen[static_cast<size_t>(v)] = true;
  }
  return (-RatFuncQ::q()).pow(inversion_count(t));
}

namespace detail {

inline std::string tuple_str(const std::vector<int>& t) {
  std::string s;
  for (size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s;
}

/// Scale a nonzero polynomial so its leading coefficient is 1.
inline StarPolynomial monic_form(const StarPolynomial& p) {
  if (p.is_zero() || p.leading_coeff().is_one()) return p;
  return (RatFuncQ(1) / p.leading_coeff()) * p;
}

/// Adds f* for every algebraic f not already present up to a unit
/// coefficient, and marks the presentation star-closed. Presence is decided
/// on the printed monic form, which is canonical.
inline void star_close(Presentation& pres) {
  std::unordered_set<std::string> keys;
  for (const auto& rel : pres.relations)
    if (rel.kind == RelationKind::algebraic) keys.insert(monic_form(rel.body).to_string());
  std::vector<Relation> added;
  for (const auto& rel : pres.relations) {
    if (rel.kind != RelationKind::algebraic) continue;
    StarPolynomial st = rel.body.star();
    std::string key = monic_form(st).to_string();
    if (keys.count(key)) continue;
    keys.insert(key);
    added.push_back(Relation::algebraic(std::move(st), rel.label + "*"));
  }
  for (auto& r : added) pres.relations.push_back(std::move(r));
  pres.star_closed = true;
}

/// True when, for every algebraic f, f* is present up to a unit coefficient.
inline bool is_star_closed(const Presentation& pres) {
  std::unordered_set<std::string> keys;
  for (const auto& rel : pres.relations)
    if (rel.kind == RelationKind::algebraic) keys.insert(monic_form(rel.body).to_string());
  for (const auto& rel : pres.relations) {
    if (rel.kind != RelationKind::algebraic) continue;
    if (!keys.count(monic_form(rel.body.star()).to_string())) return false;
  }
  return true;
}

/// Enumerates all tuples in {1..n}^n in lexicographic order.
inline std::vector<std::vector<int>> all_tuples(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<size_t>(n), 1);
  while (true) {
    out.push_back(t);
    int k = n - 1;
    while (k >= 0 && t[static_cast<size_t>(k)] == n) {
      t[static_cast<size_t>(k)] = 1;
      --k;
    }
    if (k < 0) break;
    ++t[static_cast<size_t>(k)];
  }
  return out;
}

inline bool is_distinct(const std::vector<int>& t) {
  std::vector<int> s = t;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace detail

enum class DetTuples { all, distinct };

/// The level-n q-deformed special unitary presentation: row and column
/// unitarity plus one twisted-determinant relation per j-tuple, then closure
/// under the involution. The generating set's 0 and 1 are structural (zero
/// polynomial and empty word), so their relations need no rules.
inline Presentation build_suq(int n, DetTuples det_tuples = DetTuples::all) {
  if (n < 1) throw IndexError("build_suq: level must be >= 1");
  Presentation pres;
  pres.family = Family::u;
  pres.level = static_cast<uint16_t>(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) pres.generators.push_back(make_u(n, i, j));

  // Row unitarity: sum_k u_ik u_jk* = delta_ij.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      StarPolynomial p;
      for (int k = 1; k <= n; ++k)
        p += StarPolynomial(Word({make_u(n, i, k), make_u(n, j, k, true)}));
      if (i == j) p -= StarPolynomial::one();
      pres.relations.push_back(Relation::algebraic(
          p, "unitarity_row(" + std::to_string(i) + "," + std::to_string(j) + ")"));
    }
  // Column unitarity: sum_k u_ki* u_kj = delta_ij.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      StarPolynomial p;
      for (int k = 1; k <= n; ++k)
        p += StarPolynomial(Word({make_u(n, k, i, true), make_u(n, k, j)}));
      if (i == j) p -= StarPolynomial::one();
      pres.relations.push_back(Relation::algebraic(
          p, "unitarity_col(" + std::to_string(i) + "," + std::to_string(j) + ")"));
    }
  // Twisted determinant: sum_I E_I u_{j1 i1} ... u_{jn in} = E_J. Only the
  // n! distinct i-tuples contribute; their twisted signs are tabulated once.
  std::vector<RatFuncQ> minus_q_pow(static_cast<size_t>(n * (n - 1) / 2) + 1);
  minus_q_pow[0] = RatFuncQ(1);
  for (size_t k = 1; k < minus_q_pow.size(); ++k)
    minus_q_pow[k] = minus_q_pow[k - 1] * (-RatFuncQ::q());
  const auto tuples = detail::all_tuples(n);
  std::vector<std::pair<const std::vector<int>*, const RatFuncQ*>> distinct_tuples;
  for (const auto& t : tuples)
    if (detail::is_distinct(t))
      distinct_tuples.emplace_back(&t, &minus_q_pow[static_cast<size_t>(inversion_count(t))]);
  for (const auto& J : tuples) {
    const bool j_distinct = detail::is_distinct(J);
    if (det_tuples == DetTuples::distinct && !j_distinct) continue;
    StarPolynomial p;
    for (const auto& [ip, e] : distinct_tuples) {
      const auto& I = *ip;
      std::vector<Generator> letters;
      letters.reserve(static_cast<size_t>(n));
      for (int s = 0; s < n; ++s)
        letters.push_back(make_u(n, J[static_cast<size_t>(s)], I[static_cast<size_t>(s)]));
      p.add_term(Word(std::move(letters)), *e);
    }
    if (j_distinct) p.add_term(Word::unit(), -minus_q_pow[static_cast<size_t>(inversion_count(J))]);
    pres.relations.push_back(Relation::algebraic(p, "determinant(" + detail::tuple_str(J) + ")"));
  }
  detail::star_close(pres);
  pres.admissibility = {true, "unitarity bounds generator norms"};
  return pres;
}

/// The level-n contraction presentation: generators w_ij with only the norm
/// bounds ||w_ij|| <= 1. No algebraic relations, so the pair is weakly
/// admissible outright.
inline Presentation build_contraction(int n) {
  if (n < 1) throw IndexError("build_contraction: level must be >= 1");
  Presentation pres;
  pres.family = Family::w;
  pres.level = static_cast<uint16_t>(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Generator g = make_w(n, i, j);
      pres.generators.push_back(g);
      pres.relations.push_back(Relation::norm_bound(
          g, 1, "norm(w(" + std::to_string(i) + "," + std::to_string(j) + "))"));
    }
  pres.star_closed = true;  // vacuous: no algebraic relations
  pres.admissibility = {true, "Example 1.3.5.(2) of Phillips"};
  return pres;
}

/// One unitary generator x with x*x = 1 = xx*.
inline Presentation build_circle() {
  Presentation pres;
  pres.family = Family::x;
  pres.level = 1;
  Generator x = make_x();
  pres.generators.push_back(x);
  pres.relations.push_back(Relation::algebraic(
      StarPolynomial(Word({x.star(), x})) - StarPolynomial::one(), "x*x=1"));
  pres.relations.push_back(Relation::algebraic(
      StarPolynomial(Word({x, x.star()})) - StarPolynomial::one(), "xx*=1"));
  pres.star_closed = true;  // both bodies are self-adjoint
  pres.admissibility = {true, "unitarity is algebraic and norm-bounding"};
  return pres;
}

}  // namespace qlim
