#pragma once

// Noncommutative rewriting over Q(q): relations oriented into terminating
// rules under a degree-lexicographic order, normal forms, reduce-to-zero as
// a sound ideal-membership certificate, bounded critical-pair completion,
// and exact linear span membership in normal-form coordinates.
//
// Matching is leg-aware: a pattern occurs in a word when each of its tensor
// leg blocks occurs contiguously in the corresponding leg block of the word,
// which is factor division in the free product of the legs' free monoids.

#include <array>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/presentation.hpp"

namespace qlim {

/// lhs -> rhs with every rhs monomial strictly below lhs in the term order;
/// the lhs coefficient has been normalized to 1.
struct RewriteRule {
  Word lhs;
  StarPolynomial rhs;
  std::string origin;
};

struct ConfluenceStatus {
  enum class Kind { unknown, confluent_to_degree, completed_partial };
  Kind kind = Kind::unknown;
  int degree = 0;

  static ConfluenceStatus unknown() { return {}; }
  static ConfluenceStatus confluent(int d) { return {Kind::confluent_to_degree, d}; }
  static ConfluenceStatus partial(int d) { return {Kind::completed_partial, d}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::unknown: return "unknown";
      case Kind::confluent_to_degree: return "confluent_to_degree(" + std::to_string(degree) + ")";
      case Kind::completed_partial: return "completed_partial(" + std::to_string(degree) + ")";
    }
    return "unknown";
  }
};

namespace detail {

/// Builds a rule from a nonzero relation polynomial: the leading monomial
/// becomes lhs, the negated remainder (divided by the leading coefficient)
/// becomes rhs. Constant relations cannot be oriented.
inline RewriteRule make_rule(const StarPolynomial& body, const std::string& origin) {
  if (body.is_zero()) throw OrientationError("cannot orient the zero relation: " + origin);
  const Word lhs = body.leading_word();
  if (lhs.is_unit())
    throw OrientationError("constant relation asserts a nonzero scalar is 0: " + origin);
  const RatFuncQ lc = body.leading_coeff();
  StarPolynomial rest = body - (lc * StarPolynomial(lhs));
  StarPolynomial rhs = (RatFuncQ(-1) / lc) * rest;
  for (const auto& [w, c] : rhs.terms()) {
    if (!(w < lhs))
      throw OrientationError("relation has a remainder monomial not below its leading one: " + origin);
  }
  return RewriteRule{lhs, std::move(rhs), origin};
}

/// Per-leg start positions of a pattern occurrence inside a word.
struct Occurrence {
  std::array<int, 3> pos = {0, 0, 0};
};

inline bool find_contiguous(const std::vector<Generator>& hay, const std::vector<Generator>& needle,
                            int& pos_out) {
  if (needle.empty()) {
    pos_out = 0;
    return true;
  }
  if (needle.size() > hay.size()) return false;
  for (size_t s = 0; s + needle.size() <= hay.size(); ++s) {
    bool ok = true;
    for (size_t k = 0; k < needle.size(); ++k)
      if (!(hay[s + k] == needle[k])) {
        ok = false;
        break;
      }
    if (ok) {
      pos_out = static_cast<int>(s);
      return true;
    }
  }
  return false;
}

/// Leftmost occurrence of `pattern` as a leg-wise factor of `w`.
inline std::optional<Occurrence> find_occurrence(const Word& w, const Word& pattern) {
  Occurrence occ;
  for (uint8_t leg = 1; leg <= 3; ++leg) {
    std::vector<Generator> ph = w.leg_part(leg);
    std::vector<Generator> pn = pattern.leg_part(leg);
    int pos = 0;
    if (!find_contiguous(ph, pn, pos)) return std::nullopt;
    occ.pos[leg - 1] = pos;
  }
  return occ;
}

/// Replaces the matched occurrence of `pattern` in `w` by the monomial `m`,
/// splicing independently inside each leg block.
inline Word splice(const Word& w, const Occurrence& occ, const Word& pattern, const Word& m) {
  std::vector<Generator> letters;
  for (uint8_t leg = 1; leg <= 3; ++leg) {
    std::vector<Generator> ph = w.leg_part(leg);
    std::vector<Generator> pn = pattern.leg_part(leg);
    std::vector<Generator> mm = m.leg_part(leg);
    const int pos = occ.pos[leg - 1];
    letters.insert(letters.end(), ph.begin(), ph.begin() + pos);
    letters.insert(letters.end(), mm.begin(), mm.end());
    letters.insert(letters.end(), ph.begin() + pos + static_cast<int>(pn.size()), ph.end());
  }
  return Word(std::move(letters));
}

}  // namespace detail

/// An inter-reduced list of rules with a fixed application order and an
/// honest record of how much confluence has been certified.
class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(std::vector<RewriteRule> rules, ConfluenceStatus status)
      : rules_(std::move(rules)), status_(status) {}

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const ConfluenceStatus& status() const { return status_; }
  size_t size() const { return rules_.size(); }

  RewriteSystem with_status(ConfluenceStatus s) const { return RewriteSystem(rules_, s); }

  /// Same rules relabeled onto tensor legs 1..legs. Reduction acts on each
  /// leg block independently, so per-leg confluence carries over.
  RewriteSystem leg_copies(int legs) const {
    std::vector<RewriteRule> out;
    for (int leg = 1; leg <= legs; ++leg) {
      for (const auto& r : rules_) {
        RewriteRule c;
        c.lhs = r.lhs.with_legs_shifted(leg - 1);
        c.rhs = r.rhs.with_legs_shifted(leg - 1);
        c.origin = r.origin + (leg > 1 ? "@leg" + std::to_string(leg) : "");
        out.push_back(std::move(c));
      }
    }
    return RewriteSystem(std::move(out), status_);
  }

 private:
  std::vector<RewriteRule> rules_;
  ConfluenceStatus status_;
};

/// Exhaustive reduction: rewrites the largest reducible monomial with the
/// first applicable rule at its leftmost occurrence until no rule applies.
/// Terminates because every step replaces a monomial by strictly smaller
/// ones.
inline StarPolynomial normal_form(const StarPolynomial& p, const RewriteSystem& S) {
  StarPolynomial work = p;
  std::set<Word> irreducible;
  long long steps = 0;
  const long long step_cap = 50'000'000;
  bool progress = true;
  while (progress) {
    progress = false;
    const auto& terms = work.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const Word w = it->first;
      if (irreducible.count(w)) continue;
      bool rewritten = false;
      for (const auto& rule : S.rules()) {
        auto occ = detail::find_occurrence(w, rule.lhs);
        if (!occ) continue;
        const RatFuncQ c = it->second;
        StarPolynomial replacement;
        for (const auto& [m, mc] : rule.rhs.terms())
          replacement.add_term(detail::splice(w, *occ, rule.lhs, m), mc);
        work.add_term(w, -c);
        work += c * replacement;
        rewritten = true;
        break;
      }
      if (rewritten) {
        progress = true;
        if (++steps > step_cap) throw Error("normal_form exceeded the step cap (termination guard)");
        break;
      }
      irreducible.insert(w);
    }
  }
  return work;
}

/// Sound one-sided ideal membership: true certifies that p lies in the
/// two-sided *-ideal of the oriented relations; false proves nothing unless
/// the system's confluence covers deg(p).
inline bool reduces_to_zero(const StarPolynomial& p, const RewriteSystem& S) {
  return normal_form(p, S).is_zero();
}

namespace detail {

/// Inter-reduction: no rule's defining polynomial may be reducible by the
/// others. Rules that reduce away are dropped; changed ones are re-oriented.
inline std::vector<RewriteRule> inter_reduce(std::vector<RewriteRule> rules) {
  bool changed = true;
  int guard = 0;
  while (changed) {
    changed = false;
    if (++guard > 10000) throw Error("inter-reduction failed to stabilize");
    for (size_t i = 0; i < rules.size(); ++i) {
      std::vector<RewriteRule> others;
      others.reserve(rules.size() - 1);
      for (size_t k = 0; k < rules.size(); ++k)
        if (k != i) others.push_back(rules[k]);
      RewriteSystem rest(std::move(others), ConfluenceStatus::unknown());
      StarPolynomial body = StarPolynomial(rules[i].lhs) - rules[i].rhs;
      StarPolynomial nf = normal_form(body, rest);
      if (nf == body) continue;
      std::string origin = rules[i].origin;
      rules.erase(rules.begin() + static_cast<long>(i));
      if (!nf.is_zero()) rules.push_back(make_rule(nf, origin));
      changed = true;
      break;
    }
  }
  return rules;
}

}  // namespace detail

/// Orients every algebraic relation into a rule (largest monomial to the
/// left) and inter-reduces the result. Norm-bound relations carry no
/// polynomial content and are skipped.
inline RewriteSystem orient(const std::vector<Relation>& relations) {
  std::vector<RewriteRule> rules;
  for (const auto& rel : relations) {
    if (rel.kind != RelationKind::algebraic) continue;
    rules.push_back(detail::make_rule(rel.body, rel.label));
  }
  rules = detail::inter_reduce(std::move(rules));
  return RewriteSystem(std::move(rules), ConfluenceStatus::unknown());
}

inline RewriteSystem orient(const Presentation& pres) { return orient(pres.relations); }

struct CompletionReport {
  int new_rules_added = 0;
  std::vector<std::string> unresolved_critical_pairs;  // beyond degree or budget
  int degree_bound = 0;
};

namespace detail {

/// Enumerates the proper overlaps of two rule lhs words (a nonempty proper
/// suffix of lhs1 equal to a prefix of lhs2) and hands each superposition's
/// s-polynomial to the callback together with its degree.
template <class Fn>
inline void for_each_overlap(const RewriteRule& r1, const RewriteRule& r2, Fn&& fn) {
  const auto& l1 = r1.lhs.letters();
  const auto& l2 = r2.lhs.letters();
  for (size_t ov = 1; ov < l1.size() && ov < l2.size(); ++ov) {
    bool match = true;
    for (size_t t = 0; t < ov; ++t)
      if (!(l1[l1.size() - ov + t] == l2[t])) {
        match = false;
        break;
      }
    if (!match) continue;
    const int super_degree = static_cast<int>(l1.size() + l2.size() - ov);
    Word head(std::vector<Generator>(l1.begin(), l1.end() - static_cast<long>(ov)));
    Word tail(std::vector<Generator>(l2.begin() + static_cast<long>(ov), l2.end()));
    // The superposition head.lhs2 = lhs1.tail reduces two ways; their
    // difference lies in the ideal.
    StarPolynomial spoly = r1.rhs * StarPolynomial(tail) - StarPolynomial(head) * r2.rhs;
    fn(super_degree, std::move(spoly));
  }
}

}  // namespace detail

/// Bounded completion: resolves overlap critical pairs of superposition
/// degree <= degree_bound, adding oriented differences as rules until
/// exhaustion or the rule budget. Every added rule is a difference of two
/// reductions of one word, hence an element of the same ideal. The final
/// status comes from a verify-only sweep over the inter-reduced system.
inline std::pair<RewriteSystem, CompletionReport> complete_bounded(const RewriteSystem& S,
                                                                   int degree_bound,
                                                                   int max_rules) {
  if (degree_bound < 2) throw Error("complete_bounded requires degree_bound >= 2");
  CompletionReport report;
  report.degree_bound = degree_bound;
  std::vector<RewriteRule> rules = S.rules();
  bool budget_hit = false;
  bool unorientable = false;

  int rounds = 0;
  while (true) {
    if (++rounds > 50) break;  // oscillation guard; status stays partial
    // Saturation: process all ordered pairs, re-enqueueing when rules grow.
    std::deque<std::pair<size_t, size_t>> queue;
    for (size_t i = 0; i < rules.size(); ++i)
      for (size_t k = 0; k < rules.size(); ++k) queue.emplace_back(i, k);
    while (!queue.empty() && !budget_hit) {
      auto [i, k] = queue.front();
      queue.pop_front();
      // Copies: the callback below may grow `rules` and reallocate.
      const RewriteRule r1 = rules[i];
      const RewriteRule r2 = rules[k];
      detail::for_each_overlap(r1, r2, [&](int deg, StarPolynomial spoly) {
        if (deg > degree_bound || budget_hit) return;
        RewriteSystem current(rules, ConfluenceStatus::unknown());
        StarPolynomial nf = normal_form(spoly, current);
        if (nf.is_zero()) return;
        if (report.new_rules_added >= max_rules) {
          budget_hit = true;
          return;
        }
        try {
          rules.push_back(detail::make_rule(nf, "cp(" + r1.origin + "," + r2.origin + ")"));
          ++report.new_rules_added;
          const size_t fresh = rules.size() - 1;
          for (size_t t = 0; t < rules.size(); ++t) {
            queue.emplace_back(fresh, t);
            if (t != fresh) queue.emplace_back(t, fresh);
          }
        } catch (const OrientationError&) {
          unorientable = true;
        }
      });
    }
    // Inter-reduce; if that changed the rule set, saturate again.
    std::vector<RewriteRule> reduced = detail::inter_reduce(rules);
    bool same = reduced.size() == rules.size();
    if (same) {
      for (size_t t = 0; t < rules.size(); ++t)
        if (!(reduced[t].lhs == rules[t].lhs) || reduced[t].rhs != rules[t].rhs) {
          same = false;
          break;
        }
    }
    rules = std::move(reduced);
    if (same || budget_hit) break;
  }

  // Verify-only sweep on the final system: status and leftover pairs.
  bool all_resolved = !budget_hit && !unorientable;
  RewriteSystem final_system(rules, ConfluenceStatus::unknown());
  for (size_t i = 0; i < rules.size(); ++i)
    for (size_t k = 0; k < rules.size(); ++k)
      detail::for_each_overlap(rules[i], rules[k], [&](int deg, StarPolynomial spoly) {
        if (deg > degree_bound) {
          report.unresolved_critical_pairs.push_back(rules[i].origin + " | " + rules[k].origin +
                                                     " (degree " + std::to_string(deg) + ")");
          return;
        }
        if (!normal_form(spoly, final_system).is_zero()) {
          all_resolved = false;
          report.unresolved_critical_pairs.push_back(rules[i].origin + " | " + rules[k].origin +
                                                     " (unjoinable at budget)");
        }
      });

  ConfluenceStatus status = all_resolved ? ConfluenceStatus::confluent(degree_bound)
                                         : ConfluenceStatus::partial(degree_bound);
  return {RewriteSystem(std::move(rules), status), report};
}

/// A verified expression of a target in the Q(q)-span of spanner
/// polynomials modulo the rewrite system: sparse coefficient list indexed
/// into the spanner vector.
struct Certificate {
  std::vector<std::pair<size_t, RatFuncQ>> coeffs;
};

/// Searches for coefficients expressing target in the span of spanners
/// modulo the ideal, by exact Gaussian elimination on normal-form
/// coordinates restricted to monomials of degree <= degree_bound. A found
/// solution is symbolically re-verified against the original spanners;
/// std::nullopt (not found at this bound) is never a disproof.
inline std::optional<Certificate> span_membership(const StarPolynomial& target,
                                                  const std::vector<StarPolynomial>& spanners,
                                                  int degree_bound, const RewriteSystem& S) {
  StarPolynomial t_nf = normal_form(target, S);
  std::vector<StarPolynomial> s_nf;
  s_nf.reserve(spanners.size());
  for (const auto& s : spanners) s_nf.push_back(normal_form(s, S));

  // Row space: every monomial of degree <= degree_bound seen in any NF.
  std::set<Word> row_words;
  for (const auto& [w, c] : t_nf.terms())
    if (w.degree() <= degree_bound) row_words.insert(w);
  for (const auto& s : s_nf)
    for (const auto& [w, c] : s.terms())
      if (w.degree() <= degree_bound) row_words.insert(w);

  std::vector<Word> rows(row_words.begin(), row_words.end());
  const size_t nr = rows.size(), nc = spanners.size();
  std::vector<std::vector<RatFuncQ>> m(nr, std::vector<RatFuncQ>(nc + 1, RatFuncQ(0)));
  for (size_t r = 0; r < nr; ++r) {
    for (size_t c = 0; c < nc; ++c) m[r][c] = s_nf[c].coeff(rows[r]);
    m[r][nc] = t_nf.coeff(rows[r]);
  }

  // Exact Gauss-Jordan over Q(q).
  std::vector<long> pivot_of_col(nc, -1);
  size_t rank_row = 0;
  for (size_t c = 0; c < nc && rank_row < nr; ++c) {
    size_t pr = rank_row;
    while (pr < nr && m[pr][c].is_zero()) ++pr;
    if (pr == nr) continue;
    std::swap(m[pr], m[rank_row]);
    RatFuncQ inv = RatFuncQ(1) / m[rank_row][c];
    for (size_t cc = c; cc <= nc; ++cc) m[rank_row][cc] *= inv;
    for (size_t r = 0; r < nr; ++r) {
      if (r == rank_row || m[r][c].is_zero()) continue;
      RatFuncQ f = m[r][c];
      for (size_t cc = c; cc <= nc; ++cc) m[r][cc] -= f * m[rank_row][cc];
    }
    pivot_of_col[c] = static_cast<long>(rank_row);
    ++rank_row;
  }
  for (size_t r = rank_row; r < nr; ++r)
    if (!m[r][nc].is_zero()) return std::nullopt;  // inconsistent at this bound

  Certificate cert;
  for (size_t c = 0; c < nc; ++c) {
    if (pivot_of_col[c] < 0) continue;  // free variable: set to 0
    const RatFuncQ& v = m[static_cast<size_t>(pivot_of_col[c])][nc];
    if (!v.is_zero()) cert.coeffs.emplace_back(c, v);
  }

  // Mandatory verification against the original spanners.
  StarPolynomial diff = target;
  for (const auto& [idx, coeff] : cert.coeffs) diff -= coeff * spanners[idx];
  if (!reduces_to_zero(diff, S)) return std::nullopt;
  return cert;
}

}  // namespace qlim
