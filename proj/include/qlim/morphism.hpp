#pragma once

// Generator-defined *-homomorphisms between presented algebras and their
// tensor powers: the comultiplication, the connecting projections, naive
// sections, the contraction-to-unitary surjection, and the checks built on
// them (well-definedness modulo relations, the commuting square, and
// coassociativity, plus finite-degree density certificates).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/presentation.hpp"
#include "qlim/rewrite.hpp"

namespace qlim {

/// A map defined on unstarred source generators and extended to the whole
/// free *-algebra multiplicatively, with image(g*) = image(g)* forced.
struct GenMorphism {
  std::string name;
  Family src_family = Family::u;
  int src_level = 1;
  int src_legs = 1;
  Family tgt_family = Family::u;
  int tgt_level = 1;
  int tgt_legs = 1;
  std::map<Generator, StarPolynomial> images;
  std::shared_ptr<const Presentation> source_pres;  // set when relations are needed

  const StarPolynomial& image(const Generator& g) const {
    auto it = images.find(g.unstarred());
    if (it == images.end())
      throw MorphismDomainError(name + ": no image for generator " + g.to_string());
    return it->second;
  }

  StarPolynomial apply(const StarPolynomial& p) const {
    StarPolynomial out;
    for (const auto& [w, c] : p.terms()) {
      StarPolynomial acc = StarPolynomial::one();
      for (const auto& letter : w.letters()) {
        const StarPolynomial& img = image(letter);
        acc = acc * (letter.starred ? img.star() : img);
        if (acc.is_zero()) break;
      }
      out += c * acc;
    }
    return out;
  }

  GenMorphism with_source(std::shared_ptr<const Presentation> pres) const {
    GenMorphism m = *this;
    m.source_pres = std::move(pres);
    return m;
  }
};

inline StarPolynomial apply(const GenMorphism& m, const StarPolynomial& p) { return m.apply(p); }

namespace detail {

inline Generator fam_gen(Family fam, int level, int i, int j) {
  switch (fam) {
    case Family::u: return make_u(level, i, j);
    case Family::w: return make_w(level, i, j);
    case Family::x: return make_x();
  }
  throw Error("unknown family");
}

}  // namespace detail

/// Delta(u_ij) = sum_k u_ik (x) u_kj on the level-n unitary generators.
inline GenMorphism comultiplication(int n) {
  if (n < 1) throw IndexError("comultiplication: level must be >= 1");
  GenMorphism m;
  m.name = "delta_" + std::to_string(n);
  m.src_family = m.tgt_family = Family::u;
  m.src_level = m.tgt_level = n;
  m.src_legs = 1;
  m.tgt_legs = 2;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      StarPolynomial img;
      for (int k = 1; k <= n; ++k)
        img += StarPolynomial(Word({make_u(n, i, k, false, 1), make_u(n, k, j, false, 2)}));
      m.images[make_u(n, i, j)] = img;
    }
  return m;
}

/// theta_n: level n -> n-1, collapsing the last row and column to delta_ij.
inline GenMorphism projection_theta(int n, Family fam = Family::u) {
  if (n < 2) throw IndexError("projection_theta: level must be >= 2");
  GenMorphism m;
  m.name = "theta_" + std::to_string(n);
  m.src_family = m.tgt_family = fam;
  m.src_level = n;
  m.tgt_level = n - 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      StarPolynomial img;
      if (i <= n - 1 && j <= n - 1)
        img = StarPolynomial(detail::fam_gen(fam, n - 1, i, j));
      else if (i == j)
        img = StarPolynomial::one();
      // else: delta_ij 1 = 0, the zero polynomial
      m.images[detail::fam_gen(fam, n, i, j)] = img;
    }
  return m;
}

/// The index-preserving section s_{n-1}: level n-1 -> n.
inline GenMorphism section_naive(int n, Family fam = Family::u) {
  if (n < 2) throw IndexError("section_naive: level must be >= 2");
  GenMorphism m;
  m.name = "s_" + std::to_string(n - 1);
  m.src_family = m.tgt_family = fam;
  m.src_level = n - 1;
  m.tgt_level = n;
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      m.images[detail::fam_gen(fam, n - 1, i, j)] =
          StarPolynomial(detail::fam_gen(fam, n, i, j));
  return m;
}

/// pi_n: the contraction generators onto the unitary ones, w_ij -> u_ij.
inline GenMorphism pi(int n) {
  if (n < 1) throw IndexError("pi: level must be >= 1");
  GenMorphism m;
  m.name = "pi_" + std::to_string(n);
  m.src_family = Family::w;
  m.tgt_family = Family::u;
  m.src_level = m.tgt_level = n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m.images[make_w(n, i, j)] = StarPolynomial(make_u(n, i, j));
  return m;
}

inline GenMorphism identity_morphism(Family fam, int level, int count_from_pres = 0) {
  GenMorphism m;
  m.name = "id_" + std::to_string(level);
  m.src_family = m.tgt_family = fam;
  m.src_level = m.tgt_level = level;
  const int n = count_from_pres > 0 ? count_from_pres : level;
  if (fam == Family::x) {
    m.images[make_x()] = StarPolynomial(make_x());
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        m.images[detail::fam_gen(fam, level, i, j)] =
            StarPolynomial(detail::fam_gen(fam, level, i, j));
  }
  return m;
}

/// m (x) m acting legwise on a tensor square.
inline GenMorphism tensor_square_of(const GenMorphism& m) {
  GenMorphism t;
  t.name = m.name + "(x)" + m.name;
  t.src_family = m.src_family;
  t.tgt_family = m.tgt_family;
  t.src_level = m.src_level;
  t.tgt_level = m.tgt_level;
  t.src_legs = 2;
  t.tgt_legs = 2;
  for (const auto& [g, img] : m.images) {
    t.images[g] = img;
    t.images[g.with_leg(2)] = img.with_legs_shifted(1);
  }
  return t;
}

/// (Delta (x) id): tensor square -> tensor cube at level n.
inline GenMorphism delta_tensor_id(int n) {
  GenMorphism d = comultiplication(n);
  GenMorphism m;
  m.name = "(delta(x)id)_" + std::to_string(n);
  m.src_family = m.tgt_family = Family::u;
  m.src_level = m.tgt_level = n;
  m.src_legs = 2;
  m.tgt_legs = 3;
  for (const auto& [g, img] : d.images) {
    m.images[g] = img;                                      // legs (1,2)
    m.images[g.with_leg(2)] = StarPolynomial(g.with_leg(3));
  }
  return m;
}

/// (id (x) Delta): tensor square -> tensor cube at level n.
inline GenMorphism id_tensor_delta(int n) {
  GenMorphism d = comultiplication(n);
  GenMorphism m;
  m.name = "(id(x)delta)_" + std::to_string(n);
  m.src_family = m.tgt_family = Family::u;
  m.src_level = m.tgt_level = n;
  m.src_legs = 2;
  m.tgt_legs = 3;
  for (const auto& [g, img] : d.images) {
    m.images[g] = StarPolynomial(g);                        // leg 1 fixed
    m.images[g.with_leg(2)] = img.with_legs_shifted(1);     // legs (2,3)
  }
  return m;
}

/// outer after inner; the metadata of inner's target must match outer's
/// source.
inline GenMorphism compose(const GenMorphism& outer, const GenMorphism& inner) {
  if (inner.tgt_family != outer.src_family || inner.tgt_level != outer.src_level ||
      inner.tgt_legs != outer.src_legs)
    throw MorphismDomainError("compose: " + outer.name + " after " + inner.name +
                              " has mismatched levels");
  GenMorphism m;
  m.name = outer.name + "o" + inner.name;
  m.src_family = inner.src_family;
  m.src_level = inner.src_level;
  m.src_legs = inner.src_legs;
  m.tgt_family = outer.tgt_family;
  m.tgt_level = outer.tgt_level;
  m.tgt_legs = outer.tgt_legs;
  for (const auto& [g, img] : inner.images) m.images[g] = outer.apply(img);
  m.source_pres = inner.source_pres;
  return m;
}

// ---------------------------------------------------------------------------
// Verification operations.

struct RelationVerdict {
  std::string label;
  bool ok = false;
  std::string residual_nf;  // printed form of the nonzero normal form
};

struct WellDefinedReport {
  std::string morphism;
  bool pass = true;  // over the algebraic relations
  std::vector<RelationVerdict> relations;
  std::vector<std::string> deferred_norm_bounds;
  std::string confluence;
};

/// For each algebraic source relation f, checks that apply(m, f) reduces to
/// zero in the target system. Norm bounds have no symbolic content and are
/// deferred to the numeric oracles. The verdict is relative to the target
/// system's confluence status, which the report embeds.
inline WellDefinedReport well_defined(const GenMorphism& m, const RewriteSystem& S_target) {
  if (!m.source_pres)
    throw MorphismDomainError(m.name + ": well_defined needs the source presentation");
  WellDefinedReport rep;
  rep.morphism = m.name;
  rep.confluence = S_target.status().to_string();
  for (const auto& rel : m.source_pres->relations) {
    if (rel.kind == RelationKind::norm_bound) {
      rep.deferred_norm_bounds.push_back(rel.label);
      continue;
    }
    StarPolynomial nf = normal_form(m.apply(rel.body), S_target);
    RelationVerdict v;
    v.label = rel.label;
    v.ok = nf.is_zero();
    if (!v.ok) {
      v.residual_nf = nf.to_string();
      rep.pass = false;
    }
    rep.relations.push_back(std::move(v));
  }
  return rep;
}

struct GeneratorCheck {
  Generator g;
  bool ok = false;
  std::string lhs, rhs;
};

struct DiagramReport {
  int n = 0;
  bool pass = true;
  std::vector<GeneratorCheck> entries;
};

/// The commuting square (theta (x) theta) o Delta_n = Delta_{n-1} o theta_n,
/// checked as exact free-algebra equality on every level-n generator.
inline DiagramReport diagram_check(int n) {
  if (n < 2) throw IndexError("diagram_check: level must be >= 2");
  DiagramReport rep;
  rep.n = n;
  GenMorphism delta_n = comultiplication(n);
  GenMorphism delta_prev = comultiplication(n - 1);
  GenMorphism theta = projection_theta(n);
  GenMorphism theta2 = tensor_square_of(theta);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Generator g = make_u(n, i, j);
      StarPolynomial lhs = theta2.apply(delta_n.apply(StarPolynomial(g)));
      StarPolynomial rhs = delta_prev.apply(theta.apply(StarPolynomial(g)));
      GeneratorCheck e;
      e.g = g;
      e.ok = lhs == rhs;
      if (!e.ok) {
        e.lhs = lhs.to_string();
        e.rhs = rhs.to_string();
        rep.pass = false;
      }
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

struct CoassocReport {
  int n = 0;
  bool pass = true;
  std::vector<GeneratorCheck> entries;
};

/// (Delta (x) id) Delta = (id (x) Delta) Delta on every generator, both
/// sides also matched against the explicit three-leg sum
/// sum_{k,l} u_ik (x) u_kl (x) u_lj.
inline CoassocReport coassociativity_check(int n) {
  if (n < 1) throw IndexError("coassociativity_check: level must be >= 1");
  CoassocReport rep;
  rep.n = n;
  GenMorphism delta = comultiplication(n);
  GenMorphism left = delta_tensor_id(n);
  GenMorphism right = id_tensor_delta(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Generator g = make_u(n, i, j);
      StarPolynomial once = delta.apply(StarPolynomial(g));
      StarPolynomial lhs = left.apply(once);
      StarPolynomial rhs = right.apply(once);
      StarPolynomial expected;
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
          expected += StarPolynomial(Word(
              {make_u(n, i, k, false, 1), make_u(n, k, l, false, 2), make_u(n, l, j, false, 3)}));
      GeneratorCheck e;
      e.g = g;
      e.ok = (lhs == rhs) && (lhs == expected);
      if (!e.ok) {
        e.lhs = lhs.to_string();
        e.rhs = rhs.to_string();
        rep.pass = false;
      }
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

enum class DensitySide { left, right };

inline std::string to_string(DensitySide s) { return s == DensitySide::left ? "left" : "right"; }

struct DensityCertEntry {
  Generator target;
  // (a, b, coefficient): the certified combination sum c * Delta(a)(b (x) 1)
  // resp. sum c * Delta(a)(1 (x) b).
  std::vector<std::tuple<Word, Word, RatFuncQ>> combination;
};

struct DensityReport {
  int n = 0;
  DensitySide side = DensitySide::right;
  int degree_bound = 0;
  bool found = false;
  int found_at_degree = -1;
  bool budget_exhausted = false;
  std::vector<DensityCertEntry> certificates;
  std::string confluence;
};

namespace detail {

inline std::vector<Word> words_up_to_degree(const std::vector<Generator>& letters, int d) {
  std::vector<Word> out{Word::unit()};
  std::vector<std::vector<Generator>> frontier{{}};
  for (int len = 1; len <= d; ++len) {
    std::vector<std::vector<Generator>> next;
    for (const auto& base : frontier)
      for (const auto& g : letters) {
        auto seq = base;
        seq.push_back(g);
        out.push_back(Word(seq));
        next.push_back(std::move(seq));
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Searches degrees 1..degree_bound for exact certificates writing each
/// elementary tensor u_ij (x) 1 (side right) or 1 (x) u_ij (side left) as a
/// Q(q)-combination of Delta(a)(1 (x) b) resp. Delta(a)(b (x) 1) over
/// monomials a, b of the given degree, modulo the tensor-square ideal. Every
/// certificate is re-verified symbolically; absence is never a disproof.
inline DensityReport density_certificate(int n, DensitySide side, int degree_bound,
                                         const RewriteSystem& level_system,
                                         size_t spanner_budget = 4000) {
  if (n < 1) throw IndexError("density_certificate: level must be >= 1");
  DensityReport rep;
  rep.n = n;
  rep.side = side;
  rep.degree_bound = degree_bound;
  RewriteSystem tensor_system = level_system.leg_copies(2);
  rep.confluence = tensor_system.status().to_string();

  std::vector<Generator> letters;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      letters.push_back(make_u(n, i, j));
      letters.push_back(make_u(n, i, j, true));
    }
  GenMorphism delta = comultiplication(n);

  for (int d = 1; d <= degree_bound; ++d) {
    std::vector<Word> monos = detail::words_up_to_degree(letters, d);
    if (monos.size() * monos.size() > spanner_budget) {
      rep.budget_exhausted = true;
      break;
    }
    // Spanners, deduplicated by normal form.
    std::vector<StarPolynomial> spanners;
    std::vector<std::pair<Word, Word>> spanner_ab;
    std::set<std::string> seen;
    for (const auto& a : monos)
      for (const auto& b : monos) {
        StarPolynomial bp(b);
        if (side == DensitySide::right) bp = bp.with_legs_shifted(1);
        StarPolynomial s = delta.apply(StarPolynomial(a)) * bp;
        StarPolynomial nf = normal_form(s, tensor_system);
        if (nf.is_zero()) continue;
        std::string key = nf.to_string();
        if (!seen.insert(key).second) continue;
        spanners.push_back(std::move(s));
        spanner_ab.emplace_back(a, b);
      }

    bool all_found = true;
    std::vector<DensityCertEntry> certs;
    for (int i = 1; i <= n && all_found; ++i)
      for (int j = 1; j <= n && all_found; ++j) {
        Generator g = make_u(n, i, j);
        StarPolynomial target(side == DensitySide::right
                                  ? Word({g})
                                  : Word({g.with_leg(2)}));
        auto cert = span_membership(target, spanners, 3 * d + 2, tensor_system);
        if (!cert) {
          all_found = false;
          break;
        }
        DensityCertEntry entry;
        entry.target = g;
        for (const auto& [idx, coeff] : cert->coeffs)
          entry.combination.emplace_back(spanner_ab[idx].first, spanner_ab[idx].second, coeff);
        certs.push_back(std::move(entry));
      }
    if (all_found) {
      rep.found = true;
      rep.found_at_degree = d;
      rep.certificates = std::move(certs);
      return rep;
    }
  }
  return rep;
}

}  // namespace qlim
