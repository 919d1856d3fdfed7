#pragma once

// Concrete representations backing the symbolic engine: classical special
// unitary points at q = 1, diagonal torus characters at arbitrary q, and
// seeded contraction representations for the norm-bounded system. Residual
// checks discharge norm bounds and supply FAIL witnesses where rewriting
// alone cannot refute.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qlim/algebra.hpp"
#include "qlim/errors.hpp"
#include "qlim/presentation.hpp"

namespace qlim {

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// A point of SU(n): unitary with determinant 1, both to 1e-12.
struct ClassicalPoint {
  CMatrix g;
  int n() const { return static_cast<int>(g.rows()); }
};

/// Largest singular value; the operator norm used for all residuals.
inline double operator_norm(const CMatrix& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

/// Seeded Gaussian matrix, orthonormalized by Householder QR, determinant
/// phase pushed into the first column. Validity (not distribution) is the
/// contract.
inline ClassicalPoint random_special_unitary(int n, uint64_t seed) {
  if (n < 1) throw IndexError("random_special_unitary: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(rng), dist(rng));
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    Complex det = q.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-8) continue;  // degenerate draw
    q.col(0) /= det;
    return {q};
  }
  throw Error("random_special_unitary: no valid draw (seed " + std::to_string(seed) + ")");
}

/// The cyclic shift with determinant corrected to +1; the canonical
/// deterministic witness point.
inline ClassicalPoint cyclic_permutation_point(int n) {
  if (n < 1) throw IndexError("cyclic_permutation_point: n must be >= 1");
  CMatrix p = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) p((k + 1) % n, k) = 1.0;
  // A cycle of length n has sign (-1)^(n-1).
  if (n % 2 == 0) p.col(0) *= -1.0;
  return {p};
}

inline ClassicalPoint identity_point(int n) { return {CMatrix::Identity(n, n)}; }

/// diag(g, 1): the block embedding dual to the connecting projection.
inline ClassicalPoint embed_block(const ClassicalPoint& g) {
  const int n = g.n() + 1;
  CMatrix m = CMatrix::Identity(n, n);
  m.topLeftCorner(n - 1, n - 1) = g.g;
  return {m};
}

/// Evaluates a polynomial at classical points, one per tensor leg, with
/// u(i,j) |-> g_ij and q |-> 1. A *-homomorphism into the complex numbers.
inline Complex classical_eval(const std::vector<ClassicalPoint>& pts, const StarPolynomial& p) {
  Complex total = 0.0;
  for (const auto& [w, c] : p.terms()) {
    Rational coeff = c.eval_exact(1);  // throws EvaluationPole on a pole at q=1
    Complex prod = 1.0;
    for (const auto& letter : w.letters()) {
      if (letter.leg < 1 || letter.leg > pts.size())
        throw IndexError("classical_eval: no point supplied for leg " + std::to_string(letter.leg));
      const CMatrix& g = pts[letter.leg - 1].g;
      if (letter.i < 1 || letter.i > g.rows() || letter.j < 1 || letter.j > g.cols())
        throw IndexError("classical_eval: generator index exceeds the point size");
      Complex e = g(letter.i - 1, letter.j - 1);
      if (letter.starred) e = std::conj(e);
      prod *= e;
    }
    total += static_cast<double>(coeff) * prod;
  }
  return total;
}

inline Complex classical_eval(const ClassicalPoint& pt, const StarPolynomial& p) {
  return classical_eval(std::vector<ClassicalPoint>{pt}, p);
}

/// An assignment of complex matrices (1x1 for characters and classical
/// points) to the generators of a presentation, reproducible from its seed.
struct MatrixRep {
  std::shared_ptr<const Presentation> pres;
  int dim = 1;
  std::map<Generator, CMatrix> images;  // unstarred keys
  double q_value = 1.0;
  uint64_t seed = 0;

  const CMatrix& image(const Generator& g) const {
    auto it = images.find(g.unstarred().with_leg(1));
    if (it == images.end())
      throw MorphismDomainError("representation has no image for " + g.to_string());
    return it->second;
  }

  CMatrix eval_word(const Word& w) const {
    CMatrix acc = CMatrix::Identity(dim, dim);
    for (const auto& letter : w.letters()) {
      if (letter.leg != 1 && dim != 1)
        throw ContextMismatch("matrix representations evaluate plain (leg-1) words only");
      const CMatrix& img = image(letter);
      acc = acc * (letter.starred ? CMatrix(img.adjoint()) : img);
    }
    return acc;
  }

  CMatrix eval(const StarPolynomial& p) const {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (const auto& [w, c] : p.terms()) acc += c.eval(q_value) * eval_word(w);
    return acc;
  }
};

/// Scalar representation induced by a classical point: u(i,j) |-> g_ij at
/// q = 1.
inline MatrixRep classical_point_rep(const ClassicalPoint& pt,
                                     std::shared_ptr<const Presentation> pres) {
  MatrixRep rep;
  rep.pres = std::move(pres);
  rep.dim = 1;
  rep.q_value = 1.0;
  const int n = pt.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CMatrix m(1, 1);
      m(0, 0) = pt.g(i - 1, j - 1);
      Generator g = rep.pres->family == Family::w ? make_w(n, i, j) : make_u(n, i, j);
      rep.images[g] = m;
    }
  return rep;
}

/// Diagonal character u(i,j) |-> delta_ij t_i. Valid for every q when the
/// phases are unimodular with product 1.
inline MatrixRep torus_rep_build(int n, const std::vector<Complex>& phases, double q_value,
                                 std::shared_ptr<const Presentation> pres = nullptr) {
  if (n < 1) throw IndexError("torus_rep_build: n must be >= 1");
  if (static_cast<int>(phases.size()) != n)
    throw NotARepresentation("torus_rep_build: expected " + std::to_string(n) + " phases");
  Complex prod = 1.0;
  for (const auto& t : phases) {
    if (std::abs(std::abs(t) - 1.0) > 1e-9)
      throw NotARepresentation("torus phase is not unimodular");
    prod *= t;
  }
  if (std::abs(prod - Complex(1.0)) > 1e-9)
    throw NotARepresentation("torus phases do not multiply to 1 (determinant relation fails)");
  MatrixRep rep;
  rep.pres = pres ? std::move(pres) : std::make_shared<Presentation>(build_suq(n));
  rep.dim = 1;
  rep.q_value = q_value;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CMatrix m(1, 1);
      m(0, 0) = (i == j) ? phases[static_cast<size_t>(i - 1)] : Complex(0.0);
      rep.images[make_u(n, i, j)] = m;
    }
  return rep;
}

/// Seeded random contractions: each generator image is rescaled so its
/// largest singular value sits strictly below 1.
inline MatrixRep contraction_rep_build(int n, int dim, uint64_t seed,
                                       std::shared_ptr<const Presentation> pres = nullptr) {
  if (n < 1 || dim < 1) throw IndexError("contraction_rep_build: n and dim must be >= 1");
  MatrixRep rep;
  rep.pres = pres ? std::move(pres) : std::make_shared<Presentation>(build_contraction(n));
  rep.dim = dim;
  rep.q_value = 1.0;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CMatrix m(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) m(a, b) = Complex(dist(rng), dist(rng));
      const double s = operator_norm(m);
      if (s > 0) m *= (1.0 - 1e-12) / s;
      rep.images[make_w(n, i, j)] = m;
    }
  return rep;
}

struct ResidualEntry {
  std::string label;
  double residual = 0.0;  // algebraic: operator norm; bound: sigma_max - bound
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  double max_residual = 0.0;
  bool pass = true;
};

/// Evaluates every relation of the underlying presentation in the
/// representation. PASS iff every residual is <= tol. Norm-bound residuals
/// may be negative; the maximum is over what was actually measured.
inline ResidualReport rep_residual(const MatrixRep& rep, double tol) {
  if (!rep.pres) throw NotARepresentation("representation carries no presentation");
  ResidualReport out;
  bool first = true;
  for (const auto& rel : rep.pres->relations) {
    ResidualEntry e;
    e.label = rel.label;
    if (rel.kind == RelationKind::algebraic) {
      e.residual = operator_norm(rep.eval(rel.body));
    } else {
      e.residual = operator_norm(rep.image(rel.subject)) - static_cast<double>(rel.bound);
    }
    out.max_residual = first ? e.residual : std::max(out.max_residual, e.residual);
    first = false;
    if (e.residual > tol) out.pass = false;
    out.entries.push_back(std::move(e));
  }
  return out;
}

/// Residual of the comultiplication against actual matrix multiplication:
/// max over (i,j) of both the direct sum |sum_k g_ik h_kj - (gh)_ij| and the
/// engine route through Delta.
inline double delta_pointwise_check(const ClassicalPoint& g, const ClassicalPoint& h, int n,
                                    const std::map<Generator, StarPolynomial>& delta_images) {
  if (g.n() != n || h.n() != n) throw IndexError("delta_pointwise_check: size mismatch");
  CMatrix gh = g.g * h.g;
  double max_res = 0.0;
  std::vector<ClassicalPoint> pair{g, h};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Complex direct = 0.0;
      for (int k = 1; k <= n; ++k) direct += g.g(i - 1, k - 1) * h.g(k - 1, j - 1);
      max_res = std::max(max_res, std::abs(direct - gh(i - 1, j - 1)));
      const auto it = delta_images.find(make_u(n, i, j));
      if (it == delta_images.end()) throw MorphismDomainError("delta image missing");
      Complex via_delta = classical_eval(pair, it->second);
      max_res = std::max(max_res, std::abs(via_delta - gh(i - 1, j - 1)));
    }
  return max_res;
}

/// Residual of theta against its dual block embedding: evaluating u^n(i,j)
/// at diag(g,1) must agree with evaluating theta_n(u^n(i,j)) at g.
inline double theta_embedding_check(const ClassicalPoint& g,
                                    const std::map<Generator, StarPolynomial>& theta_images) {
  const int n = g.n() + 1;
  ClassicalPoint big = embed_block(g);
  double max_res = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const auto it = theta_images.find(make_u(n, i, j));
      if (it == theta_images.end()) throw MorphismDomainError("theta image missing");
      Complex lhs = classical_eval(big, StarPolynomial(make_u(n, i, j)));
      Complex rhs = classical_eval(g, it->second);
      max_res = std::max(max_res, std::abs(lhs - rhs));
    }
  return max_res;
}

}  // namespace qlim
