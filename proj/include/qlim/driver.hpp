#pragma once

// Command implementations behind the CLI: each subcommand turns a parsed
// configuration into CheckReport lines on the output stream and a
// deterministic exit code (0 all PASS, 1 any FAIL, 2 usage error, 3 no FAIL
// but some INCONCLUSIVE).

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qlim/errors.hpp"
#include "qlim/morphism.hpp"
#include "qlim/numeric.hpp"
#include "qlim/parse.hpp"
#include "qlim/presentation.hpp"
#include "qlim/prolimit.hpp"
#include "qlim/report.hpp"
#include "qlim/rewrite.hpp"

namespace qlim::cli {

struct Config {
  std::string preset = "suq";  // suq | contraction | circle
  int n = 2;                   // -n / -N
  int degree = -1;             // -d; resolved by degree_or_default()
  int max_rules = 200;         // -m
  uint64_t seed = 42;
  double tol = 1e-9;
  double tol_reject = 1e-6;
  ReportMode mode = ReportMode::text;
  DetTuples det = DetTuples::all;
  std::string side = "right";
  std::string sections;        // "naive" enables section-dependent checks
  std::string morphism = "delta";
  std::string expr;
  int samples = 100;
  std::string dims = "1,2,4";
  int words = 20;

  int degree_or_default() const { return degree >= 0 ? degree : (n <= 2 ? 4 : 3); }
};

namespace detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void print_header(std::ostream& out, const std::string& command, const Config& c) {
  out << "# qlim " << command << " preset=" << c.preset << " n=" << c.n
      << " d=" << c.degree_or_default() << " m=" << c.max_rules << " seed=" << c.seed
      << " tol=" << qlim::detail::fmt_double(c.tol)
      << " tol_reject=" << qlim::detail::fmt_double(c.tol_reject)
      << " det_tuples=" << (c.det == DetTuples::all ? "all" : "distinct")
      << " order='deglex, row-major, unstarred first, legs ascending'"
      << " report=" << (c.mode == ReportMode::records ? "records" : "text") << "\n";
}

inline InverseSystem make_system(const Config& c, int depth, bool with_sections = false) {
  InverseSystem::Options o;
  o.depth = depth;
  o.completion_degree = c.degree_or_default();
  o.max_rules = c.max_rules;
  o.det_tuples = c.det;
  o.with_sections = with_sections;
  if (c.preset == "suq") return InverseSystem::suq(o);
  if (c.preset == "contraction") return InverseSystem::contraction(o);
  throw Error("preset '" + c.preset + "' has no inverse system");
}

inline Presentation make_presentation(const Config& c) {
  if (c.preset == "suq") return build_suq(c.n, c.det);
  if (c.preset == "contraction") return build_contraction(c.n);
  if (c.preset == "circle") return build_circle();
  throw Error("unknown preset '" + c.preset + "'");
}

inline ParseContext make_parse_context(const Config& c) {
  if (c.preset == "suq") return ParseContext::for_suq(c.n);
  if (c.preset == "contraction") return ParseContext::for_contraction(c.n);
  if (c.preset == "circle") return ParseContext::for_circle();
  throw Error("unknown preset '" + c.preset + "'");
}

/// Orients and boundedly completes the preset's level system. Degrees below
/// 2 skip completion entirely (the oriented system alone, status unknown).
inline RewriteSystem make_level_system(const Config& c) {
  Presentation pres = make_presentation(c);
  RewriteSystem base = orient(pres);
  if (base.size() == 0) return base.with_status(ConfluenceStatus::confluent(c.degree_or_default()));
  if (c.degree_or_default() < 2) return base;
  return complete_bounded(base, c.degree_or_default(), c.max_rules).first;
}

/// Picks the rewrite system matching an expression's tensor legs.
inline RewriteSystem system_for_legs(const RewriteSystem& level, const StarPolynomial& p) {
  int max_leg = 1;
  for (uint8_t l : p.legs()) max_leg = std::max(max_leg, static_cast<int>(l));
  return max_leg == 1 ? level : level.leg_copies(max_leg);
}

inline CheckReport from_welldef(const WellDefinedReport& wd, double ms) {
  CheckReport r;
  r.check = "welldef";
  r.field("morphism", wd.morphism);
  r.status = wd.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  if (!wd.pass) {
    for (const auto& v : wd.relations)
      if (!v.ok) {
        r.witness = v.label + " -> " + v.residual_nf;
        break;
      }
  }
  r.confluence = wd.confluence;
  if (!wd.deferred_norm_bounds.empty())
    r.field("deferred_norm_bounds", std::to_string(wd.deferred_norm_bounds.size()));
  r.runtime_ms = ms;
  return r;
}

inline std::vector<int> parse_dims(const std::string& dims) {
  std::vector<int> out;
  std::string cur;
  for (char ch : dims + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (out.empty()) throw Error("--dims parsed to an empty list");
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual commands. Each returns its reports; rendering and exit codes
// are shared.

inline std::vector<CheckReport> cmd_diagram(const Config& c) {
  detail::Timer t;
  DiagramReport dr = diagram_check(c.n);
  CheckReport r;
  r.check = "diagram";
  r.field("n", std::to_string(c.n));
  r.status = dr.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  if (!dr.pass)
    for (const auto& e : dr.entries)
      if (!e.ok) {
        r.witness = e.g.to_string() + ": " + e.lhs + " != " + e.rhs;
        break;
      }
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_coassoc(const Config& c) {
  detail::Timer t;
  CoassocReport cr = coassociativity_check(c.n);
  CheckReport r;
  r.check = "coassoc";
  r.field("n", std::to_string(c.n));
  r.status = cr.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  if (!cr.pass)
    for (const auto& e : cr.entries)
      if (!e.ok) {
        r.witness = e.g.to_string() + ": " + e.lhs + " != " + e.rhs;
        break;
      }
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_nf(const Config& c) {
  detail::Timer t;
  StarPolynomial p = parse_expression(c.expr, detail::make_parse_context(c));
  RewriteSystem level = detail::make_level_system(c);
  RewriteSystem S = detail::system_for_legs(level, p);
  StarPolynomial nf = normal_form(p, S);
  CheckReport r;
  r.check = "nf";
  r.field("n", std::to_string(c.n));
  r.field("nf", nf.to_string());
  r.status = CheckStatus::PASS;
  r.confluence = S.status().to_string();
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_reduce_zero(const Config& c) {
  detail::Timer t;
  StarPolynomial p = parse_expression(c.expr, detail::make_parse_context(c));
  RewriteSystem level = detail::make_level_system(c);
  RewriteSystem S = detail::system_for_legs(level, p);
  StarPolynomial nf = normal_form(p, S);
  CheckReport r;
  r.check = "reduce_zero";
  r.field("n", std::to_string(c.n));
  if (nf.is_zero()) {
    r.status = CheckStatus::PASS;
  } else {
    // One-sided soundness: a nonzero normal form refutes nothing.
    r.status = CheckStatus::INCONCLUSIVE;
    r.degree_bound = c.degree_or_default();
    r.field("nf", nf.to_string());
  }
  r.confluence = S.status().to_string();
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_complete(const Config& c) {
  detail::Timer t;
  Presentation pres = detail::make_presentation(c);
  RewriteSystem base = orient(pres);
  auto [completed, crep] = complete_bounded(base, c.degree_or_default(), c.max_rules);
  CheckReport r;
  r.check = "complete";
  r.field("n", std::to_string(c.n));
  r.field("rules_before", std::to_string(base.size()));
  r.field("new_rules", std::to_string(crep.new_rules_added));
  r.field("rules_after", std::to_string(completed.size()));
  r.field("unresolved", std::to_string(crep.unresolved_critical_pairs.size()));
  r.status = CheckStatus::PASS;
  r.degree_bound = crep.degree_bound;
  r.confluence = completed.status().to_string();
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_welldef(const Config& c) {
  detail::Timer t;
  std::vector<CheckReport> out;
  if (c.morphism == "delta") {
    Config lc = c;
    lc.preset = "suq";
    auto pres = std::make_shared<const Presentation>(build_suq(c.n, c.det));
    GenMorphism m = comultiplication(c.n).with_source(pres);
    RewriteSystem level = detail::make_level_system(lc);
    out.push_back(detail::from_welldef(well_defined(m, level.leg_copies(2)), t.ms()));
  } else if (c.morphism == "theta") {
    if (c.n < 2) throw Error("theta needs -n >= 2");
    Config lc = c;
    lc.n = c.n - 1;
    auto pres = std::make_shared<const Presentation>(
        c.preset == "contraction" ? build_contraction(c.n) : build_suq(c.n, c.det));
    GenMorphism m =
        projection_theta(c.n, c.preset == "contraction" ? Family::w : Family::u).with_source(pres);
    out.push_back(detail::from_welldef(well_defined(m, detail::make_level_system(lc)), t.ms()));
  } else if (c.morphism == "pi") {
    auto pres = std::make_shared<const Presentation>(build_contraction(c.n));
    GenMorphism m = pi(c.n).with_source(pres);
    Config lc = c;
    lc.preset = "suq";
    out.push_back(detail::from_welldef(well_defined(m, detail::make_level_system(lc)), t.ms()));
  } else {
    throw Error("unknown --morphism '" + c.morphism + "' (delta|theta|pi)");
  }
  for (auto& r : out) r.field("n", std::to_string(c.n));
  return out;
}

namespace detail {

/// The density search needs the twisted unitarity consequences, which only
/// enter through degree-4 superpositions; the level system is completed at
/// least that far regardless of the search bound.
inline RewriteSystem density_level_system(const Config& c) {
  Config lc = c;
  lc.preset = "suq";
  lc.degree = std::max(4, c.n <= 2 ? 4 : 3);
  lc.max_rules = std::max(c.max_rules, 400);
  return make_level_system(lc);
}

inline CheckReport density_report(const Config& c, DensitySide side,
                                  const RewriteSystem& level) {
  Timer t;
  DensityReport dr = density_certificate(c.n, side, c.degree_or_default(), level);
  CheckReport r;
  r.check = "density";
  r.field("n", std::to_string(c.n));
  r.field("side", to_string(side));
  if (dr.found) {
    r.status = CheckStatus::PASS;
    r.field("found_at_degree", std::to_string(dr.found_at_degree));
    std::string w;
    for (const auto& e : dr.certificates) {
      if (!w.empty()) w += " ; ";
      w += (side == DensitySide::right ? e.target.to_string() + "#1"
                                       : "1#" + e.target.to_string()) +
           " = ";
      for (size_t k = 0; k < e.combination.size(); ++k) {
        const auto& [a, b, coeff] = e.combination[k];
        if (k) w += " + ";
        w += "(" + coeff.to_string() + ")*D(" + a.to_string() + ")" +
             (dr.side == DensitySide::right ? "(1#" + b.to_string() + ")"
                                            : "(" + b.to_string() + "#1)");
      }
    }
    r.witness = w;
  } else {
    r.status = CheckStatus::INCONCLUSIVE;
    r.degree_bound = c.degree_or_default();
    if (dr.budget_exhausted) r.field("note", "spanner budget exhausted");
  }
  r.confluence = dr.confluence;
  r.runtime_ms = t.ms();
  return r;
}

}  // namespace detail

inline std::vector<CheckReport> cmd_density(const Config& c) {
  RewriteSystem level = detail::density_level_system(c);
  DensitySide side = c.side == "left" ? DensitySide::left : DensitySide::right;
  return {detail::density_report(c, side, level)};
}

inline std::vector<CheckReport> cmd_system_validate(const Config& c) {
  detail::Timer t;
  InverseSystem sys = detail::make_system(c, c.n, c.sections == "naive" || c.preset == "contraction");
  SystemReport sr = validate_system(sys, c.n, c.degree_or_default());
  std::vector<CheckReport> out;
  for (const auto& wd : sr.theta_checks) out.push_back(detail::from_welldef(wd, 0));
  for (const auto& wd : sr.delta_checks) out.push_back(detail::from_welldef(wd, 0));
  for (const auto& dr : sr.diagram_checks) {
    CheckReport r;
    r.check = "diagram";
    r.field("n", std::to_string(dr.n));
    r.status = dr.pass ? CheckStatus::PASS : CheckStatus::FAIL;
    if (!dr.pass) r.witness = "free-algebra mismatch";
    out.push_back(r);
  }
  for (const auto& note : sr.structural_notes) {
    CheckReport r;
    r.check = "structure";
    r.field("note", note);
    r.status = note.find("VIOLATED") == std::string::npos ? CheckStatus::PASS : CheckStatus::FAIL;
    if (r.status == CheckStatus::FAIL) r.witness = note;
    out.push_back(r);
  }
  CheckReport sum;
  sum.check = "system_validate";
  sum.field("preset", c.preset);
  sum.field("N", std::to_string(c.n));
  sum.status = sr.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  if (!sr.pass) sum.witness = "see failing sub-checks";
  sum.runtime_ms = t.ms();
  out.push_back(sum);
  return out;
}

inline std::vector<CheckReport> cmd_hypotheses(const Config& c) {
  detail::Timer t;
  if (c.sections != "naive") throw Error("hypotheses requires --sections naive");
  InverseSystem sys = detail::make_system(c, c.n, true);
  HypothesisReport hr = hypothesis_check(sys, c.n, c.degree_or_default(), c.tol_reject, c.seed);
  std::vector<CheckReport> out;
  for (const auto& e : hr.entries) {
    if (e.verdict == HypothesisEntry::Verdict::pass_symbolic ||
        e.verdict == HypothesisEntry::Verdict::pass_structural)
      continue;  // only exceptional entries get their own lines
    CheckReport r;
    r.check = "hypothesis_b";
    r.field("i", std::to_string(e.source_level));
    r.field("j", std::to_string(e.target_level));
    r.field("relation", e.relation);
    if (e.verdict == HypothesisEntry::Verdict::fail_numeric) {
      r.status = CheckStatus::FAIL;
      r.witness = e.witness;
      r.residual = e.residual;
    } else {
      r.status = CheckStatus::INCONCLUSIVE;
      r.degree_bound = c.degree_or_default();
    }
    out.push_back(r);
  }
  CheckReport sum;
  sum.check = "hypotheses";
  sum.field("preset", c.preset);
  sum.field("N", std::to_string(c.n));
  sum.field("entries", std::to_string(hr.entries.size()));
  if (hr.any_fail) {
    sum.status = CheckStatus::FAIL;
    for (const auto& e : hr.entries)
      if (e.verdict == HypothesisEntry::Verdict::fail_numeric) {
        sum.witness = "R_" + std::to_string(e.source_level) + " '" + e.relation + "' at level " +
                      std::to_string(e.target_level) + " via " + e.witness;
        sum.residual = e.residual;
        break;
      }
  } else if (hr.any_inconclusive) {
    sum.status = CheckStatus::INCONCLUSIVE;
    sum.degree_bound = c.degree_or_default();
  } else {
    sum.status = CheckStatus::PASS;
  }
  sum.runtime_ms = t.ms();
  out.push_back(sum);
  return out;
}

inline std::vector<CheckReport> cmd_kappa(const Config& c) {
  detail::Timer t;
  const int depth = std::max(c.n, 2);
  Config lc = c;
  lc.preset = "contraction";
  InverseSystem sys = detail::make_system(lc, depth, true);
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  int checked = 0;
  for (int d : detail::parse_dims(c.dims)) {
    MatrixRep rho = contraction_rep_build(depth, d, c.seed + static_cast<uint64_t>(d));
    for (int wcount = 0; wcount < c.words; ++wcount) {
      // Random coherent word: a product of gamma-split generators.
      const int len = 1 + static_cast<int>(rng() % 3);
      CoherentElement e;
      bool first = true;
      for (int k = 0; k < len; ++k) {
        const int i = 1 + static_cast<int>(rng() % static_cast<unsigned long>(depth));
        const auto& gens = sys.level(i).generators;
        Generator g = gens[rng() % gens.size()];
        const bool starred = rng() % 2;
        CoherentElement ge = gamma_split(sys, i, g);
        if (starred)
          for (auto& comp : ge.components) comp = comp.star();
        e = first ? ge : coherent_mul(e, ge);
        first = false;
      }
      // kappa through the base polynomial vs direct evaluation of the
      // stored top-level component: the Theorem's triangle.
      CMatrix via_kappa = kappa_factor(sys, rho, iota(sys, e), c.tol);
      CMatrix direct = rho.eval(e.at_level(depth));
      const double res = operator_norm(via_kappa - direct);
      worst = std::max(worst, res);
      ++checked;
    }
  }
  CheckReport r;
  r.check = "kappa_triangle";
  r.field("N", std::to_string(depth));
  r.field("words", std::to_string(checked));
  r.field("dims", c.dims);
  r.residual = worst;
  if (worst <= 1e-12) {
    r.status = CheckStatus::PASS;
  } else {
    r.status = CheckStatus::FAIL;
    r.witness = "seeded coherent word with residual " + qlim::detail::fmt_double(worst);
  }
  r.runtime_ms = t.ms();
  return {r};
}

inline std::vector<CheckReport> cmd_numeric(const Config& c, double q_value) {
  detail::Timer t;
  std::vector<CheckReport> out;
  if (c.preset == "suq") {
    auto pres = std::make_shared<const Presentation>(build_suq(c.n, c.det));
    double max_rel = 0.0, max_norm = 0.0;
    if (q_value == 1.0) {
      GenMorphism delta = comultiplication(c.n);
      double max_delta = 0.0, max_theta = 0.0;
      for (int s = 0; s < c.samples; ++s) {
        ClassicalPoint g = random_special_unitary(c.n, c.seed + static_cast<uint64_t>(2 * s));
        ClassicalPoint h = random_special_unitary(c.n, c.seed + static_cast<uint64_t>(2 * s + 1));
        max_rel = std::max(max_rel, rep_residual(classical_point_rep(g, pres), c.tol).max_residual);
        max_delta = std::max(max_delta, delta_pointwise_check(g, h, c.n, delta.images));
        if (c.n >= 2) {
          ClassicalPoint small = random_special_unitary(c.n - 1, c.seed + static_cast<uint64_t>(s));
          max_theta =
              std::max(max_theta, theta_embedding_check(small, projection_theta(c.n).images));
        }
        for (int i = 0; i < c.n; ++i)
          for (int j = 0; j < c.n; ++j) max_norm = std::max(max_norm, std::abs(g.g(i, j)));
      }
      CheckReport rd;
      rd.check = "numeric_delta_pointwise";
      rd.field("n", std::to_string(c.n));
      rd.field("samples", std::to_string(c.samples));
      rd.residual = max_delta;
      rd.status = max_delta < c.tol ? CheckStatus::PASS : CheckStatus::FAIL;
      if (rd.status == CheckStatus::FAIL) rd.witness = "seeded classical pair";
      out.push_back(rd);
      if (c.n >= 2) {
        CheckReport rt;
        rt.check = "numeric_theta_embedding";
        rt.field("n", std::to_string(c.n));
        rt.residual = max_theta;
        rt.status = max_theta < 1e-12 ? CheckStatus::PASS : CheckStatus::FAIL;
        if (rt.status == CheckStatus::FAIL) rt.witness = "seeded classical point";
        out.push_back(rt);
      }
      CheckReport rn;
      rn.check = "numeric_generator_norms";
      rn.field("n", std::to_string(c.n));
      rn.residual = max_norm - 1.0;
      rn.status = max_norm <= 1.0 + 1e-12 ? CheckStatus::PASS : CheckStatus::FAIL;
      if (rn.status == CheckStatus::FAIL) rn.witness = "entry above 1";
      out.push_back(rn);
    } else {
      // Torus characters cover q != 1.
      std::mt19937_64 rng(c.seed);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
      for (int s = 0; s < std::max(1, c.samples / 10); ++s) {
        std::vector<Complex> phases;
        Complex prod = 1.0;
        for (int k = 0; k < c.n - 1; ++k) {
          Complex z = std::polar(1.0, angle(rng));
          phases.push_back(z);
          prod *= z;
        }
        phases.push_back(Complex(1.0) / prod);
        MatrixRep rep = torus_rep_build(c.n, phases, q_value, pres);
        max_rel = std::max(max_rel, rep_residual(rep, c.tol).max_residual);
      }
    }
    CheckReport rr;
    rr.check = "numeric_relations";
    rr.field("n", std::to_string(c.n));
    rr.field("q", qlim::detail::fmt_double(q_value));
    rr.residual = max_rel;
    rr.status = max_rel < c.tol ? CheckStatus::PASS : CheckStatus::FAIL;
    if (rr.status == CheckStatus::FAIL) rr.witness = "sampled representation";
    rr.runtime_ms = t.ms();
    out.push_back(rr);
  } else if (c.preset == "contraction") {
    double max_res = -1.0;
    for (int d : detail::parse_dims(c.dims))
      for (int s = 0; s < std::max(1, c.samples / 10); ++s) {
        MatrixRep rep = contraction_rep_build(
            c.n, d, c.seed + static_cast<uint64_t>(97 * s + static_cast<uint64_t>(d)));
        max_res = std::max(max_res, rep_residual(rep, c.tol).max_residual);
      }
    CheckReport rr;
    rr.check = "numeric_norm_bounds";
    rr.field("n", std::to_string(c.n));
    rr.residual = max_res;
    rr.status = max_res <= c.tol ? CheckStatus::PASS : CheckStatus::FAIL;
    if (rr.status == CheckStatus::FAIL) rr.witness = "sampled contraction rep";
    rr.runtime_ms = t.ms();
    out.push_back(rr);
  } else if (c.preset == "circle") {
    auto pres = std::make_shared<const Presentation>(build_circle());
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    double max_res = 0.0;
    for (int s = 0; s < std::max(1, c.samples / 10); ++s) {
      MatrixRep rep;
      rep.pres = pres;
      rep.dim = 1;
      rep.q_value = q_value;
      CMatrix m(1, 1);
      m(0, 0) = std::polar(1.0, angle(rng));
      rep.images[make_x()] = m;
      max_res = std::max(max_res, rep_residual(rep, c.tol).max_residual);
    }
    CheckReport rr;
    rr.check = "numeric_relations";
    rr.field("preset", "circle");
    rr.residual = max_res;
    rr.status = max_res < c.tol ? CheckStatus::PASS : CheckStatus::FAIL;
    if (rr.status == CheckStatus::FAIL) rr.witness = "unimodular character";
    rr.runtime_ms = t.ms();
    out.push_back(rr);
  } else {
    throw Error("unknown preset '" + c.preset + "'");
  }
  return out;
}

/// The composite suite: structural validation, coassociativity, density on
/// both sides, and numeric spot checks; kappa on the contraction tower.
inline std::vector<CheckReport> cmd_verify(const Config& c) {
  std::vector<CheckReport> out;
  if (c.preset == "suq") {
    for (auto& r : cmd_system_validate(c)) out.push_back(std::move(r));
    {
      Config cc = c;
      for (int k = 1; k <= c.n; ++k) {
        cc.n = k;
        for (auto& r : cmd_coassoc(cc)) out.push_back(std::move(r));
      }
    }
    {
      Config cc = c;
      cc.degree = std::min(c.degree_or_default(), 2);
      RewriteSystem level = detail::density_level_system(cc);
      out.push_back(detail::density_report(cc, DensitySide::right, level));
      out.push_back(detail::density_report(cc, DensitySide::left, level));
    }
    Config nc = c;
    nc.samples = std::min(c.samples, 25);
    for (auto& r : cmd_numeric(nc, 1.0)) out.push_back(std::move(r));
    for (auto& r : cmd_numeric(nc, 0.5)) out.push_back(std::move(r));
  } else if (c.preset == "contraction") {
    for (auto& r : cmd_system_validate(c)) out.push_back(std::move(r));
    Config kc = c;
    kc.words = std::min(c.words, 10);
    for (auto& r : cmd_kappa(kc)) out.push_back(std::move(r));
    for (auto& r : cmd_numeric(c, 1.0)) out.push_back(std::move(r));
  } else if (c.preset == "circle") {
    detail::Timer t;
    Presentation pres = build_circle();
    RewriteSystem base = orient(pres);
    auto [S, crep] = complete_bounded(base, c.degree_or_default(), c.max_rules);
    bool all = true;
    for (const auto& rel : pres.relations)
      if (rel.kind == RelationKind::algebraic && !reduces_to_zero(rel.body, S)) all = false;
    bool normal = reduces_to_zero(parse_expression("x'x - xx'", ParseContext::for_circle()), S);
    CheckReport r;
    r.check = "circle_relations";
    r.field("normality", normal ? "ok" : "violated");
    r.status = (all && normal) ? CheckStatus::PASS : CheckStatus::FAIL;
    if (r.status == CheckStatus::FAIL) r.witness = "relation failed to reduce";
    r.confluence = S.status().to_string();
    r.runtime_ms = t.ms();
    out.push_back(r);
    for (auto& rr : cmd_numeric(c, 1.0)) out.push_back(std::move(rr));
  } else {
    throw Error("unknown preset '" + c.preset + "'");
  }
  return out;
}

}  // namespace qlim::cli
