#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qlim/parse.hpp"
#include "qlim/presentation.hpp"

using namespace qlim;

namespace {

// Independent oracle: count inversions by explicit pair enumeration (kept
// separate from the implementation under test).
int inversions_brute(const std::vector<int>& t) {
  int c = 0;
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = a + 1; b < t.size(); ++b)
      if (t[a] > t[b]) ++c;
  return c;
}

bool has_repeat(const std::vector<int>& t) {
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = a + 1; b < t.size(); ++b)
      if (t[a] == t[b]) return true;
  return false;
}

int count_with_suffix(const Presentation& p, bool starred_label) {
  int c = 0;
  for (const auto& r : p.relations) {
    const bool is_star = !r.label.empty() && r.label.back() == '*';
    if (is_star == starred_label) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("inversion_count matches brute force", "[presentation]") {
  CHECK(inversion_count({1, 2, 3}) == 0);
  CHECK(inversion_count({2, 1}) == 1);
  CHECK(inversion_count({3, 2, 1}) == 3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> t(1 + rng() % 6);
    for (auto& v : t) v = 1 + static_cast<int>(rng() % 6);
    CHECK(inversion_count(t) == inversions_brute(t));
  }
}

TEST_CASE("e_symbol: twisted sign with vanishing on repeats", "[presentation]") {
  CHECK(e_symbol({1, 2, 3}, 3) == RatFuncQ(1));
  CHECK(e_symbol({2, 1}, 2) == -RatFuncQ::q());
  CHECK(e_symbol({1, 1}, 2) == RatFuncQ(0));
  CHECK_THROWS_AS(e_symbol({0, 1}, 2), IndexError);
  CHECK_THROWS_AS(e_symbol({1, 2, 3}, 2), IndexError);
}

TEST_CASE("e_symbol vanishes exactly on repeated tuples; sign at q=1", "[presentation][property]") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> t(static_cast<size_t>(n), 1);
    while (true) {
      RatFuncQ e = e_symbol(t, n);
      CHECK(e.is_zero() == has_repeat(t));
      if (!e.is_zero()) {
        double sign = e.eval(1.0);
        double expect = (inversions_brute(t) % 2 == 0) ? 1.0 : -1.0;
        CHECK(sign == Catch::Approx(expect));
      }
      int k = n - 1;
      while (k >= 0 && t[static_cast<size_t>(k)] == n) t[static_cast<size_t>(k--)] = 1;
      if (k < 0) break;
      ++t[static_cast<size_t>(k)];
    }
  }
}

TEST_CASE("build_suq(1) collapses to the scalar circle-like presentation", "[presentation]") {
  Presentation p = build_suq(1);
  REQUIRE(p.generators.size() == 1);
  // u u* = 1, u* u = 1 and u = 1 from the n=1 determinant row.
  StarPolynomial u(make_u(1, 1, 1));
  bool found_det = false, found_row = false, found_col = false;
  for (const auto& r : p.relations) {
    if (r.body == u - StarPolynomial::one()) found_det = true;
    if (r.body == StarPolynomial(Word({make_u(1, 1, 1), make_u(1, 1, 1, true)})) -
                      StarPolynomial::one())
      found_row = true;
    if (r.body == StarPolynomial(Word({make_u(1, 1, 1, true), make_u(1, 1, 1)})) -
                      StarPolynomial::one())
      found_col = true;
  }
  CHECK(found_det);
  CHECK(found_row);
  CHECK(found_col);
}

TEST_CASE("build_suq(2): exact determinant expansions", "[presentation]") {
  Presentation p = build_suq(2);

  // Independent construction through the expression grammar.
  ParseContext ctx = ParseContext::for_suq(2);
  StarPolynomial det12 = parse_expression("u(1,1).u(2,2) - q*u(1,2).u(2,1) - 1", ctx);
  StarPolynomial det11 = parse_expression("u(1,1).u(1,2) - q*u(1,2).u(1,1)", ctx);

  bool saw12 = false, saw11 = false;
  for (const auto& r : p.relations) {
    if (r.label == "determinant(1,2)") {
      CHECK(r.body == det12);
      saw12 = true;
    }
    if (r.label == "determinant(1,1)") {
      CHECK(r.body == det11);
      saw11 = true;
    }
  }
  CHECK(saw12);
  CHECK(saw11);

  // 8 unitarity + 4 determinant relations before star closure.
  CHECK(count_with_suffix(p, false) == 12);
  CHECK(p.star_closed);
  CHECK(detail::is_star_closed(p));
  CHECK(p.admissibility.weakly_admissible);
}

TEST_CASE("det-tuple policy flag", "[presentation]") {
  Presentation all = build_suq(2, DetTuples::all);
  Presentation dist = build_suq(2, DetTuples::distinct);
  auto count_det = [](const Presentation& p) {
    int c = 0;
    for (const auto& r : p.relations)
      if (r.label.rfind("determinant", 0) == 0 && r.label.back() != '*') ++c;
    return c;
  };
  CHECK(count_det(all) == 4);
  CHECK(count_det(dist) == 2);
}

TEST_CASE("build_contraction: norm bounds only", "[presentation]") {
  Presentation p2 = build_contraction(2);
  int bounds = 0, algebraic = 0;
  for (const auto& r : p2.relations)
    (r.kind == RelationKind::norm_bound ? bounds : algebraic)++;
  CHECK(bounds == 4);
  CHECK(algebraic == 0);
  CHECK(build_contraction(1).relations.size() == 1);
  CHECK(p2.star_closed);  // vacuously
  CHECK(detail::is_star_closed(p2));
  CHECK(p2.admissibility.weakly_admissible);
}

TEST_CASE("build_circle", "[presentation]") {
  Presentation p = build_circle();
  CHECK(p.relations.size() == 2);
  CHECK(p.star_closed);
  CHECK(detail::is_star_closed(p));
  CHECK(p.admissibility.weakly_admissible);
}

TEST_CASE("degenerate levels are rejected", "[presentation]") {
  CHECK_THROWS_AS(build_suq(0), IndexError);
  CHECK_THROWS_AS(build_contraction(0), IndexError);
}

TEST_CASE("trivial and malformed relations are rejected", "[presentation]") {
  CHECK_THROWS_AS(Relation::algebraic(StarPolynomial::zero(), "trivial"), Error);
  CHECK_THROWS_AS(Relation::norm_bound(make_w(1, 1, 1), Rational(0), "bad"), Error);
}
