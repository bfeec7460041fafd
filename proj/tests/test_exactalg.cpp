#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace qheine;
using namespace qheine::testutil;

TEST_CASE("rf_normalize cancels common factors") {
  CHECK(rf_normalize(P("a^2 - 1"), P("a - 1")) == RF("a + 1"));
  CHECK(rf_normalize(P("a"), P("a")) == RationalFunc::one());
  // q (c - abz)(1 - z) over (c - abz) -> q (1 - z).
  LaurentPoly num = P("q") * P("c - a b z") * P("1 - z");
  CHECK(rf_normalize(num, P("c - a b z")) == RF("q - q z"));
  CHECK_THROWS_AS(rf_normalize(P("a"), LaurentPoly::zero()), std::invalid_argument);
}

TEST_CASE("rf_normalize is idempotent and canonical") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    RationalFunc f = random_rational(rng);
    RationalFunc g = rf_normalize(f.num(), f.den());
    CHECK(f == g);
    // Denominator canonical form: unit content, no negative exponents.
    if (!f.is_zero()) {
      CHECK(f.den().content() == 1);
      for (int v = 0; v < kNumVars; ++v) CHECK(f.den().min_exponent(static_cast<Var>(v)) >= 0);
    }
  }
}

TEST_CASE("poly_gcd on the contract examples") {
  CHECK(poly_gcd(P("a b z - a"), P("b z - 1")) == P("b z - 1"));
  CHECK(poly_gcd(P("a - 1"), P("b - 1")) == LaurentPoly::one());
  LaurentPoly p = P("1 - a") * P("1 - c");
  LaurentPoly q = P("1 - a") * P("c - q");
  LaurentPoly g = poly_gcd(p, q);
  // Canonical sign: leading graded-lex coefficient positive.
  CHECK(g == P("a - 1"));
  CHECK(divide_exact(p, g).has_value());
  CHECK(divide_exact(q, g).has_value());
  CHECK_THROWS_AS(poly_gcd(LaurentPoly::zero(), LaurentPoly::zero()), std::invalid_argument);
}

TEST_CASE("poly_gcd multiplicativity on random samples") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    LaurentPoly p = random_poly(rng, 2, 1), q = random_poly(rng, 2, 1),
                r = random_poly(rng, 2, 1);
    LaurentPoly lhs = poly_gcd(p * r, q * r);
    LaurentPoly rhs = poly_gcd(p, q) * r;
    make_primitive(rhs);
    // Equal up to unit: each divides the other.
    CHECK(divide_exact(lhs, rhs).has_value());
    CHECK(divide_exact(rhs, lhs).has_value());
  }
}

TEST_CASE("poly_gcd divides both inputs exactly on random samples") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 25; ++i) {
    LaurentPoly p = random_poly(rng, 4, 2), q = random_poly(rng, 4, 2);
    LaurentPoly g = poly_gcd(p, q);
    CHECK(divide_exact(p, g).has_value());
    CHECK(divide_exact(q, g).has_value());
  }
}

TEST_CASE("substitute") {
  CHECK(substitute(RF("1 - a"), VarA, RationalFunc::one()).is_zero());
  CHECK(substitute(RF("a z + b z - c - q"), VarA, RF("q^-1")) == RF("z q^-1 + b z - c - q"));
  // (1-a)/(1-aq/c) at a = 1/q -> (1 - 1/q)/(1 - 1/c) = c(q-1)/(q(c-1)).
  RationalFunc f = RF("1 - a") / RF("1 - a q c^-1");
  CHECK(substitute(f, VarA, RF("q^-1")) == RF("c q - c") / RF("c q - q"));
  // Denominator vanishing identically is a pole error.
  CHECK_THROWS_AS(substitute(RationalFunc::one() / RF("1 - a"), VarA, RationalFunc::one()),
                  std::domain_error);
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    // Small operands: the distributivity check multiplies three
    // denominators, and the gcd cost grows quickly with term count.
    RationalFunc f = random_rational(rng, 2, 1), g = random_rational(rng, 2, 1),
                 h = random_rational(rng, 2, 1);
    CHECK((f + g) * h == f * h + g * h);
    if (!f.is_zero()) CHECK(f * f.inverse() == RationalFunc::one());
    CHECK(f - f == RationalFunc::zero());
    CHECK(f + g == g + f);
  }
}

TEST_CASE("divides_at_qpower") {
  CHECK(divides_at_qpower(P("1 - a"), VarA, 0));
  CHECK_FALSE(divides_at_qpower(P("1 - a"), VarA, 1));
  CHECK(divides_at_qpower(P("1 - a") * P("1 - a q"), VarA, 1));
}

TEST_CASE("divides_at_qpower agrees with exact division") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    LaurentPoly p = random_poly(rng, 3, 1);
    for (int j = -1; j <= 1; ++j) {
      // var - q^{-j} as a polynomial (clear the negative power).
      LaurentPoly factor =
          j >= 0 ? P("a") * LaurentPoly::variable(VarQ, j) - LaurentPoly::one()
                 : P("a") - LaurentPoly::variable(VarQ, -j);
      bool by_subst = divides_at_qpower(p, VarA, j);
      bool by_div = divide_exact(p, factor).has_value();
      CHECK(by_subst == by_div);
      LaurentPoly pf = p * factor;
      CHECK(divides_at_qpower(pf, VarA, j));
    }
  }
}

TEST_CASE("binomial_pair_factor on the contract examples") {
  LaurentPoly p1 = P("q") * P("c - a b z") * P("1 - z");
  auto f1 = binomial_pair_factor(p1);
  REQUIRE(f1.has_value());
  CHECK(f1->unit * f1->b1 * f1->b2 == p1);
  CHECK(f1->b1.num_terms() == 2);
  CHECK(f1->b2.num_terms() == 2);

  LaurentPoly p2 = P("a - 1") * P("a - q^-1");  // 3-term support
  auto f2 = binomial_pair_factor(p2);
  REQUIRE(f2.has_value());
  CHECK(f2->unit * f2->b1 * f2->b2 == p2);

  CHECK_FALSE(binomial_pair_factor(P("a + b + c")).has_value());
  CHECK_THROWS_AS(binomial_pair_factor(LaurentPoly::zero()), std::invalid_argument);
}

TEST_CASE("binomial_pair_factor round-trips on random binomial products") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> expo(-2, 2);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto random_binomial = [&] {
    for (;;) {
      LaurentPoly b;
      for (int t = 0; t < 2; ++t) {
        Monomial m;
        for (int v = 0; v < kNumVars; ++v) m.e[v] = expo(rng);
        int c = coef(rng);
        if (c != 0) b.add_term(m, c);
      }
      if (b.num_terms() == 2) return b;
    }
  };
  for (int i = 0; i < 50; ++i) {
    LaurentPoly p = random_binomial() * random_binomial();
    auto f = binomial_pair_factor(p);
    REQUIRE(f.has_value());
    CHECK(f->unit * f->b1 * f->b2 == p);
    CHECK(f->unit.is_monomial());
  }
}

TEST_CASE("binomial_pair_factor none-answers verified exhaustively") {
  // For small supports, confirm by brute force over all ways of
  // splitting the support into two binomials.
  std::mt19937_64 rng(29);
  auto exists_by_search = [](const LaurentPoly& p) {
    std::vector<std::pair<Monomial, Rational>> T(p.terms().begin(), p.terms().end());
    // p = (x1 M1 + x2 M2)(y1 N1 + y2 N2); try all monomial pairs for
    // the first binomial built from leading/trailing structure. A
    // sufficient exhaustive check at support <= 4: try every pair
    // (i, j) as exponents of the first binomial with unknown second
    // binomial recovered by exact division.
    for (std::size_t i = 0; i < T.size(); ++i)
      for (std::size_t j = i + 1; j < T.size(); ++j)
        for (int ci = -6; ci <= 6; ++ci)
          for (int cj = -6; cj <= 6; ++cj) {
            if (ci == 0 || cj == 0) continue;
            LaurentPoly b;
            b.add_term(T[i].first, ci);
            b.add_term(T[j].first, cj);
            if (b.num_terms() != 2) continue;
            auto quot = divide_exact(p, b);
            if (quot && quot->num_terms() == 2) return true;
          }
    return false;
  };
  int none_count = 0;
  for (int i = 0; i < 30; ++i) {
    LaurentPoly p = random_poly(rng, 4, 1);
    if (p.num_terms() < 2 || p.num_terms() > 4) continue;
    auto f = binomial_pair_factor(p);
    if (f) {
      CHECK(f->unit * f->b1 * f->b2 == p);
    } else {
      ++none_count;
      CHECK_FALSE(exists_by_search(p));
    }
  }
  CHECK(none_count > 0);  // the sample must exercise the none branch
}

TEST_CASE("expression text round-trip") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    LaurentPoly p = random_poly(rng, 4, 2);
    CHECK(parse_poly(render_poly(p)) == p);
    RationalFunc f = random_rational(rng);
    CHECK(parse_rational_func(render_rational_func(f)) == f);
  }
  CHECK_THROWS_AS(parse_poly("1 +"), std::invalid_argument);
}
