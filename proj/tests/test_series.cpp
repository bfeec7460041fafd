#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qheine/classify.hpp"
#include "test_util.hpp"

using namespace qheine;
using namespace qheine::testutil;

namespace {

DiffOperator op(const char* shift, const char* coeff) {
  return DiffOperator::term(parse_shift(shift), RF(coeff));
}

}  // namespace

TEST_CASE("phi21_series matches the closed Pochhammer quotient") {
  // Independent oracle: c_k = (a;q)_k (b;q)_k / ((q;q)_k (c;q)_k) built
  // from finite Pochhammer products instead of the term recurrence.
  const int K = 8;
  FormalSeries S = phi21_series(K);
  REQUIRE(S.order() == K);
  CHECK(S.coeffs[0] == RationalFunc::one());
  for (int k = 1; k <= K; ++k) {
    RationalFunc expect = qpochhammer_finite(Monomial::var(VarA), k) *
                          qpochhammer_finite(Monomial::var(VarB), k) *
                          qpochhammer_finite(Monomial::var(VarQ), k).inverse() *
                          qpochhammer_finite(Monomial::var(VarC), k).inverse();
    CHECK(S.coeffs[k] == expect);
  }
  // Recurrence contract: c_{k+1} = c_k (1-aq^k)(1-bq^k)/((1-q^{k+1})(1-cq^k)).
  for (int k = 0; k < K; ++k) {
    RationalFunc step =
        (RationalFunc::one() - RationalFunc::monomial(Monomial::var(VarA) *
                                                      Monomial::var(VarQ, k))) *
        (RationalFunc::one() - RationalFunc::monomial(Monomial::var(VarB) *
                                                      Monomial::var(VarQ, k))) /
        ((RationalFunc::one() - RationalFunc::monomial(Monomial::var(VarQ, k + 1))) *
         (RationalFunc::one() - RationalFunc::monomial(Monomial::var(VarC) *
                                                       Monomial::var(VarQ, k))));
    CHECK(S.coeffs[k + 1] == S.coeffs[k] * step);
  }
}

TEST_CASE("apply_to_series on pure shifts") {
  const int K = 8;
  FormalSeries S = phi21_series(K);

  // Identity preserves every coefficient.
  FormalSeries id = apply_to_series(DiffOperator::identity(), S, K);
  for (int k = 0; k <= K; ++k) CHECK(id.coeffs[k] == S.coeffs[k]);

  // Z scales the z^k coefficient by q^k.
  FormalSeries z = apply_to_series(DiffOperator::shift(ShiftOp::Z()), S, K);
  for (int k = 0; k <= K; ++k)
    CHECK(z.coeffs[k] ==
          S.coeffs[k] * RationalFunc::monomial(Monomial::var(VarQ, k)));

  // A substitutes a -> aq in every coefficient.
  FormalSeries a = apply_to_series(DiffOperator::shift(ShiftOp::A()), S, K);
  for (int k = 0; k <= K; ++k) CHECK(a.coeffs[k] == S.coeffs[k].shifted({1, 0, 0, 0}));

  // Multiplication by z moves coefficients up one slot.
  FormalSeries mz = apply_to_series(op("1", "z"), S, K);
  CHECK(mz.coeffs[0].is_zero());
  for (int k = 1; k <= K; ++k) CHECK(mz.coeffs[k] == S.coeffs[k - 1]);
}

TEST_CASE("apply_to_series is linear and annihilates on the ideal") {
  const int K = 10;
  FormalSeries S = phi21_series(K);
  CHECK(apply_to_series(generators()[0], S, K).is_zero());
  CHECK_FALSE(apply_to_series(op("A", "1") + op("1", "-1"), S, K).is_zero());

  DiffOperator d1 = op("A", "1 - a") + op("Z", "q");
  DiffOperator d2 = op("B^-1 Z", "c") + op("1", "a b");
  FormalSeries lhs = apply_to_series(d1 + d2, S, K);
  FormalSeries r1 = apply_to_series(d1, S, K), r2 = apply_to_series(d2, S, K);
  for (int k = 0; k <= K; ++k) CHECK(lhs.coeffs[k] == r1.coeffs[k] + r2.coeffs[k]);

  // Module action: (D1 D2) S = D1 (D2 S).
  FormalSeries comp = apply_to_series(d1 * d2, S, K);
  FormalSeries staged = apply_to_series(d1, apply_to_series(d2, S, K), K);
  for (int k = 0; k <= K; ++k) CHECK(comp.coeffs[k] == staged.coeffs[k]);
}

TEST_CASE("apply_to_series argument validation") {
  FormalSeries S = phi21_series(6);
  CHECK_THROWS_AS(apply_to_series(DiffOperator::identity(), S, -1), std::invalid_argument);
  // A z^{-1} coefficient needs series coefficients beyond the cutoff.
  CHECK_THROWS_AS(apply_to_series(op("1", "z^-1"), S, 6), std::invalid_argument);
  // With one spare coefficient it divides cleanly.
  FormalSeries shifted = apply_to_series(op("1", "z^-1"), S, 5);
  for (int k = 0; k <= 5; ++k) CHECK(shifted.coeffs[k] == S.coeffs[k + 1]);
}

TEST_CASE("clear_denominators yields a unit multiple with polynomial coefficients") {
  DiffOperator d = op("A B C", "1") + op("Z", "(1 - c)/(z - a z - b z + a b z)") +
                   op("1", "(c - 1)/(z - a z - b z + a b z)");
  DiffOperator cleared = clear_denominators(d);
  RationalFunc unit;
  bool first = true;
  for (const auto& [s, c] : cleared.terms()) {
    CHECK(c.is_polynomial());
    CHECK(c.num().min_exponent(VarZ) >= 0);
    // The multiplier is one rational function common to all terms.
    RationalFunc ratio = c / d.terms().at(s);
    if (first) {
      unit = ratio;
      first = false;
    } else {
      CHECK(ratio == unit);
    }
  }
  CHECK_FALSE(unit.is_zero());
  // Already-polynomial operators are untouched.
  DiffOperator poly = op("A", "1 - a") + op("Z", "q z");
  CHECK(clear_denominators(poly) == poly);
}

TEST_CASE("annihilates_phi21 agrees with the expanded series check") {
  for (const DiffOperator& g : generators()) CHECK(annihilates_phi21(g, 16));

  const int K = 8;
  FormalSeries S = phi21_series(K);
  DiffOperator in = generators()[2];
  DiffOperator out = generators()[0] + op("1", "a - b");
  CHECK(annihilates_phi21(in, K) == apply_to_series(in, S, K).is_zero());
  CHECK(annihilates_phi21(out, K) == apply_to_series(out, S, K).is_zero());
  CHECK_FALSE(annihilates_phi21(out, K));

  // Left-multiplying by a unit preserves membership.
  DiffOperator twisted = DiffOperator::term(ShiftOp{{0, 1, 1, -1}}, RF("c - q")) *
                         generators()[6];
  CHECK(annihilates_phi21(clear_denominators(twisted), 16));
}
