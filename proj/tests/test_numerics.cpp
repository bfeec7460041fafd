#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qheine/classify.hpp"
#include "qheine/numerics.hpp"
#include "qheine/series.hpp"
#include "test_util.hpp"

using namespace qheine;
using namespace qheine::testutil;

namespace {

const EvalConfig kCfg{};  // 128-bit precision, tol 1e-10, tail_eps 1e-20

MpComplex mk(double re, double im = 0.0) { return MpComplex(re, im, kCfg.precision); }

double rel_err(const MpComplex& got, const MpComplex& want) {
  return mpf_class((got - want).abs() / want.abs()).get_d();
}

// Brute-force partial product, a deliberately different truncation rule
// from the library's tail-based cutoff.
MpComplex qpoch_brute(const MpComplex& x, const MpComplex& q, int factors) {
  MpComplex prod = mk(1.0), xq = x;
  for (int j = 0; j < factors; ++j) {
    prod *= mk(1.0) - xq;
    xq *= q;
  }
  return prod;
}

}  // namespace

TEST_CASE("qpoch_inf against brute-force partial products") {
  CHECK(mpf_class((qpoch_inf(mk(0.0), mk(0.5), kCfg) - mk(1.0)).abs()) == 0);

  // (q; q)_inf at q = 1/2: 200 factors leave a tail below 2^-200.
  MpComplex q = mk(0.5);
  CHECK(rel_err(qpoch_inf(q, q, kCfg), qpoch_brute(q, q, 200)) < 1e-15);

  for (std::uint64_t seed : {3u, 4u, 5u, 6u}) {
    EvalPoint p = sample_point(seed, kCfg);
    CHECK(rel_err(qpoch_inf(p.a, p.q, kCfg), qpoch_brute(p.a, p.q, 400)) < 1e-15);
    // Telescoping: (x;q)_inf = (1-x)(xq;q)_inf.
    MpComplex lhs = qpoch_inf(p.a, p.q, kCfg);
    MpComplex rhs = (mk(1.0) - p.a) * qpoch_inf(p.a * p.q, p.q, kCfg);
    CHECK(rel_err(lhs, rhs) < kCfg.tol);
  }

  CHECK_THROWS_AS(qpoch_inf(mk(0.3), mk(1.0), kCfg), std::domain_error);
}

TEST_CASE("theta symmetries") {
  CHECK_THROWS_AS(theta(mk(0.0), mk(0.5), kCfg), std::domain_error);

  // x = sqrt(q): q/x = x, so theta(x;q) = (x;q)_inf^2.
  MpComplex q = mk(0.49), x = mk(0.7);
  MpComplex px = qpoch_inf(x, q, kCfg);
  CHECK(rel_err(theta(x, q, kCfg), px * px) < kCfg.tol);

  for (std::uint64_t seed : {11u, 12u, 13u}) {
    EvalPoint p = sample_point(seed, kCfg);
    // theta(x) = theta(q/x).
    CHECK(rel_err(theta(p.a, p.q, kCfg), theta(p.q / p.a, p.q, kCfg)) < kCfg.tol);
    // theta(qx) = -x^{-1} theta(x).
    MpComplex lhs = theta(p.q * p.a, p.q, kCfg);
    MpComplex rhs = -(mk(1.0) / p.a) * theta(p.a, p.q, kCfg);
    CHECK(rel_err(lhs, rhs) < kCfg.tol);
  }
}

TEST_CASE("phi21 specializations") {
  EvalPoint p = sample_point(21, kCfg);

  // a = 1 truncates the series at k = 0.
  EvalPoint pa1 = p;
  pa1.a = mk(1.0);
  CHECK(mpf_class((phi21(pa1, kCfg) - mk(1.0)).abs()) == 0);

  // z = 0 gives the constant term only.
  EvalPoint pz0 = p;
  pz0.z = mk(0.0);
  CHECK(mpf_class((phi21(pz0, kCfg) - mk(1.0)).abs()) == 0);

  // q-binomial theorem: a = c = q^j collapses to (bz;q)_inf/(z;q)_inf.
  for (int j = 1; j <= 3; ++j) {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
      EvalPoint s = sample_point(seed, kCfg);
      s.a = s.q.pow(j);
      s.c = s.a;
      MpComplex want = qpoch_inf(s.b * s.z, s.q, kCfg) / qpoch_inf(s.z, s.q, kCfg);
      CHECK(rel_err(phi21(s, kCfg), want) < kCfg.tol);
    }
  }

  EvalPoint bad = p;
  bad.z = mk(1.2);
  CHECK_THROWS_AS(phi21(bad, kCfg), std::domain_error);
  bad = p;
  bad.q = mk(1.0);
  CHECK_THROWS_AS(phi21(bad, kCfg), std::domain_error);
  bad = p;
  bad.c = mk(1.0);  // c = q^0 lies in the pole set
  CHECK_THROWS_AS(phi21(bad, kCfg), std::domain_error);
}

TEST_CASE("eval_term") {
  EvalPoint p = sample_point(41, kCfg);
  CHECK(mpf_class((eval_term(QHypTerm::one(), p, kCfg) - mk(1.0)).abs()) == 0);

  // (z;q)_inf / (z;q)_inf cancels syntactically.
  QHypTerm cancel = QHypTerm::pochhammer(Monomial::var(VarZ), 1) *
                    QHypTerm::pochhammer(Monomial::var(VarZ), -1);
  CHECK(cancel.is_one());

  // Product structure: rational part times the Pochhammer factors.
  QHypTerm t(RF("(1 - c)/(1 - z)"), {{Monomial::var(VarB), 1}, {Monomial::var(VarC), -1}});
  MpComplex want = eval_rational(RF("(1 - c)/(1 - z)"), p) *
                   qpoch_inf(p.b, p.q, kCfg) / qpoch_inf(p.c, p.q, kCfg);
  CHECK(rel_err(eval_term(t, p, kCfg), want) < kCfg.tol);

  // A negative-multiplicity factor at a zero of (x;q)_inf is a pole.
  EvalPoint pole = p;
  pole.a = mk(1.0);
  QHypTerm badterm = QHypTerm::pochhammer(Monomial::var(VarA), -1);
  CHECK_THROWS_AS(eval_term(badterm, pole, kCfg), std::domain_error);
}

TEST_CASE("verify_symmetry for the Heine group") {
  // Identity: error at the working-precision floor, far below tol.
  SymmetryReport id = verify_symmetry(Transformation::identity(), 3, kCfg);
  CHECK(id.pass);
  CHECK(id.max_rel_error < 1e-30);

  SymmetryReport th = verify_symmetry(heine_transformation(), 8, kCfg);
  CHECK(th.pass);
  CHECK(th.max_rel_error < kCfg.tol);

  int idx = 0;
  for (const Transformation& t : heine_group()) {
    SymmetryReport r = verify_symmetry(t, 4, kCfg, 100 + idx++);
    CHECK(r.pass);
  }
}

TEST_CASE("verify_g_ratios") {
  for (std::uint64_t seed : {51u, 52u, 53u}) {
    EvalPoint p = sample_point(seed, kCfg);
    GRatioReport rep = verify_g_ratios(p, kCfg);
    CHECK(rep.pass);
    REQUIRE(rep.checks.size() == 4);
    for (const GRatioCheck& c : rep.checks) {
      CHECK(c.pass);
      CHECK(c.rel_error < kCfg.tol);
    }
    CHECK(rep.checks[3].name == "Zg/g");
  }

  // Direct spot check of Zg/g = q/c against the quotient the report uses.
  EvalPoint p = sample_point(54, kCfg);
  GRatioReport rep = verify_g_ratios(p, kCfg);
  CHECK(rep.checks[3].rel_error < kCfg.tol);
}

TEST_CASE("precision stability") {
  EvalPoint p = sample_point(61, kCfg);
  EvalConfig hi = kCfg;
  hi.precision = 256;
  EvalPoint ph;
  ph.a = MpComplex(mpf_class(p.a.re, 256), mpf_class(p.a.im, 256));
  ph.b = MpComplex(mpf_class(p.b.re, 256), mpf_class(p.b.im, 256));
  ph.c = MpComplex(mpf_class(p.c.re, 256), mpf_class(p.c.im, 256));
  ph.z = MpComplex(mpf_class(p.z.re, 256), mpf_class(p.z.im, 256));
  ph.q = MpComplex(mpf_class(p.q.re, 256), mpf_class(p.q.im, 256));
  CHECK(rel_err(phi21(p, kCfg), phi21(ph, hi)) < kCfg.tail_eps * 1e4);
  CHECK(rel_err(qpoch_inf(p.a, p.q, kCfg), qpoch_inf(ph.a, ph.q, hi)) < kCfg.tail_eps * 1e4);
}

TEST_CASE("symbolic series coefficients sum to the numeric value") {
  const int K = 24;
  FormalSeries S = phi21_series(K);
  EvalPoint p = sample_point(71, kCfg);
  p.z = mk(0.3, 0.1);  // |z| small enough that the K-term tail is < 1e-12
  MpComplex sum = mk(0.0), zk = mk(1.0);
  for (int k = 0; k <= K; ++k) {
    sum += eval_rational(S.coeffs[k], p) * zk;
    zk *= p.z;
  }
  CHECK(rel_err(sum, phi21(p, kCfg)) < 1e-11);
}
