#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qheine/qterm.hpp"

namespace qheine {

/// Minimal arbitrary-precision complex number on GMP floats. The
/// precision of the real part is authoritative for derived values.
struct MpComplex {
  mpf_class re, im;

  MpComplex() : re(0), im(0) {}
  MpComplex(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(double r, double i = 0.0, int prec = 128)
      : re(r, prec), im(i, prec) {}

  MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
  MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
  MpComplex operator-() const { return {-re, -im}; }
  MpComplex operator*(const MpComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  MpComplex operator/(const MpComplex& o) const {
    mpf_class n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  MpComplex& operator+=(const MpComplex& o) { return *this = *this + o; }
  MpComplex& operator*=(const MpComplex& o) { return *this = *this * o; }

  mpf_class abs2() const { return re * re + im * im; }
  mpf_class abs() const {
    mpf_class r(0, re.get_prec());
    mpf_sqrt(r.get_mpf_t(), mpf_class(abs2()).get_mpf_t());
    return r;
  }
  MpComplex pow(int n) const;
};

struct EvalPoint {
  MpComplex a, b, c, z, q;

  const MpComplex& param(Var v) const;
};

struct EvalConfig {
  int precision = 128;       // significand bits
  double tol = 1e-10;        // relative acceptance tolerance
  double tail_eps = 1e-20;   // truncation threshold (must stay below tol)
};

/// (x; q)_inf, truncated when |x q^j| < tail_eps (1 - |q|).
MpComplex qpoch_inf(const MpComplex& x, const MpComplex& q, const EvalConfig& cfg);

/// theta(x; q) = (x; q)_inf (q/x; q)_inf.
MpComplex theta(const MpComplex& x, const MpComplex& q, const EvalConfig& cfg);

/// The 2phi1 series at the point; requires |z| < 1 and c outside the
/// pole set q^{-N}.
MpComplex phi21(const EvalPoint& p, const EvalConfig& cfg);

MpComplex eval_monomial(const Monomial& m, const EvalPoint& p);
MpComplex eval_poly(const LaurentPoly& poly, const EvalPoint& p);
MpComplex eval_rational(const RationalFunc& f, const EvalPoint& p);

/// Rational part times the Pochhammer factors; a vanishing
/// negative-multiplicity factor raises std::domain_error naming it.
MpComplex eval_term(const QHypTerm& f, const EvalPoint& p, const EvalConfig& cfg);

/// The point with parameters remapped through M (in log coordinates),
/// so that f(M^{-1} .) evaluated at p equals f at transformed_point(M^{-1}, p).
EvalPoint transformed_point(const ParamMatrix& M, const EvalPoint& p);

struct SymmetryReport {
  int samples = 0;
  int resamples = 0;
  double max_rel_error = 0.0;
  bool pass = false;
};

/// Checks 2phi1(p) = eval_term(t.term, p) * 2phi1(t.mat^{-1}-point) at
/// random sample points, resampling when a transformed point leaves the
/// convergence domain.
SymmetryReport verify_symmetry(const Transformation& t, int samples, const EvalConfig& cfg,
                               std::uint64_t seed = 1);

struct GRatioCheck {
  std::string name;
  double rel_error = 0.0;
  bool pass = false;
};

struct GRatioReport {
  std::vector<GRatioCheck> checks;
  bool pass = false;
};

/// Checks the four shift ratios of the prefactor
/// g = (c/a, c/b, q^2/c; q)_inf / (c, q/a, q/b; q)_inf
///     * theta(ab; q) theta(z; q) / (theta(c/(ab); q) theta(c/z; q))
/// against their closed rational forms at the given point.
GRatioReport verify_g_ratios(const EvalPoint& p, const EvalConfig& cfg);

/// Deterministic sample point from the default distribution: a, b, c in
/// the disk of radius 0.9, z radius 0.5, |q| in [0.2, 0.6].
EvalPoint sample_point(std::uint64_t seed, const EvalConfig& cfg);

}  // namespace qheine
