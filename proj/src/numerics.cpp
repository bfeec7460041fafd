#include "qheine/numerics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qheine/expr_text.hpp"

namespace qheine {

namespace {

MpComplex make_c(double re, double im, int prec) {
  return MpComplex(mpf_class(re, prec), mpf_class(im, prec));
}

MpComplex one_c(int prec) { return make_c(1.0, 0.0, prec); }

}  // namespace

MpComplex MpComplex::pow(int n) const {
  int prec = static_cast<int>(re.get_prec());
  MpComplex base = *this;
  if (n < 0) base = one_c(prec) / base;
  int k = n < 0 ? -n : n;
  MpComplex r = one_c(prec);
  while (k > 0) {
    if (k & 1) r *= base;
    if (k > 1) base *= base;
    k >>= 1;
  }
  return r;
}

const MpComplex& EvalPoint::param(Var v) const {
  switch (v) {
    case VarA: return a;
    case VarB: return b;
    case VarC: return c;
    case VarZ: return z;
    default: return q;
  }
}

MpComplex qpoch_inf(const MpComplex& x, const MpComplex& q, const EvalConfig& cfg) {
  mpf_class qa = q.abs();
  if (qa >= 1) throw std::domain_error("qpoch_inf: |q| must be < 1");
  int prec = cfg.precision;
  mpf_class cutoff(cfg.tail_eps, prec);
  cutoff *= (1 - qa);
  MpComplex prod = one_c(prec);
  MpComplex xq = x;
  for (int j = 0; j < 1000000; ++j) {
    if (xq.abs() < cutoff) return prod;
    prod *= one_c(prec) - xq;
    xq *= q;
  }
  throw std::runtime_error("qpoch_inf: product did not converge");
}

MpComplex theta(const MpComplex& x, const MpComplex& q, const EvalConfig& cfg) {
  if (x.abs2() == 0) throw std::domain_error("theta: x must be nonzero");
  return qpoch_inf(x, q, cfg) * qpoch_inf(q / x, q, cfg);
}

MpComplex phi21(const EvalPoint& p, const EvalConfig& cfg) {
  int prec = cfg.precision;
  if (p.z.abs() >= 1) throw std::domain_error("phi21: |z| must be < 1");
  if (p.q.abs() >= 1) throw std::domain_error("phi21: |q| must be < 1");
  mpf_class tiny(1e-30, prec);
  const MpComplex one = one_c(prec);
  MpComplex sum = one, term = one;
  MpComplex qk = one;  // q^k
  mpf_class eps(cfg.tail_eps, prec);
  for (int k = 0; k < 1000000; ++k) {
    MpComplex dc = one - p.c * qk;
    if (dc.abs() < tiny) throw std::domain_error("phi21: c lies in the pole set q^{-N}");
    MpComplex qk1 = qk * p.q;  // q^{k+1}
    term = term * (one - p.a * qk) * (one - p.b * qk) / ((one - qk1) * dc) * p.z;
    qk = qk1;
    sum += term;
    if (term.abs() < eps * (1 + sum.abs())) return sum;
  }
  throw std::runtime_error("phi21: series did not converge");
}

MpComplex eval_monomial(const Monomial& m, const EvalPoint& p) {
  int prec = static_cast<int>(p.q.re.get_prec());
  MpComplex r = one_c(prec);
  for (int v = 0; v < kNumVars; ++v) {
    if (m.e[v] != 0) r *= p.param(static_cast<Var>(v)).pow(m.e[v]);
  }
  return r;
}

MpComplex eval_poly(const LaurentPoly& poly, const EvalPoint& p) {
  int prec = static_cast<int>(p.q.re.get_prec());
  MpComplex r = make_c(0.0, 0.0, prec);
  for (const auto& [m, c] : poly.terms()) {
    mpf_class cf(0, prec);
    cf = mpf_class(c.get_num(), prec) / mpf_class(c.get_den(), prec);
    r += eval_monomial(m, p) * MpComplex(cf, mpf_class(0, prec));
  }
  return r;
}

MpComplex eval_rational(const RationalFunc& f, const EvalPoint& p) {
  MpComplex den = eval_poly(f.den(), p);
  if (den.abs2() == 0) throw std::domain_error("eval_rational: denominator vanishes at point");
  return eval_poly(f.num(), p) / den;
}

MpComplex eval_term(const QHypTerm& f, const EvalPoint& p, const EvalConfig& cfg) {
  int prec = cfg.precision;
  MpComplex r = eval_rational(f.rat(), p);
  mpf_class tiny(1e-30, prec);
  for (const auto& [base, mult] : f.poch()) {
    MpComplex x = eval_monomial(base, p);
    MpComplex v = qpoch_inf(x, p.q, cfg);
    if (mult < 0 && v.abs() < tiny)
      throw std::domain_error("eval_term: pole at Pochhammer factor with base " +
                              render_poly(LaurentPoly::term(base, 1)));
    r *= v.pow(mult);
  }
  return r;
}

EvalPoint transformed_point(const ParamMatrix& M, const EvalPoint& p) {
  EvalPoint r = p;
  MpComplex* slots[5] = {&r.a, &r.b, &r.c, &r.z, &r.q};
  for (int i = 0; i < kNumVars; ++i) {
    Monomial img = act_on_monomial(M, Monomial::var(static_cast<Var>(i)));
    *slots[i] = eval_monomial(img, p);
  }
  return r;
}

EvalPoint sample_point(std::uint64_t seed, const EvalConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disk = [&](double rmin, double rmax) {
    double r = rmin + (rmax - rmin) * std::sqrt(unit(rng));
    double t = 2.0 * M_PI * unit(rng);
    return make_c(r * std::cos(t), r * std::sin(t), cfg.precision);
  };
  EvalPoint p;
  p.a = disk(0.05, 0.9);
  p.b = disk(0.05, 0.9);
  p.c = disk(0.1, 0.9);
  p.z = disk(0.05, 0.5);
  p.q = disk(0.2, 0.6);
  return p;
}

namespace {

bool point_admissible(const EvalPoint& p, double margin = 0.98) {
  return p.q.abs() < margin && p.z.abs() < margin;
}

}  // namespace

SymmetryReport verify_symmetry(const Transformation& t, int samples, const EvalConfig& cfg,
                               std::uint64_t seed) {
  SymmetryReport report;
  report.samples = samples;
  ParamMatrix minv = t.mat.inverse();
  mpf_class maxerr(0, cfg.precision);
  for (int s = 0; s < samples; ++s) {
    EvalPoint p;
    EvalPoint pt;
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      p = sample_point(seed * 1000003 + s * 1009 + attempt, cfg);
      pt = transformed_point(minv, p);
      if (!point_admissible(pt)) {
        ++report.resamples;
        continue;
      }
      try {
        MpComplex lhs = phi21(p, cfg);
        MpComplex rhs = eval_term(t.term, p, cfg) * phi21(pt, cfg);
        mpf_class rel = (lhs - rhs).abs() / lhs.abs();
        if (rel > maxerr) maxerr = rel;
        ok = true;
      } catch (const std::domain_error&) {
        ++report.resamples;
      }
    }
    if (!ok) throw std::runtime_error("verify_symmetry: persistent domain violations");
  }
  report.max_rel_error = maxerr.get_d();
  report.pass = report.max_rel_error < cfg.tol;
  return report;
}

GRatioReport verify_g_ratios(const EvalPoint& p, const EvalConfig& cfg) {
  auto g_at = [&](const EvalPoint& pt) {
    MpComplex num = qpoch_inf(pt.c / pt.a, pt.q, cfg) * qpoch_inf(pt.c / pt.b, pt.q, cfg) *
                    qpoch_inf(pt.q * pt.q / pt.c, pt.q, cfg);
    MpComplex den = qpoch_inf(pt.c, pt.q, cfg) * qpoch_inf(pt.q / pt.a, pt.q, cfg) *
                    qpoch_inf(pt.q / pt.b, pt.q, cfg);
    MpComplex ab = pt.a * pt.b;
    MpComplex tnum = theta(ab, pt.q, cfg) * theta(pt.z, pt.q, cfg);
    MpComplex tden = theta(pt.c / ab, pt.q, cfg) * theta(pt.c / pt.z, pt.q, cfg);
    return num / den * tnum / tden;
  };

  int prec = cfg.precision;
  MpComplex one = one_c(prec);
  MpComplex g0 = g_at(p);
  GRatioReport report;
  report.pass = true;

  auto check = [&](const std::string& name, Var v, const MpComplex& expected) {
    EvalPoint ps = p;
    MpComplex* slot = &ps.a;
    switch (v) {
      case VarA: slot = &ps.a; break;
      case VarB: slot = &ps.b; break;
      case VarC: slot = &ps.c; break;
      case VarZ: slot = &ps.z; break;
      default: break;
    }
    *slot = *slot * p.q;
    MpComplex actual = g_at(ps) / g0;
    GRatioCheck ck;
    ck.name = name;
    ck.rel_error = mpf_class((actual - expected).abs() / expected.abs()).get_d();
    ck.pass = ck.rel_error < cfg.tol;
    report.pass = report.pass && ck.pass;
    report.checks.push_back(ck);
  };

  check("Ag/g", VarA, (p.c - p.a * p.q) / (p.c * (one - p.a)));
  check("Bg/g", VarB, (p.c - p.b * p.q) / (p.c * (one - p.b)));
  check("Cg/g", VarC,
        p.c * (p.c - p.q) * (one - p.c) / (p.z * (p.c - p.a) * (p.c - p.b)));
  check("Zg/g", VarZ, p.q / p.c);
  return report;
}

}  // namespace qheine
