#include "qheine/rational_func.hpp"

#include <algorithm>

namespace qheine {

RationalFunc::RationalFunc(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = LaurentPoly::zero();
    den_ = LaurentPoly::one();
    return;
  }
  auto [nc, nm] = make_primitive(num);
  auto [dc, dm] = make_primitive(den);
  LaurentPoly g = poly_gcd(num, den);
  if (g != LaurentPoly::one()) {
    num = *divide_exact(num, g);
    den = *divide_exact(den, g);
  }
  auto [nc2, nm2] = make_primitive(num);
  auto [dc2, dm2] = make_primitive(den);
  Rational scale = (nc * nc2) / (dc * dc2);
  Monomial mono = (nm * nm2) / (dm * dm2);
  num_ = num.scaled(scale).mul_monomial(mono);
  den_ = den;
}

RationalFunc RationalFunc::from_coprime(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  RationalFunc f;
  if (num.is_zero()) return f;
  auto [nc, nm] = make_primitive(num);
  auto [dc, dm] = make_primitive(den);
  f.num_ = num.scaled(nc / dc).mul_monomial(nm / dm);
  f.den_ = den;
  return f;
}

RationalFunc RationalFunc::from_poly(LaurentPoly p) {
  RationalFunc f;
  f.num_ = std::move(p);
  f.den_ = LaurentPoly::one();
  return f;
}

bool RationalFunc::is_one() const {
  return den_ == LaurentPoly::one() && num_ == LaurentPoly::one();
}

RationalFunc RationalFunc::operator-() const {
  RationalFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

namespace {

// a ± b with the classical common-denominator reduction: with
// g = gcd(d1, d2) and d1 = A g, d2 = B g, the sum n1 B + n2 A over
// A B g can only share factors of g with its denominator (any common
// irreducible dividing A or B would contradict gcd(n_i, d_i) = 1 and
// gcd(A, B) = 1).  This keeps every gcd call small and structured
// instead of reducing one gcd of two large products.
RationalFunc add_impl(const RationalFunc& a, const RationalFunc& b, bool subtract) {
  if (a.is_zero()) return subtract ? -b : b;
  if (b.is_zero()) return a;
  const LaurentPoly &d1 = a.den(), &d2 = b.den();
  LaurentPoly g = LaurentPoly::one(), A = d1, B = d2;
  if (d1 != LaurentPoly::one() && d2 != LaurentPoly::one()) {
    g = poly_gcd(d1, d2);
    if (g != LaurentPoly::one()) {
      A = *divide_exact(d1, g);
      B = *divide_exact(d2, g);
    }
  }
  LaurentPoly num = subtract ? a.num() * B - b.num() * A : a.num() * B + b.num() * A;
  if (num.is_zero()) return RationalFunc::zero();
  if (g != LaurentPoly::one()) {
    LaurentPoly h = poly_gcd(num, g);
    if (h != LaurentPoly::one()) {
      num = *divide_exact(num, h);
      g = *divide_exact(g, h);
    }
  }
  return RationalFunc::from_coprime(std::move(num), A * B * g);
}

}  // namespace

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
  return add_impl(a, b, false);
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) {
  return add_impl(a, b, true);
}

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunc::zero();
  // Both operands are reduced, so only the cross pairs can share
  // factors; cancelling them keeps the final gcd-free construction
  // valid and avoids a gcd between two large products.
  LaurentPoly n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
  if (d2 != LaurentPoly::one()) {
    LaurentPoly g = poly_gcd(n1, d2);
    if (g != LaurentPoly::one()) {
      n1 = *divide_exact(n1, g);
      d2 = *divide_exact(d2, g);
    }
  }
  if (d1 != LaurentPoly::one()) {
    LaurentPoly g = poly_gcd(n2, d1);
    if (g != LaurentPoly::one()) {
      n2 = *divide_exact(n2, g);
      d1 = *divide_exact(d1, g);
    }
  }
  return RationalFunc::from_coprime(n1 * n2, d1 * d2);
}

RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero rational function");
  return a * b.inverse();
}

RationalFunc RationalFunc::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero");
  return RationalFunc::from_coprime(den_, num_);
}

RationalFunc RationalFunc::pow(int n) const {
  if (n == 0) return one();
  RationalFunc base = n > 0 ? *this : inverse();
  int k = n > 0 ? n : -n;
  RationalFunc r = one();
  while (k > 0) {
    if (k & 1) r *= base;
    base = k > 1 ? base * base : base;
    k >>= 1;
  }
  return r;
}

RationalFunc RationalFunc::transformed(const std::array<std::array<long, 5>, 5>& T) const {
  // Unimodular monomial substitutions are ring automorphisms, so they
  // preserve coprimality of the reduced num/den pair; only the unit
  // normalization has to be redone.
  return from_coprime(num_.transformed(T), den_.transformed(T));
}

RationalFunc RationalFunc::shifted(const std::array<int, 4>& k) const {
  return from_coprime(num_.shifted(k), den_.shifted(k));
}

RationalFunc rf_normalize(const LaurentPoly& num, const LaurentPoly& den) {
  return RationalFunc(num, den);
}

RationalFunc substitute(const RationalFunc& f, Var v, const RationalFunc& value) {
  auto subst_poly = [&](const LaurentPoly& p) {
    RationalFunc acc = RationalFunc::zero();
    for (const auto& [d, coef] : p.by_var_degree(v)) {
      acc += RationalFunc::from_poly(coef) * value.pow(d);
    }
    return acc;
  };
  RationalFunc nden = subst_poly(f.den());
  if (nden.is_zero()) throw std::domain_error("substitution makes denominator vanish identically");
  return subst_poly(f.num()) / nden;
}

bool divides_at_qpower(const LaurentPoly& p, Var v, int j) {
  return p.substituted_qpower(v, -j).is_zero();
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rational(0);
  const mpz_class &n = r.get_num(), &d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  Rational s(sn, sd);
  s.canonicalize();
  return s;
}

bool exponents_even(const Monomial& m) {
  for (int x : m.e) {
    if (x % 2 != 0) return false;
  }
  return true;
}

Monomial half(const Monomial& m) {
  Monomial r;
  for (int i = 0; i < kNumVars; ++i) r.e[i] = m.e[i] / 2;
  return r;
}

LaurentPoly binomial(const Monomial& m1, const Rational& c1, const Monomial& m2,
                     const Rational& c2) {
  LaurentPoly b = LaurentPoly::term(m1, c1);
  b.add_term(m2, c2);
  return b;
}

std::optional<BinomialPairFactorization> finish(const LaurentPoly& p, LaurentPoly b1,
                                                LaurentPoly b2) {
  if (b1.num_terms() != 2 || b2.num_terms() != 2) return std::nullopt;
  auto [c1, m1] = make_primitive(b1);
  auto [c2, m2] = make_primitive(b2);
  LaurentPoly unit = LaurentPoly::term(m1 * m2, c1 * c2);
  if (unit * b1 * b2 != p) return std::nullopt;
  return BinomialPairFactorization{unit, b1, b2};
}

}  // namespace

std::optional<BinomialPairFactorization> binomial_pair_factor(const LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("binomial_pair_factor of zero");
  std::size_t s = p.num_terms();
  if (s < 2 || s > 4) return std::nullopt;

  std::vector<Monomial> T;
  std::vector<Rational> A;
  for (const auto& [m, c] : p.terms()) {
    T.push_back(m);
    A.push_back(c);
  }

  if (s == 2) {
    // Middle terms cancelled: p = (c1*M2*M3 + c2*M2)(d1*M3 + 1).
    Monomial ratio = T[0] / T[1];
    if (!exponents_even(ratio)) return std::nullopt;
    Monomial m3 = half(ratio);
    auto d1 = rational_sqrt(-A[0] / A[1]);
    if (!d1 || *d1 == 0) return std::nullopt;
    Rational c2 = A[1], c1 = -c2 * (*d1);
    LaurentPoly b1 = binomial(T[1] * m3, c1, T[1], c2);
    LaurentPoly b2 = binomial(m3, *d1, Monomial::one(), 1);
    return finish(p, b1, b2);
  }

  if (s == 3) {
    // Middle terms coincide: requires T2^2 = T1*T3.
    if (T[1] * T[1] != T[0] * T[2]) return std::nullopt;
    Monomial m1 = T[1], m2 = T[2], m3 = T[0] / T[1];
    // Coefficients solve a3 d^2 - a2 d + a1 = 0.
    auto disc = rational_sqrt(A[1] * A[1] - 4 * A[0] * A[2]);
    if (!disc) return std::nullopt;
    for (int sign : {1, -1}) {
      Rational d1 = (A[1] + sign * (*disc)) / (2 * A[2]);
      if (d1 == 0) continue;
      Rational c1 = A[1] - A[2] * d1;
      if (c1 == 0 || c1 * d1 != A[0]) continue;
      LaurentPoly b1 = binomial(m1, c1, m2, A[2]);
      LaurentPoly b2 = binomial(m3, d1, Monomial::one(), 1);
      if (auto f = finish(p, b1, b2)) return f;
    }
    return std::nullopt;
  }

  // s == 4: leading term is M1*M3, trailing M2*M4; the two middle terms
  // are {M1*M4, M2*M3} in one of two assignments.
  for (int pick : {1, 2}) {
    const Monomial &tm1 = T[pick], &tm2 = T[3 - pick];
    const Rational &am1 = A[pick], &am2 = A[3 - pick];
    if (T[0] * T[3] != tm1 * tm2) continue;
    Monomial m1 = tm1, m2 = T[3], m3 = T[0] / tm1;
    if (m2 * m3 != tm2) continue;
    Rational c1 = am1, c2 = A[3];
    Rational d1 = A[0] / c1;
    if (c2 * d1 != am2) continue;
    LaurentPoly b1 = binomial(m1, c1, m2, c2);
    LaurentPoly b2 = binomial(m3, d1, Monomial::one(), 1);
    if (auto f = finish(p, b1, b2)) return f;
  }
  return std::nullopt;
}

}  // namespace qheine
