#pragma once

#include <optional>
#include <tuple>

#include "qheine/poly.hpp"

namespace qheine {

/// Element of the field Q(a,b,c,z,q), kept in canonical form:
/// gcd(num, den) is a unit, den has nonnegative exponents, integer
/// coprime coefficients and positive graded-lex leading coefficient.
/// The monomial unit and any rational scale live in the numerator.
class RationalFunc {
 public:
  RationalFunc() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}
  RationalFunc(LaurentPoly num, LaurentPoly den);  // normalizes

  static RationalFunc zero() { return RationalFunc(); }
  static RationalFunc one() { return from_poly(LaurentPoly::one()); }
  static RationalFunc constant(const Rational& c) { return from_poly(LaurentPoly::constant(c)); }
  static RationalFunc from_poly(LaurentPoly p);
  /// Trusted constructor for operands already known to be coprime;
  /// normalizes units and content but skips the gcd computation.
  static RationalFunc from_coprime(LaurentPoly num, LaurentPoly den);
  static RationalFunc variable(Var v, int exp = 1) {
    return from_poly(LaurentPoly::variable(v, exp));
  }
  static RationalFunc monomial(const Monomial& m, const Rational& c = 1) {
    return from_poly(LaurentPoly::term(m, c));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_ == LaurentPoly::one(); }

  RationalFunc operator-() const;
  friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b);
  RationalFunc& operator+=(const RationalFunc& o) { return *this = *this + o; }
  RationalFunc& operator-=(const RationalFunc& o) { return *this = *this - o; }
  RationalFunc& operator*=(const RationalFunc& o) { return *this = *this * o; }
  RationalFunc& operator/=(const RationalFunc& o) { return *this = *this / o; }

  RationalFunc inverse() const;
  RationalFunc pow(int n) const;

  bool operator==(const RationalFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunc& o) const { return !(*this == o); }

  /// Applies the exponent-linear substitution e -> T e to both sides.
  RationalFunc transformed(const std::array<std::array<long, 5>, 5>& T) const;

  /// var_i -> var_i q^{k_i} for (a, b, c, z).
  RationalFunc shifted(const std::array<int, 4>& k) const;

 private:
  LaurentPoly num_, den_;
};

/// rf_normalize of the module contract. Throws std::invalid_argument on a
/// zero denominator.
RationalFunc rf_normalize(const LaurentPoly& num, const LaurentPoly& den);

/// Exact substitution of one variable by a rational function. Throws
/// std::domain_error when the denominator vanishes identically.
RationalFunc substitute(const RationalFunc& f, Var v, const RationalFunc& value);

/// True iff (var - q^{-j}) divides p, decided by exact substitution.
bool divides_at_qpower(const LaurentPoly& p, Var v, int j);

struct BinomialPairFactorization {
  LaurentPoly unit;  // monomial times rational
  LaurentPoly b1;    // sum of exactly two monomials
  LaurentPoly b2;
};

/// Factors p as unit * b1 * b2 with both b_i binomials, when such a
/// factorization exists and the expanded support has at most 4 terms.
/// Complete on support <= 4; larger supports return nullopt.
std::optional<BinomialPairFactorization> binomial_pair_factor(const LaurentPoly& p);

}  // namespace qheine
