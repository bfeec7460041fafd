#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qheine {

/// Fixed variable order used everywhere, including serialization.
inline constexpr int kNumVars = 5;
enum Var : int { VarA = 0, VarB = 1, VarC = 2, VarZ = 3, VarQ = 4 };
extern const std::array<const char*, kNumVars> kVarNames;

using Rational = mpq_class;

/// Monomial a^i b^j c^k z^l q^m with Laurent exponents.
struct Monomial {
  std::array<int, kNumVars> e{};

  static Monomial one() { return Monomial{}; }
  static Monomial var(Var v, int exp = 1) {
    Monomial m;
    m.e[v] = exp;
    return m;
  }

  bool is_one() const {
    for (int x : e)
      if (x != 0) return false;
    return true;
  }
  int total_degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  Monomial inverse() const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = -e[i];
    return r;
  }
  Monomial pow(int n) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] * n;
    return r;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

/// Graded-lexicographic comparison; > 0 when a > b.
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return mono_cmp(a, b) > 0;
  }
};

/// Sparse Laurent polynomial over exact rationals. No stored coefficient
/// is zero; terms are kept in descending graded-lex order so begin() is
/// the leading term.
class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonoGreater>;

  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return constant(1); }
  static LaurentPoly constant(const Rational& c);
  static LaurentPoly variable(Var v, int exp = 1);
  static LaurentPoly term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t num_terms() const { return terms_.size(); }

  const TermMap& terms() const { return terms_; }

  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;
  Rational coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly mul_monomial(const Monomial& m) const;

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

  int min_exponent(Var v) const;
  int max_exponent(Var v) const;

  /// Minimal exponent vector over all terms (identity for the zero poly).
  Monomial min_exponents() const;

  /// Applies the exponent-linear map e -> T e to every monomial.
  /// T must be unimodular for this to be a ring automorphism.
  LaurentPoly transformed(const std::array<std::array<long, 5>, 5>& T) const;

  /// var_i -> var_i * q^{k_i} for the four parameter variables.
  LaurentPoly shifted(const std::array<int, 4>& k) const;

  /// Exact substitution var -> q^j.
  LaurentPoly substituted_qpower(Var v, int j) const;

  /// Signed content: dividing by it yields integer coprime coefficients
  /// with positive leading coefficient.
  Rational content() const;

  /// Decomposition by the exponent of one variable.
  std::map<int, LaurentPoly> by_var_degree(Var v) const;

 private:
  TermMap terms_;
};

/// Exact division in the Laurent ring; nullopt when not divisible.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& p, const LaurentPoly& d);

/// GCD in the Laurent ring, canonical: no negative exponents, integer
/// coprime coefficients, positive leading coefficient. Monomials are
/// units, so the result is content- and unit-free.
LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q);

/// Strips the monomial-times-rational unit: p = unit * out with out
/// canonical as in poly_gcd. Requires p != 0; returns {coeff, monomial}.
std::pair<Rational, Monomial> make_primitive(LaurentPoly& p);

}  // namespace qheine
