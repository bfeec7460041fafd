#pragma once

#include <map>

#include "qheine/param_group.hpp"

namespace qheine {

/// Finite q-Pochhammer symbol (x;q)_m as an exact rational function,
/// for a monomial argument and any integer m.
RationalFunc qpochhammer_finite(const Monomial& x, int m);

/// q-hypergeometric term of the computable subclass
/// rational * prod (base; q)_inf^mult with monomial bases. Canonical
/// form: every base has q-exponent 0 (q-powers folded into the rational
/// part), bases distinct, multiplicities nonzero.
class QHypTerm {
 public:
  QHypTerm() : rat_(RationalFunc::one()) {}
  explicit QHypTerm(RationalFunc rat) : rat_(std::move(rat)) { check_nonzero(); }
  QHypTerm(RationalFunc rat, const std::map<Monomial, int, MonoGreater>& poch);

  static QHypTerm one() { return QHypTerm(); }
  /// (base; q)_inf^mult as a term.
  static QHypTerm pochhammer(const Monomial& base, int mult = 1);

  const RationalFunc& rat() const { return rat_; }
  const std::map<Monomial, int, MonoGreater>& poch() const { return poch_; }

  QHypTerm operator*(const QHypTerm& o) const;
  QHypTerm inverse() const;
  bool operator==(const QHypTerm& o) const { return rat_ == o.rat_ && poch_ == o.poch_; }
  bool operator!=(const QHypTerm& o) const { return !(*this == o); }
  bool is_one() const { return poch_.empty() && rat_.is_one(); }

 private:
  void insert_factor(Monomial base, int mult);
  void check_nonzero() const {
    if (rat_.is_zero()) throw std::invalid_argument("q-hypergeometric term must be nonzero");
  }
  RationalFunc rat_;
  std::map<Monomial, int, MonoGreater> poch_;
};

/// P(f)/f, the defining rational witness of membership in H.
RationalFunc shift_ratio(const QHypTerm& f, const ShiftOp& P);

/// L(f) = f composed with L^{-1}, re-canonicalized.
QHypTerm act_on_term(const ParamMatrix& L, const QHypTerm& f);

/// Element f L of the transformation group T = H x| G.
struct Transformation {
  QHypTerm term;
  ParamMatrix mat;

  static Transformation identity() { return {QHypTerm::one(), ParamMatrix::identity()}; }
  Transformation inverse() const;
};

/// Group law (f1 L1)(f2 L2) = (f1 * L1(f2)) (L1 L2).
Transformation trans_multiply(const Transformation& t1, const Transformation& t2);
bool trans_equal(const Transformation& t1, const Transformation& t2);

/// Heine's transformation t_h with prefactor (b,az;q)_inf/(c,z;q)_inf.
const Transformation& heine_transformation();
/// The a <-> b swap t_ab.
const Transformation& ab_swap_transformation();

}  // namespace qheine
