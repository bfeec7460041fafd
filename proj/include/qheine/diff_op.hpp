#pragma once

#include <map>

#include "qheine/qterm.hpp"

namespace qheine {

/// Element of the smash product D = R # N: a finite sum of rational
/// coefficients times shift operators. No stored coefficient is zero.
class DiffOperator {
 public:
  using TermMap = std::map<ShiftOp, RationalFunc>;

  DiffOperator() = default;

  static DiffOperator zero() { return DiffOperator(); }
  static DiffOperator identity() { return term(ShiftOp::identity(), RationalFunc::one()); }
  static DiffOperator term(const ShiftOp& s, RationalFunc coeff);
  static DiffOperator shift(const ShiftOp& s) { return term(s, RationalFunc::one()); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t length() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  RationalFunc coeff(const ShiftOp& s) const;

  void add_term(const ShiftOp& s, const RationalFunc& c);

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }

  /// Noncommutative product: (r P)(s Q) = r P(s) PQ.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);

  /// Left multiplication by a rational function.
  DiffOperator scaled(const RationalFunc& r) const;

  bool operator==(const DiffOperator& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffOperator& o) const { return terms_ != o.terms_; }

 private:
  TermMap terms_;
};

DiffOperator op_multiply(const DiffOperator& a, const DiffOperator& b);

/// Conjugation t D t^{-1} for t = h L: each term r P maps to
/// L(r) * h / P'(h) at P' = L P L^{-1}.
DiffOperator conjugate_op(const Transformation& t, const DiffOperator& D);

}  // namespace qheine
