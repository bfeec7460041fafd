#pragma once

#include <array>
#include <string>

#include "qheine/rational_func.hpp"

namespace qheine {

/// Element of G: a 5x5 unimodular integer matrix with bottom row
/// (0,0,0,0,1), acting on the logarithms of (a,b,c,z,q).
class ParamMatrix {
 public:
  using Entries = std::array<std::array<long, 5>, 5>;

  ParamMatrix() : ParamMatrix(identity_entries()) {}
  explicit ParamMatrix(const Entries& m);  // validates invariants

  static ParamMatrix identity() { return ParamMatrix(); }

  const Entries& entries() const { return m_; }
  long at(int i, int j) const { return m_[i][j]; }

  ParamMatrix operator*(const ParamMatrix& o) const;
  ParamMatrix inverse() const;
  bool operator==(const ParamMatrix& o) const { return m_ == o.m_; }
  bool operator!=(const ParamMatrix& o) const { return m_ != o.m_; }

  bool is_identity() const { return m_ == identity_entries(); }

  /// Exponent transform for the function action f -> f(M^{-1} .):
  /// monomial exponents map by (M^{-1})^T.
  Entries function_exponent_map() const;

 private:
  static Entries identity_entries();
  Entries m_;
};

long det5(const ParamMatrix::Entries& m);

/// Element of the shift subgroup N, identified with Z^4 via
/// M_{k_a,k_b,k_c,k_z}. Acts on functions as var_i -> var_i q^{k_i}.
struct ShiftOp {
  std::array<int, 4> k{};

  static ShiftOp identity() { return ShiftOp{}; }
  static ShiftOp A(int n = 1) { return ShiftOp{{n, 0, 0, 0}}; }
  static ShiftOp B(int n = 1) { return ShiftOp{{0, n, 0, 0}}; }
  static ShiftOp C(int n = 1) { return ShiftOp{{0, 0, n, 0}}; }
  static ShiftOp Z(int n = 1) { return ShiftOp{{0, 0, 0, n}}; }

  bool is_identity() const { return k == std::array<int, 4>{}; }
  int degree() const;

  ShiftOp operator*(const ShiftOp& o) const {
    return ShiftOp{{k[0] + o.k[0], k[1] + o.k[1], k[2] + o.k[2], k[3] + o.k[3]}};
  }
  ShiftOp inverse() const { return ShiftOp{{-k[0], -k[1], -k[2], -k[3]}}; }
  bool operator==(const ShiftOp& o) const { return k == o.k; }
  bool operator!=(const ShiftOp& o) const { return k != o.k; }
  bool operator<(const ShiftOp& o) const { return k < o.k; }

  ParamMatrix to_matrix() const;

  /// P(f): var_i -> var_i q^{k_i}.
  RationalFunc apply(const RationalFunc& f) const { return f.shifted(k); }
  LaurentPoly apply(const LaurentPoly& p) const { return p.shifted(k); }
};

/// Recovers a ShiftOp from a matrix of the N shape; throws otherwise.
ShiftOp shift_from_matrix(const ParamMatrix& M);
bool is_shift_matrix(const ParamMatrix& M);

Monomial act_on_monomial(const ParamMatrix& M, const Monomial& x);
RationalFunc act_on_function(const ParamMatrix& M, const RationalFunc& f);
LaurentPoly act_on_poly(const ParamMatrix& M, const LaurentPoly& p);

/// L P L^{-1}, which always lands back in N.
ShiftOp conjugate_shift(const ParamMatrix& L, const ShiftOp& P);

/// The matrix part of Heine's transformation, Eq. arguments
/// (a,b,c,z) -> (c/b, z, az, b).
const ParamMatrix& heine_matrix();
/// The a <-> b swap.
const ParamMatrix& ab_swap_matrix();

/// Text form `A^i B^j C^k Z^l` (`1` for the identity).
std::string shift_to_string(const ShiftOp& s);
/// Parses the text form or a bracketed 4-vector `[i,j,k,l]`.
ShiftOp parse_shift(const std::string& text);

}  // namespace qheine
