#pragma once

#include <array>
#include <mutex>
#include <vector>

#include "qheine/series.hpp"

namespace qheine {

/// Default truncation order for series verification, exceeding twice the
/// maximum z-degree of any generator or synthesized relation coefficient
/// exercised by the test suite.
inline constexpr int kDefaultTruncation = 24;

/// The seven generators of the annihilator ideal, in the fixed order
/// P_a, P_b, P_c, Q_a, Q_b, Q_c, R_z.
const std::vector<DiffOperator>& generators();
extern const std::array<const char*, 7> kGeneratorNames;

/// True iff every z-coefficient 0..K of D applied to the 2phi1 series
/// vanishes identically. Non-polynomial coefficients are left-cleared
/// automatically (a unit multiple, so ideal membership is unchanged).
bool verify_annihilates(const DiffOperator& D, int K);

/// Relation p1 X1 + p2 X2 + p3 X3 in the annihilator ideal, with
/// coprime polynomial coefficients and canonical sign.
struct ThreeTermRelation {
  std::array<ShiftOp, 3> shifts;
  std::array<LaurentPoly, 3> coeffs;

  DiffOperator to_operator() const;
};

/// Relation p_x X + p_z Z + p_1 in the ideal (trivial for X in {1, Z}).
struct NormalFormZ1 {
  LaurentPoly p_x, p_z, p_1;
};

/// Synthesis engine for contiguous relations. The memo table is the only
/// state and is guarded by a mutex, so one engine may be shared across
/// threads.
class RelationEngine {
 public:
  /// Induction on deg X: factor X = S Y with S a unit shift chosen to
  /// reduce the largest |k| coordinate (ties in a,b,c,z order), then
  /// combine S*nf(Y), Z*base(S), Z*R_z and base(S) to eliminate the
  /// SZ, Z^2 and S terms. Results are normalized before memoization.
  NormalFormZ1 normal_form_to_Z1(const ShiftOp& X);

  /// Unique three-term relation for distinct shifts.
  ThreeTermRelation three_term(const ShiftOp& X1, const ShiftOp& X2, const ShiftOp& X3);

  /// Same relation derived through an independent elimination order
  /// (pivoting on X1 instead of X3); must agree after normalization.
  ThreeTermRelation three_term_alt(const ShiftOp& X1, const ShiftOp& X2, const ShiftOp& X3);

  /// Exact membership decision by repeated three-term elimination of the
  /// maximal-degree support shift; accepts iff the residual of length
  /// <= 2 is zero.
  bool ideal_membership(const DiffOperator& D);

 private:
  /// Raw (unnormalized) coefficients; if `factors0` is non-null it
  /// receives a factorization of entry 0, used to speed up the joint
  /// gcd in normalization.
  std::array<LaurentPoly, 3> three_term_core(const ShiftOp& X1, const ShiftOp& X2,
                                             const ShiftOp& X3,
                                             std::vector<LaurentPoly>* factors0 = nullptr);

  std::map<ShiftOp, NormalFormZ1> memo_;
  std::mutex mu_;
};

/// Shared engine (memo warm across callers).
RelationEngine& relation_engine();

/// Divides the triple by its joint polynomial, monomial and rational
/// content; sign is fixed by making the trailing (graded-lex smallest)
/// coefficient of the first nonzero entry positive.
void normalize_triple(std::array<LaurentPoly, 3>& p);

struct DivisibilityClaim {
  Var var;
  int poly_index;  // 0,1,2 after sorting by descending k_var
  int j;           // tested factor is var - q^{-j}
  bool expect_divides;
  bool divides;
  bool ok() const { return expect_divides == divides; }
};

struct DivisibilityReport {
  std::vector<DivisibilityClaim> claims;
  bool all_ok = true;
};

/// Checks the predicted (var - q^{-j}) divisibility ranges of the
/// coefficients for var in {a, b}; requires the three k_a (or k_b)
/// values pairwise distinct, else the claims are inapplicable.
DivisibilityReport divisibility_pattern(const ThreeTermRelation& rel);

}  // namespace qheine
