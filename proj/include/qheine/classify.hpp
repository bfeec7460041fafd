#pragma once

#include "qheine/contiguous.hpp"

namespace qheine {

/// Conjectural Y = L^{-1} Z L: a nonidentity shift satisfying the six
/// inequalities |k_a| <= 1, |k_b| <= 1, |k_z| <= 1, |k_b - k_c| <= 1,
/// |k_a - k_c| <= 1, |k_a + k_b - k_c + k_z| <= 1.
struct CandidateY {
  ShiftOp shift;
};

bool satisfies_candidate_inequalities(const ShiftOp& s);

/// Exhaustive enumeration over the box (the inequalities force
/// |k_c| <= 2, which is asserted, not assumed). Sorted, deterministic.
std::vector<CandidateY> enumerate_candidates();

/// The representatives with k_a >= 0 and k_a >= k_b; every other
/// solution maps into this set by k_a -> -k_a or k_a <-> k_b.
std::vector<CandidateY> canonical_candidates();

/// Regression anchor: the classical list of candidate representatives
/// (contains one duplicated row, preserved verbatim and reported, never
/// silently corrected).
const std::vector<std::array<int, 4>>& expected_candidate_rows();

/// (az+bz-c-q)(aqz+bqz-c-q) / ((c-abz)q(1-z)) in canonical form.
const RationalFunc& eqjan3_lhs();

struct FilterResult {
  bool pass = false;
  RationalFunc witness;  // g Y(g) / (f Y(h)) in lowest terms
};

/// Synthesizes f Y + g + h Y^{-1} in the ideal and passes iff the
/// witness denominator factors as monomial x binomial x binomial (the
/// shape a monomial-preserving L cannot destroy).
FilterResult filter_candidate(const CandidateY& Y);

struct CandidateResult {
  ShiftOp shift;
  bool canonical = false;
  bool pass = false;
  RationalFunc witness;
};

struct ClassificationReport {
  std::vector<CandidateResult> results;  // sorted by shift
  int candidate_count = 0;
  std::vector<ShiftOp> survivors;                // all passing candidates
  std::vector<ShiftOp> survivors_mod_inversion;  // Y ~ Y^{-1} representatives
  bool survivors_match_expected = false;         // == {Z, AC, BC} mod inversion
  std::vector<std::array<int, 4>> missing_expected_rows;    // should be empty
  std::vector<std::array<int, 4>> duplicate_expected_rows;  // the verbatim duplicate
  double elapsed_seconds = 0.0;
};

/// Full search: enumerate, filter each candidate (in parallel), report
/// survivors. The survivor set modulo inversion must be {Z, AC, BC};
/// inverse candidates pass the same filter, as the witness for Y^{-1} is
/// the reindexed witness for Y.
ClassificationReport run_classification();

/// Closure of {t_h, t_ab} under the group law. Checks order 12, that
/// both generators have order 2 and that t_h t_ab has order 6; a defect
/// in canonical forms would show up as a closure exceeding the safety
/// bound of 100 elements.
const std::vector<Transformation>& heine_group();

/// True iff L fixes the eqjan3 left side; requires L Z L^{-1} = Z.
bool eqnow_invariance(const ParamMatrix& L);

}  // namespace qheine
