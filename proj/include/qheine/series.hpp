#pragma once

#include <vector>

#include "qheine/diff_op.hpp"

namespace qheine {

/// Truncated power series in z with exact coefficients in (a,b,c,q).
struct FormalSeries {
  std::vector<RationalFunc> coeffs;  // coeffs[k] is the coefficient of z^k

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const {
    for (const auto& c : coeffs) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
};

/// The 2phi1 series to order K, built by the exact term recurrence
/// c_{k+1} = c_k (1-aq^k)(1-bq^k) / ((1-q^{k+1})(1-cq^k)).
FormalSeries phi21_series(int K);

/// D applied to S, coefficients of z^0..z^K. Coefficients of D whose
/// denominator has a vanishing z-constant term raise std::domain_error
/// (left-clear the operator first).
FormalSeries apply_to_series(const DiffOperator& D, const FormalSeries& S, int K);

/// Left multiplication by the lcm of coefficient denominators and a
/// monomial clearing negative z powers; preserves ideal membership.
DiffOperator clear_denominators(const DiffOperator& D);

/// Exact check that D annihilates every z-coefficient 0..K of 2phi1,
/// working with factored Pochhammer ratios (never expanding the series
/// coefficients). Requires polynomial coefficients; use
/// clear_denominators first.
bool annihilates_phi21(const DiffOperator& D, int K);

}  // namespace qheine
