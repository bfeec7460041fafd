#pragma once

#include <random>

#include "qheine/expr_text.hpp"

namespace qheine::testutil {

inline const LaurentPoly& P(const char* text) {
  static std::map<std::string, LaurentPoly> cache;
  auto [it, inserted] = cache.try_emplace(text);
  if (inserted) it->second = parse_poly(text);
  return it->second;
}

inline RationalFunc RF(const char* text) { return parse_rational_func(text); }

/// Random sparse Laurent polynomial: up to `terms` terms, exponents in
/// [-emax, emax], small integer coefficients. Never returns zero.
inline LaurentPoly random_poly(std::mt19937_64& rng, int terms = 3, int emax = 2) {
  std::uniform_int_distribution<int> nterms(1, terms);
  std::uniform_int_distribution<int> expo(-emax, emax);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (;;) {
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      for (int v = 0; v < kNumVars; ++v) m.e[v] = expo(rng);
      int c = coef(rng);
      if (c != 0) p.add_term(m, c);
    }
    if (!p.is_zero()) return p;
  }
}

inline RationalFunc random_rational(std::mt19937_64& rng, int terms = 3, int emax = 2) {
  return RationalFunc(random_poly(rng, terms, emax), random_poly(rng, terms, emax));
}

}  // namespace qheine::testutil
