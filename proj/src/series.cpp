#include "qheine/series.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <stdexcept>

namespace qheine {

FormalSeries phi21_series(int K) {
  if (K < 0) throw std::invalid_argument("phi21_series: negative order");
  FormalSeries s;
  LaurentPoly num = LaurentPoly::one();
  LaurentPoly den = LaurentPoly::one();
  auto binom = [](Var v, int j) {
    // 1 - v q^j (1 - q^{j+1} for v == VarQ).
    Monomial m = Monomial::var(v);
    m.e[VarQ] += j;
    LaurentPoly p = LaurentPoly::one();
    p.add_term(m, -1);
    return p;
  };
  s.coeffs.push_back(RationalFunc::one());
  for (int k = 0; k + 1 <= K; ++k) {
    num *= binom(VarA, k) * binom(VarB, k);
    den *= binom(VarQ, k) * binom(VarC, k);
    s.coeffs.push_back(RationalFunc::from_coprime(num, den));
  }
  return s;
}

FormalSeries apply_to_series(const DiffOperator& D, const FormalSeries& S, int K) {
  if (K < 0) throw std::invalid_argument("apply_to_series: negative order");
  FormalSeries out;
  out.coeffs.assign(K + 1, RationalFunc::zero());

  for (const auto& [P, r] : D.terms()) {
    auto nparts = r.num().by_var_degree(VarZ);
    auto dparts = r.den().by_var_degree(VarZ);
    auto d0_it = dparts.find(0);
    if (d0_it == dparts.end())
      throw std::domain_error(
          "apply_to_series: denominator has vanishing z-constant term; clear denominators first");
    int lo = nparts.begin()->first;
    if (S.order() < K - std::min(lo, 0))
      throw std::invalid_argument("apply_to_series: series order too small for z^" +
                                  std::to_string(lo) + " coefficient");

    // Invert the denominator as a power series in z.
    int kd = K - std::min(lo, 0);
    std::vector<RationalFunc> inv(kd + 1, RationalFunc::zero());
    RationalFunc inv0 = RationalFunc::from_poly(d0_it->second).inverse();
    inv[0] = inv0;
    for (int i = 1; i <= kd; ++i) {
      RationalFunc acc = RationalFunc::zero();
      for (const auto& [j, dj] : dparts) {
        if (j >= 1 && j <= i) acc += RationalFunc::from_poly(dj) * inv[i - j];
      }
      inv[i] = -acc * inv0;
    }

    // The coefficient itself as a z-series, indices lo..K.
    std::map<int, RationalFunc> rz;
    for (const auto& [u, nu] : nparts) {
      RationalFunc nuf = RationalFunc::from_poly(nu);
      for (int v = 0; u + v <= K; ++v) {
        if (inv[v].is_zero()) continue;
        RationalFunc piece = nuf * inv[v];
        auto [it, ins] = rz.emplace(u + v, piece);
        if (!ins) it->second += piece;
      }
    }

    // P applied to the series: c_m -> P(c_m) q^{m k_z}.
    int mmax = K - std::min(lo, 0);
    std::vector<RationalFunc> sc(mmax + 1);
    for (int m = 0; m <= mmax; ++m) {
      sc[m] = S.coeffs[m].shifted(P.k);
      if (P.k[3] != 0)
        sc[m] *= RationalFunc::monomial(Monomial::var(VarQ, m * P.k[3]));
    }

    for (const auto& [i, ri] : rz) {
      if (ri.is_zero()) continue;
      for (int n = std::max(i, 0); n <= K; ++n) {
        int m = n - i;
        if (m > mmax) break;
        out.coeffs[n] += ri * sc[m];
      }
    }
  }
  return out;
}

DiffOperator clear_denominators(const DiffOperator& D) {
  if (D.is_zero()) return D;
  LaurentPoly lcm = LaurentPoly::one();
  for (const auto& [s, c] : D.terms()) {
    if (c.is_polynomial()) continue;
    LaurentPoly g = poly_gcd(lcm, c.den());
    lcm *= *divide_exact(c.den(), g);
  }
  DiffOperator out = lcm == LaurentPoly::one() ? D : D.scaled(RationalFunc::from_poly(lcm));
  int minz = 0;
  for (const auto& [s, c] : out.terms()) minz = std::min(minz, c.num().min_exponent(VarZ));
  if (minz < 0) out = out.scaled(RationalFunc::variable(VarZ, -minz));
  return out;
}

namespace {

using FactorMap = std::map<Monomial, int, MonoGreater>;

// Multiplies in the factors of prod_{j in [lo, hi)} (1 - base q^j)^mult.
void add_range(FactorMap& f, const Monomial& base, int lo, int hi, int mult) {
  for (int j = lo; j < hi; ++j) {
    Monomial x = base;
    x.e[VarQ] += j;
    auto [it, ins] = f.emplace(x, mult);
    if (!ins) {
      it->second += mult;
      if (it->second == 0) f.erase(it);
    }
  }
}

// (base; q)_len^mult with the standard all-integer index convention.
void add_poch(FactorMap& f, const Monomial& base, int len, int mult) {
  if (len >= 0)
    add_range(f, base, 0, len, mult);
  else
    add_range(f, base, len, 0, -mult);
}

struct RatioTerm {
  LaurentPoly poly;  // z-homogeneous coefficient, unit q-power folded in
  FactorMap fac;     // binomial factors, t occupying the z slot
};

// Flat packed-exponent accumulator: 12 bits per exponent, biased, so a
// monomial product is a key addition and the whole sum lives in one
// hash map instead of re-built ordered maps per binomial factor.
constexpr int kPackBias = 2048;

std::uint64_t pack_key(const Monomial& m) {
  std::uint64_t k = 0;
  for (int i = 0; i < kNumVars; ++i) {
    int v = m.e[i] + kPackBias;
    if (v < 0 || v >= 4096) throw std::overflow_error("monomial exponent out of packing range");
    k = (k << 12) | static_cast<std::uint64_t>(v);
  }
  return k;
}

Monomial unpack_key(std::uint64_t k) {
  Monomial m;
  for (int i = kNumVars - 1; i >= 0; --i) {
    m.e[i] = static_cast<int>(k & 0xfff) - kPackBias;
    k >>= 12;
  }
  return m;
}

using Acc = std::unordered_map<std::uint64_t, Rational>;

// In-place multiply by (1 - x).
void mul_one_minus(Acc& acc, const Monomial& x) {
  const std::uint64_t d = pack_key(x) - pack_key(Monomial::one());
  Acc next;
  next.reserve(acc.size() * 2);
  for (const auto& [k, c] : acc) {
    if (c == 0) continue;
    next[k] += c;
    next[k + d] -= c;
  }
  acc.swap(next);
}

// Sums the terms over the syntactic common denominator (max negative
// multiplicity per binomial) and returns the numerator; the sum of the
// fractions is zero iff the result is zero. No polynomial gcds.
LaurentPoly combine_over_common_den(const std::vector<RatioTerm>& terms) {
  FactorMap denom;
  for (const auto& t : terms) {
    for (const auto& [x, m] : t.fac) {
      if (m < 0) {
        auto [it, ins] = denom.emplace(x, -m);
        if (!ins) it->second = std::max(it->second, -m);
      }
    }
  }
  Acc U;
  for (const auto& t : terms) {
    Acc p;
    p.reserve(t.poly.num_terms() * 2);
    for (const auto& [m, c] : t.poly.terms()) p[pack_key(m)] += c;
    for (const auto& [x, e] : denom) {
      auto it = t.fac.find(x);
      int extra = e + (it == t.fac.end() ? 0 : it->second);
      for (int i = 0; i < extra; ++i) mul_one_minus(p, x);
    }
    for (const auto& [x, m] : t.fac) {
      if (denom.count(x)) continue;
      for (int i = 0; i < m; ++i) mul_one_minus(p, x);
    }
    for (const auto& [k, c] : p) {
      if (c != 0) U[k] += c;
    }
  }
  LaurentPoly out;
  for (const auto& [k, c] : U) {
    if (c != 0) out.add_term(unpack_key(k), c);
  }
  return out;
}

}  // namespace

bool annihilates_phi21(const DiffOperator& D, int K) {
  if (K < 0) throw std::invalid_argument("annihilates_phi21: negative order");
  bool poly = true;
  for (const auto& [s, c] : D.terms()) poly = poly && c.is_polynomial();
  const DiffOperator Dc = poly ? D : clear_denominators(D);
  if (Dc.is_zero()) return true;

  // One term per (shift, z-degree) pair: the ratio
  // p_d * P(c_{n-d}) q^{(n-d)k_z} / c_n of the n-th series coefficient,
  // written with t = q^n as a free variable stored in the z slot.
  const Monomial tM = Monomial::var(VarZ);
  std::vector<RatioTerm> terms;
  int n0 = 0;
  for (const auto& [P, c] : Dc.terms()) {
    const int ka = P.k[0], kb = P.k[1], kc = P.k[2], kz = P.k[3];
    for (const auto& [d, pd] : c.num().by_var_degree(VarZ)) {
      RatioTerm t;
      Monomial unit;
      unit.e[VarZ] = kz;
      unit.e[VarQ] = -d * kz;  // q^{(n-d)k_z} = t^{k_z} q^{-d k_z}
      t.poly = pd.mul_monomial(unit);
      add_poch(t.fac, Monomial::var(VarA) * tM, ka - d, 1);
      add_poch(t.fac, Monomial::var(VarA), ka, -1);
      add_poch(t.fac, Monomial::var(VarB) * tM, kb - d, 1);
      add_poch(t.fac, Monomial::var(VarB), kb, -1);
      add_poch(t.fac, Monomial::var(VarC) * tM, kc - d, -1);
      add_poch(t.fac, Monomial::var(VarC), kc, 1);
      if (d >= 0)
        add_range(t.fac, tM, 1 - d, 1, 1);  // (q;q)_n / (q;q)_{n-d}
      else
        add_range(t.fac, tM, 1, 1 - d, -1);
      terms.push_back(std::move(t));
      n0 = std::max(n0, d + std::max({0, -ka, -kb, -kc}));
    }
  }

  // Combine over the common denominator and test the universal identity.
  LaurentPoly U = combine_over_common_den(terms);

  if (!U.is_zero()) {
    // No universal cancellation; check the finitely many orders n0..K.
    // The common denominator is nonzero at t = q^n for n >= n0.
    for (int n = n0; n <= K; ++n) {
      if (!U.substituted_qpower(VarZ, n).is_zero()) return false;
    }
  }

  // Boundary orders, where some shifted coefficient index goes negative:
  // evaluate sum_d p_d P(c_{n-d}) q^{(n-d)k_z} with the same factored
  // common-denominator combination (no rational-function gcds).
  for (int n = 0; n < std::min(n0, K + 1); ++n) {
    std::vector<RatioTerm> bterms;
    for (const auto& [P, c] : Dc.terms()) {
      const int ka = P.k[0], kb = P.k[1], kc = P.k[2], kz = P.k[3];
      for (const auto& [d, pd] : c.num().by_var_degree(VarZ)) {
        int m = n - d;
        if (m < 0) continue;
        RatioTerm t;
        t.poly = pd.mul_monomial(Monomial::var(VarQ, m * kz));
        Monomial ab = Monomial::var(VarA);
        ab.e[VarQ] += ka;
        add_poch(t.fac, ab, m, 1);  // (a q^{ka}; q)_m
        Monomial bb = Monomial::var(VarB);
        bb.e[VarQ] += kb;
        add_poch(t.fac, bb, m, 1);
        add_poch(t.fac, Monomial::var(VarQ), m, -1);  // (q; q)_m
        Monomial cb = Monomial::var(VarC);
        cb.e[VarQ] += kc;
        add_poch(t.fac, cb, m, -1);
        bterms.push_back(std::move(t));
      }
    }
    if (!combine_over_common_den(bterms).is_zero()) return false;
  }
  return true;
}

}  // namespace qheine
