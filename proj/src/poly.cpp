#include "qheine/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace qheine {

const std::array<const char*, kNumVars> kVarNames = {"a", "b", "c", "z", "q"};

int mono_cmp(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = 0; i < kNumVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

LaurentPoly LaurentPoly::constant(const Rational& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(Monomial::one(), c);
  return p;
}

LaurentPoly LaurentPoly::variable(Var v, int exp) {
  LaurentPoly p;
  p.terms_.emplace(Monomial::var(v, exp), Rational(1));
  return p;
}

LaurentPoly LaurentPoly::term(const Monomial& m, const Rational& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

const Monomial& LaurentPoly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& LaurentPoly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->second;
}

Rational LaurentPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

namespace {

// Packed exponent key for fast product accumulation. 12 bits per
// exponent, biased; covers |e| < 2048 which is far beyond anything the
// relation synthesis produces.
constexpr int kBias = 2048;

uint64_t pack_key(const Monomial& m) {
  uint64_t k = 0;
  for (int i = 0; i < kNumVars; ++i) {
    int v = m.e[i] + kBias;
    if (v < 0 || v >= 4096) throw std::overflow_error("monomial exponent out of packing range");
    k = (k << 12) | static_cast<uint64_t>(v);
  }
  return k;
}

Monomial unpack_key(uint64_t k) {
  Monomial m;
  for (int i = kNumVars - 1; i >= 0; --i) {
    m.e[i] = static_cast<int>(k & 0xfff) - kBias;
    k >>= 12;
  }
  return m;
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return LaurentPoly::zero();
  if (b.is_monomial()) {
    const auto& [m, c] = *b.terms().begin();
    return a.mul_monomial(m).scaled(c);
  }
  if (a.is_monomial()) return b * a;

  std::unordered_map<uint64_t, Rational> acc;
  acc.reserve(a.num_terms() * 2);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      acc[pack_key(ma * mb)] += ca * cb;
    }
  }
  LaurentPoly r;
  for (auto& [k, c] : acc) {
    if (c != 0) r.add_term(unpack_key(k), c);
  }
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return zero();
  LaurentPoly r(*this);
  for (auto& [m, cf] : r.terms_) cf *= c;
  return r;
}

LaurentPoly LaurentPoly::mul_monomial(const Monomial& m) const {
  LaurentPoly r;
  auto hint = r.terms_.end();
  for (const auto& [mm, c] : terms_) {
    hint = r.terms_.emplace_hint(hint, mm * m, c);
  }
  return r;
}

int LaurentPoly::min_exponent(Var v) const {
  if (terms_.empty()) return 0;
  int mn = terms_.begin()->first.e[v];
  for (const auto& [m, c] : terms_) mn = std::min(mn, m.e[v]);
  return mn;
}

int LaurentPoly::max_exponent(Var v) const {
  if (terms_.empty()) return 0;
  int mx = terms_.begin()->first.e[v];
  for (const auto& [m, c] : terms_) mx = std::max(mx, m.e[v]);
  return mx;
}

Monomial LaurentPoly::min_exponents() const {
  Monomial mn;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      mn = m;
      first = false;
    } else {
      for (int i = 0; i < kNumVars; ++i) mn.e[i] = std::min(mn.e[i], m.e[i]);
    }
  }
  return mn;
}

LaurentPoly LaurentPoly::transformed(const std::array<std::array<long, 5>, 5>& T) const {
  LaurentPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial mm;
    for (int i = 0; i < kNumVars; ++i) {
      long s = 0;
      for (int j = 0; j < kNumVars; ++j) s += T[i][j] * m.e[j];
      mm.e[i] = static_cast<int>(s);
    }
    r.add_term(mm, c);
  }
  return r;
}

LaurentPoly LaurentPoly::shifted(const std::array<int, 4>& k) const {
  LaurentPoly r;
  auto hint = r.terms_.end();
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    mm.e[VarQ] += k[0] * m.e[VarA] + k[1] * m.e[VarB] + k[2] * m.e[VarC] + k[3] * m.e[VarZ];
    r.add_term(mm, c);
  }
  (void)hint;
  return r;
}

LaurentPoly LaurentPoly::substituted_qpower(Var v, int j) const {
  LaurentPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    mm.e[VarQ] += j * m.e[v];
    mm.e[v] = 0;
    r.add_term(mm, c);
  }
  return r;
}

Rational LaurentPoly::content() const {
  if (terms_.empty()) return Rational(1);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational ct(num_gcd, den_lcm);
  ct.canonicalize();
  if (leading_coeff() < 0) ct = -ct;
  return ct;
}

std::map<int, LaurentPoly> LaurentPoly::by_var_degree(Var v) const {
  std::map<int, LaurentPoly> out;
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    int d = mm.e[v];
    mm.e[v] = 0;
    out[d].add_term(mm, c);
  }
  return out;
}

std::pair<Rational, Monomial> make_primitive(LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("make_primitive: zero polynomial");
  Monomial mn = p.min_exponents();
  if (!mn.is_one()) p = p.mul_monomial(mn.inverse());
  Rational ct = p.content();
  if (ct != 1) {
    Rational inv = 1 / ct;
    p = p.scaled(inv);
  }
  return {ct, mn};
}

namespace {

// Polynomial-sense exact division (nonnegative exponents, graded-lex
// leading-term elimination). Inputs must have min exponent 0 per var.
std::optional<LaurentPoly> divide_poly(const LaurentPoly& p, const LaurentPoly& d) {
  LaurentPoly r = p;
  LaurentPoly q;
  const Monomial& dl = d.leading_monomial();
  const Rational& dc = d.leading_coeff();
  while (!r.is_zero()) {
    const Monomial& rl = r.leading_monomial();
    Monomial t = rl / dl;
    for (int i = 0; i < kNumVars; ++i) {
      if (t.e[i] < 0) return std::nullopt;
    }
    Rational tc = r.leading_coeff() / dc;
    q.add_term(t, tc);
    r -= d.mul_monomial(t).scaled(tc);
  }
  return q;
}

// Univariate view in one variable with LaurentPoly coefficients.
using UniPoly = std::map<int, LaurentPoly>;

int uni_deg(const UniPoly& f) { return f.empty() ? -1 : f.rbegin()->first; }

UniPoly to_uni(const LaurentPoly& p, Var v) { return p.by_var_degree(v); }

LaurentPoly from_uni(const UniPoly& f, Var v) {
  LaurentPoly p;
  for (const auto& [d, c] : f) {
    p += c.mul_monomial(Monomial::var(v, d));
  }
  return p;
}

UniPoly uni_scale(const UniPoly& f, const LaurentPoly& s) {
  UniPoly r;
  for (const auto& [d, c] : f) {
    LaurentPoly cc = c * s;
    if (!cc.is_zero()) r.emplace(d, std::move(cc));
  }
  return r;
}

UniPoly uni_sub(UniPoly f, const UniPoly& g) {
  for (const auto& [d, c] : g) {
    auto it = f.find(d);
    if (it == f.end()) {
      f.emplace(d, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) f.erase(it);
    }
  }
  return f;
}

UniPoly uni_shift(const UniPoly& f, int k) {
  UniPoly r;
  for (const auto& [d, c] : f) r.emplace(d + k, c);
  return r;
}

LaurentPoly gcd_rec(LaurentPoly p, LaurentPoly q);

LaurentPoly coeff_list_gcd(const UniPoly& f) {
  LaurentPoly g = LaurentPoly::zero();
  for (const auto& [d, c] : f) {
    if (g.is_zero()) {
      g = c;
      make_primitive(g);
    } else {
      g = gcd_rec(g, c);
    }
    if (g.is_constant()) return LaurentPoly::one();
  }
  return g;
}

UniPoly uni_divide_coeffs(const UniPoly& f, const LaurentPoly& d) {
  UniPoly r;
  for (const auto& [deg, c] : f) {
    auto q = divide_exact(c, d);
    if (!q) throw std::logic_error("content division failed");
    r.emplace(deg, std::move(*q));
  }
  return r;
}

// Pseudo-remainder of f by g in variable v.
UniPoly prem(UniPoly f, const UniPoly& g) {
  int dg = uni_deg(g);
  const LaurentPoly& lg = g.rbegin()->second;
  while (uni_deg(f) >= dg && !f.empty()) {
    int df = uni_deg(f);
    LaurentPoly lf = f.rbegin()->second;
    f = uni_sub(uni_scale(f, lg), uni_shift(uni_scale(g, lf), df - dg));
  }
  return f;
}

// Modular evaluation over GF(p), p = 2^61 - 1: keeps every image
// coefficient word-sized, where evaluation over Q would build integers
// with thousands of digits from the large exponents involved.
constexpr std::uint64_t kEvalPrime = (1ULL << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kEvalPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  a %= kEvalPrime;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kEvalPrime - 2); }

// Dense mod-p coefficient vector of p in x after substituting vals for
// the other variables; the flag is false if a coefficient denominator
// vanishes mod p (retry with another point).
std::pair<std::vector<std::uint64_t>, bool> eval_to_uni_mod(
    const LaurentPoly& p, Var x, const std::array<std::uint64_t, kNumVars>& vals) {
  int lo = p.min_exponent(x), hi = p.max_exponent(x);
  std::vector<std::uint64_t> c(hi - lo + 1, 0);
  for (const auto& [m, co] : p.terms()) {
    std::uint64_t den = mpz_fdiv_ui(co.get_den().get_mpz_t(), kEvalPrime);
    if (den == 0) return {{}, false};
    std::uint64_t t =
        mulmod(mpz_fdiv_ui(co.get_num().get_mpz_t(), kEvalPrime), invmod(den));
    for (int v = 0; v < kNumVars; ++v) {
      if (v == x || m.e[v] == 0) continue;
      std::uint64_t pw = powmod(vals[v], static_cast<std::uint64_t>(std::abs(m.e[v])));
      t = mulmod(t, m.e[v] > 0 ? pw : invmod(pw));
    }
    int idx = m.e[x] - lo;
    c[idx] = (c[idx] + t) % kEvalPrime;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return {std::move(c), true};
}

int uni_mod_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  if (a.size() < b.size()) a.swap(b);
  while (!b.empty()) {
    std::uint64_t binv = invmod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t s = mulmod(a.back(), binv);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t sub = mulmod(s, b[i]);
        a[off + i] = (a[off + i] + kEvalPrime - sub) % kEvalPrime;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    a.swap(b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Sound degree test: under an evaluation of the non-main variables
// that keeps both leading x-coefficients nonzero, the degree of the
// image gcd bounds the x-degree of gcd(p, q) from above (the image of
// the true gcd divides the image gcd, and its x-degree is preserved
// because its leading coefficient divides a surviving one), so a
// degree-0 image gcd proves the gcd is free of x (pure content).
// Inconclusive (degree > 0 or unlucky point) falls through to the PRS.
bool evaluation_proves_coprime(const LaurentPoly& p, const LaurentPoly& q, Var x) {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  int dp = p.max_exponent(x) - p.min_exponent(x);
  int dq = q.max_exponent(x) - q.min_exponent(x);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::array<std::uint64_t, kNumVars> vals{};
    for (int v = 0; v < kNumVars; ++v) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      vals[v] = 2 + (state >> 3) % (kEvalPrime - 3);
    }
    auto [up, okp] = eval_to_uni_mod(p, x, vals);
    auto [uq, okq] = eval_to_uni_mod(q, x, vals);
    if (!okp || !okq) continue;
    if (static_cast<int>(up.size()) - 1 != dp || static_cast<int>(uq.size()) - 1 != dq)
      continue;  // a leading coefficient vanished; pick another point
    return uni_mod_gcd_degree(std::move(up), std::move(uq)) == 0;
  }
  return false;
}

// ---- Modular gcd (Brown-style evaluate/interpolate over GF(p)) ----
//
// The subresultant PRS suffers resultant-sized coefficient growth when
// two large structured polynomials share only a small factor, which is
// the common case for q-Pochhammer denominators.  The modular route
// computes gcd images under evaluation of all but the main variable,
// interpolates them, lifts to integers, and verifies the candidate by
// exact division, so a wrong candidate can never escape.

using ModPoly = std::map<Monomial, std::uint64_t, MonoGreater>;

std::optional<ModPoly> to_mod(const LaurentPoly& p) {
  ModPoly r;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), kEvalPrime);
    if (den == 0) return std::nullopt;
    // mpz_fdiv_ui already yields the nonnegative floor residue.
    std::uint64_t v = mulmod(mpz_fdiv_ui(c.get_num().get_mpz_t(), kEvalPrime), invmod(den));
    if (v != 0) r.emplace(m, v);
  }
  return r;
}

int mod_deg(const ModPoly& p, Var v) {
  int d = -1;
  for (const auto& [m, c] : p) d = std::max(d, m.e[v]);
  return d;
}

ModPoly mod_eval(const ModPoly& p, Var v, std::uint64_t val) {
  ModPoly r;
  for (const auto& [m, c] : p) {
    Monomial m2 = m;
    m2.e[v] = 0;
    std::uint64_t t = mulmod(c, powmod(val, static_cast<std::uint64_t>(m.e[v])));
    auto [it, fresh] = r.emplace(m2, t);
    if (!fresh) {
      it->second = (it->second + t) % kEvalPrime;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b) {
  ModPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma * mb;
      std::uint64_t t = mulmod(ca, cb);
      auto [it, fresh] = r.emplace(m, t);
      if (!fresh) {
        it->second = (it->second + t) % kEvalPrime;
        if (it->second == 0) r.erase(it);
      }
    }
  return r;
}

ModPoly mod_sub(const ModPoly& a, const ModPoly& b) {
  ModPoly r = a;
  for (const auto& [m, c] : b) {
    auto [it, fresh] = r.emplace(m, kEvalPrime - c);
    if (!fresh) {
      it->second = (it->second + kEvalPrime - c) % kEvalPrime;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

ModPoly mod_scale(const ModPoly& a, std::uint64_t s) {
  ModPoly r;
  for (const auto& [m, c] : a) {
    std::uint64_t t = mulmod(c, s);
    if (t != 0) r.emplace(m, t);
  }
  return r;
}

// Monic univariate gcd over GF(p) of dense coefficient vectors.
std::vector<std::uint64_t> mod_uni_gcd(std::vector<std::uint64_t> a,
                                       std::vector<std::uint64_t> b) {
  if (a.size() < b.size()) a.swap(b);
  while (!b.empty()) {
    std::uint64_t binv = invmod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t s = mulmod(a.back(), binv);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t sub = mulmod(s, b[i]);
        a[off + i] = (a[off + i] + kEvalPrime - sub) % kEvalPrime;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    a.swap(b);
  }
  std::uint64_t ainv = invmod(a.back());
  for (auto& c : a) c = mulmod(c, ainv);
  return a;
}

// Returns the image of gamma * monic_gcd(A, B) in x, where gamma is a
// multiple of the leading x-coefficient of the true gcd, so the scaled
// gcd is a polynomial and interpolation over each remaining variable is
// valid.  nullopt when too many unlucky points are hit.
std::optional<ModPoly> modgcd_rec(const ModPoly& A, const ModPoly& B, const ModPoly& gamma,
                                  Var x, std::uint64_t& state) {
  int iv = -1;
  for (int v = 0; v < kNumVars; ++v) {
    if (v == x) continue;
    if (mod_deg(A, static_cast<Var>(v)) > 0 || mod_deg(B, static_cast<Var>(v)) > 0 ||
        mod_deg(gamma, static_cast<Var>(v)) > 0) {
      iv = v;
      break;
    }
  }
  if (iv < 0) {
    // Univariate leaf: dense Euclid, then scale monic gcd by gamma.
    int da = mod_deg(A, x), db = mod_deg(B, x);
    std::vector<std::uint64_t> ca(da + 1, 0), cb(db + 1, 0);
    for (const auto& [m, c] : A) ca[m.e[x]] = c;
    for (const auto& [m, c] : B) cb[m.e[x]] = c;
    std::vector<std::uint64_t> g = mod_uni_gcd(std::move(ca), std::move(cb));
    std::uint64_t gval = gamma.empty() ? 0 : gamma.begin()->second;
    if (gval == 0) return std::nullopt;
    ModPoly r;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::uint64_t t = mulmod(g[i], gval);
      if (t != 0) r.emplace(Monomial::var(x, static_cast<int>(i)), t);
    }
    return r;
  }

  Var v = static_cast<Var>(iv);
  int dA = mod_deg(A, x), dB = mod_deg(B, x);
  int bound = mod_deg(gamma, v) + std::min(std::max(mod_deg(A, v), 0),
                                           std::max(mod_deg(B, v), 0));
  ModPoly interp, basis = {{Monomial::one(), 1}};
  int have = 0, dmin = -1;
  for (int attempt = 0; attempt < bound + 64 && have <= bound; ++attempt) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t t = 1 + (state >> 3) % (kEvalPrime - 1);
    ModPoly Av = mod_eval(A, v, t), Bv = mod_eval(B, v, t);
    if (mod_deg(Av, x) != dA || mod_deg(Bv, x) != dB) continue;
    ModPoly Gv = mod_eval(gamma, v, t);
    auto g = modgcd_rec(Av, Bv, Gv, x, state);
    if (!g) continue;
    int d = mod_deg(*g, x);
    if (dmin < 0 || d < dmin) {
      dmin = d;
      interp.clear();
      basis = {{Monomial::one(), 1}};
      have = 0;
    } else if (d > dmin) {
      continue;  // unlucky evaluation point
    }
    // Newton step: interp += basis * (g - interp(t)) / basis(t).
    ModPoly diff = mod_sub(*g, mod_eval(interp, v, t));
    if (!diff.empty()) {
      ModPoly bv = mod_eval(basis, v, t);
      std::uint64_t bval = bv.empty() ? 0 : bv.begin()->second;
      if (bval == 0) return std::nullopt;
      interp = mod_sub(interp, mod_scale(mod_mul(basis, diff), kEvalPrime - invmod(bval)));
    }
    ModPoly lin = {{Monomial::var(v), 1}};
    auto [it, fresh] = lin.emplace(Monomial::one(), kEvalPrime - t);
    (void)it;
    (void)fresh;
    basis = mod_mul(basis, lin);
    ++have;
  }
  if (have <= bound) return std::nullopt;
  return interp;
}

// Full modular gcd over Z of x-content-free polynomials with
// nonnegative exponents; nullopt means "fall back to the PRS".
std::optional<LaurentPoly> modular_gcd(const LaurentPoly& p, const LaurentPoly& q, Var x) {
  auto lc_in = [&](const LaurentPoly& f) {
    int d = f.max_exponent(x);
    LaurentPoly lc;
    for (const auto& [m, c] : f.terms()) {
      if (m.e[x] != d) continue;
      Monomial m2 = m;
      m2.e[x] = 0;
      lc.add_term(m2, c);
    }
    return lc;
  };
  LaurentPoly lcp = lc_in(p), lcq = lc_in(q);
  // gamma must be a polynomial multiple of the leading x-coefficient of
  // the true gcd.  poly_gcd only yields the primitive part, so the
  // common monomial factor and the integer-content gcd of the two
  // leading coefficients have to be restored by hand; without them the
  // interpolated images are not polynomial and the lift is garbage.
  LaurentPoly gamma = LaurentPoly::one();
  if (!lcp.is_monomial() && !lcq.is_monomial()) gamma = poly_gcd(lcp, lcq);
  Monomial mp = lcp.min_exponents(), mq = lcq.min_exponents();
  Monomial common;
  for (int i = 0; i < kNumVars; ++i) common.e[i] = std::min(mp.e[i], mq.e[i]);
  if (!common.is_one()) gamma = gamma.mul_monomial(common);
  Rational cp = abs(lcp.content()), cq = abs(lcq.content());
  mpz_class ci;
  mpz_gcd(ci.get_mpz_t(), cp.get_num_mpz_t(), cq.get_num_mpz_t());
  if (ci > 1) gamma = gamma.scaled(Rational(ci));
  auto A = to_mod(p), B = to_mod(q), G = to_mod(gamma);
  if (!A || !B || !G || A->empty() || B->empty() || G->empty()) return std::nullopt;
  std::uint64_t state = 0xda942042e4dd58b5ULL;
  auto img = modgcd_rec(*A, *B, *G, x, state);
  if (!img || img->empty()) return std::nullopt;
  // Symmetric lift to integer coefficients.
  LaurentPoly cand;
  for (const auto& [m, c] : *img) {
    std::uint64_t cc = c;
    bool neg = cc > kEvalPrime / 2;
    if (neg) cc = kEvalPrime - cc;
    cand.add_term(m, neg ? -Rational(mpz_class(static_cast<unsigned long>(cc)))
                         : Rational(mpz_class(static_cast<unsigned long>(cc))));
  }
  if (cand.is_zero()) return std::nullopt;
  // Strip the x-content (the gamma cofactor) and normalize.
  UniPoly u = to_uni(cand, x);
  LaurentPoly cg = coeff_list_gcd(u);
  if (!cg.is_constant()) u = uni_divide_coeffs(u, cg);
  cand = from_uni(u, x);
  make_primitive(cand);
  if (cand.is_constant()) return LaurentPoly::one();
  if (!divide_exact(p, cand) || !divide_exact(q, cand)) return std::nullopt;
  return cand;
}

// GCD of primitive (unit-free) polynomials with nonnegative exponents.
LaurentPoly gcd_rec(LaurentPoly p, LaurentPoly q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  if (p.is_constant() || q.is_constant()) return LaurentPoly::one();

  // Fast coprimality path: deg_v(gcd) <= min(deg_v p, deg_v q), so the
  // gcd is constant once a degree-0 image gcd is proven for every
  // shared variable. This settles the common gcd = 1 case with mod-p
  // univariate work only, before any content extraction.
  {
    bool all_proved = true;
    for (int v = 0; v < kNumVars && all_proved; ++v) {
      int dp = p.max_exponent(static_cast<Var>(v)) - p.min_exponent(static_cast<Var>(v));
      int dq = q.max_exponent(static_cast<Var>(v)) - q.min_exponent(static_cast<Var>(v));
      if (dp > 0 && dq > 0)
        all_proved = evaluation_proves_coprime(p, q, static_cast<Var>(v));
    }
    if (all_proved) return LaurentPoly::one();
  }

  // Main variable: present in both, smallest max degree for short PRS.
  int best = -1, best_deg = 0;
  for (int v = 0; v < kNumVars; ++v) {
    int dp = p.max_exponent(static_cast<Var>(v)) - p.min_exponent(static_cast<Var>(v));
    int dq = q.max_exponent(static_cast<Var>(v)) - q.min_exponent(static_cast<Var>(v));
    if (dp > 0 && dq > 0) {
      int d = std::max(dp, dq);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    }
  }
  if (best < 0) {
    // No shared variable: gcd is the gcd of one poly with the other's
    // coefficient content, which reduces through contents only.
    for (int v = 0; v < kNumVars; ++v) {
      if (p.max_exponent(static_cast<Var>(v)) - p.min_exponent(static_cast<Var>(v)) > 0) {
        LaurentPoly cp = coeff_list_gcd(to_uni(p, static_cast<Var>(v)));
        return gcd_rec(cp, q);
      }
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (q.max_exponent(static_cast<Var>(v)) - q.min_exponent(static_cast<Var>(v)) > 0) {
        LaurentPoly cq = coeff_list_gcd(to_uni(q, static_cast<Var>(v)));
        return gcd_rec(p, cq);
      }
    }
    return LaurentPoly::one();
  }

  Var x = static_cast<Var>(best);
  UniPoly fp = to_uni(p, x), fq = to_uni(q, x);
  LaurentPoly cp = coeff_list_gcd(fp), cq = coeff_list_gcd(fq);
  LaurentPoly cont = gcd_rec(cp, cq);
  if (!cp.is_constant()) fp = uni_divide_coeffs(fp, cp);
  if (!cq.is_constant()) fq = uni_divide_coeffs(fq, cq);
  // A proven x-degree-0 gcd leaves only the content part.
  if (evaluation_proves_coprime(p, q, x))
    return cont.is_constant() ? LaurentPoly::one() : cont;

  {
    LaurentPoly pxf = from_uni(fp, x), qxf = from_uni(fq, x);
    if (auto g = modular_gcd(pxf, qxf, x))
      return cont.is_constant() ? *g : (*g) * cont;
  }

  if (uni_deg(fp) < uni_deg(fq)) std::swap(fp, fq);
  // Subresultant PRS (Brown/Collins): remainders are divided by the
  // predicted factor gs * hs^delta, so no content gcds are needed
  // inside the loop; only the final remainder is made primitive.
  LaurentPoly gs = LaurentPoly::one(), hs = LaurentPoly::one();
  while (true) {
    int delta = uni_deg(fp) - uni_deg(fq);
    UniPoly r = prem(fp, fq);
    if (r.empty()) break;
    LaurentPoly divisor = gs;
    for (int i = 0; i < delta; ++i) divisor = divisor * hs;
    fp = std::move(fq);
    fq = uni_divide_coeffs(r, divisor);
    gs = fp.rbegin()->second;
    if (delta >= 1) {
      LaurentPoly gd = gs;
      for (int i = 1; i < delta; ++i) gd = gd * gs;
      LaurentPoly hd = LaurentPoly::one();
      for (int i = 1; i < delta; ++i) hd = hd * hs;
      auto q2 = divide_exact(gd, hd);
      if (!q2) throw std::logic_error("subresultant h-update division failed");
      hs = std::move(*q2);
    }
  }
  if (uni_deg(fq) == 0) return cont.is_constant() ? LaurentPoly::one() : cont;
  LaurentPoly cr = coeff_list_gcd(fq);
  if (!cr.is_constant()) fq = uni_divide_coeffs(fq, cr);
  LaurentPoly g = from_uni(fq, x);
  make_primitive(g);
  if (!cont.is_constant()) g = g * cont;
  return g;
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (p.is_zero()) return LaurentPoly::zero();
  LaurentPoly pp = p, dd = d;
  auto [pc, pm] = make_primitive(pp);
  auto [dc, dm] = make_primitive(dd);
  auto q = divide_poly(pp, dd);
  if (!q) return std::nullopt;
  Rational scale = pc / dc;
  return q->scaled(scale).mul_monomial(pm / dm);
}

LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) undefined");
  if (p.is_zero()) {
    LaurentPoly r = q;
    make_primitive(r);
    return r;
  }
  if (q.is_zero()) {
    LaurentPoly r = p;
    make_primitive(r);
    return r;
  }
  LaurentPoly pp = p, qq = q;
  make_primitive(pp);
  make_primitive(qq);
  LaurentPoly g = gcd_rec(pp, qq);
  make_primitive(g);
  return g;
}

}  // namespace qheine
