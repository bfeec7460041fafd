#include "qheine/contiguous.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace qheine {

const std::array<const char*, 7> kGeneratorNames = {"P_a", "P_b", "P_c", "Q_a",
                                                   "Q_b", "Q_c", "R_z"};

const std::vector<DiffOperator>& generators() {
  static const std::vector<DiffOperator> gens = [] {
    const LaurentPoly one = LaurentPoly::one();
    const LaurentPoly a = LaurentPoly::variable(VarA);
    const LaurentPoly b = LaurentPoly::variable(VarB);
    const LaurentPoly c = LaurentPoly::variable(VarC);
    const LaurentPoly z = LaurentPoly::variable(VarZ);
    const LaurentPoly q = LaurentPoly::variable(VarQ);
    auto rf = [](const LaurentPoly& p) { return RationalFunc::from_poly(p); };

    std::vector<DiffOperator> g(7);
    // P_a = (1-a)A - 1 + aZ
    g[0].add_term(ShiftOp::A(), rf(one - a));
    g[0].add_term(ShiftOp::identity(), rf(-one));
    g[0].add_term(ShiftOp::Z(), rf(a));
    // P_b = (1-b)B - 1 + bZ
    g[1].add_term(ShiftOp::B(), rf(one - b));
    g[1].add_term(ShiftOp::identity(), rf(-one));
    g[1].add_term(ShiftOp::Z(), rf(b));
    // P_c = z(c-b)(c-a)C + (c-1)(c^2+abz-(a+b)cz) - (c-1)c(c-abz)Z
    g[2].add_term(ShiftOp::C(), rf(z * (c - b) * (c - a)));
    g[2].add_term(ShiftOp::identity(), rf((c - one) * (c * c + a * b * z - (a + b) * c * z)));
    g[2].add_term(ShiftOp::Z(), rf(-((c - one) * c * (c - a * b * z))));
    // Q_a = (-cq+ac+aq-a^2z) + a(abz-c)Z + q(c-a)A^{-1}
    g[3].add_term(ShiftOp::identity(), rf(-(c * q) + a * c + a * q - a * a * z));
    g[3].add_term(ShiftOp::Z(), rf(a * (a * b * z - c)));
    g[3].add_term(ShiftOp::A(-1), rf(q * (c - a)));
    // Q_b = (-cq+bc+bq-b^2z) + b(abz-c)Z + q(c-b)B^{-1}
    g[4].add_term(ShiftOp::identity(), rf(-(c * q) + b * c + b * q - b * b * z));
    g[4].add_term(ShiftOp::Z(), rf(b * (a * b * z - c)));
    g[4].add_term(ShiftOp::B(-1), rf(q * (c - b)));
    // Q_c = -q + cZ + (q-c)C^{-1}
    g[5].add_term(ShiftOp::identity(), rf(-q));
    g[5].add_term(ShiftOp::Z(), rf(c));
    g[5].add_term(ShiftOp::C(-1), rf(q - c));
    // R_z = -(c+q-az-bz) + (q-z)Z^{-1} + (c-abz)Z
    g[6].add_term(ShiftOp::identity(), rf(-(c + q - a * z - b * z)));
    g[6].add_term(ShiftOp::Z(-1), rf(q - z));
    g[6].add_term(ShiftOp::Z(), rf(c - a * b * z));
    return g;
  }();
  return gens;
}

bool verify_annihilates(const DiffOperator& D, int K) {
  if (K < 1) throw std::invalid_argument("verify_annihilates: K must be >= 1");
  return annihilates_phi21(D, K);
}

DiffOperator ThreeTermRelation::to_operator() const {
  DiffOperator d;
  for (int i = 0; i < 3; ++i) d.add_term(shifts[i], RationalFunc::from_poly(coeffs[i]));
  return d;
}

namespace {

const Rational& trailing_coeff(const LaurentPoly& p) {
  return p.terms().rbegin()->second;
}

// Joint monomial content, rational content and sign; no polynomial gcd.
void normalize_triple_units(std::array<LaurentPoly, 3>& p) {
  std::vector<LaurentPoly*> nz;
  for (auto& x : p)
    if (!x.is_zero()) nz.push_back(&x);
  if (nz.empty()) return;

  Monomial mmin = nz[0]->min_exponents();
  for (std::size_t i = 1; i < nz.size(); ++i) {
    Monomial mi = nz[i]->min_exponents();
    for (int v = 0; v < kNumVars; ++v) mmin.e[v] = std::min(mmin.e[v], mi.e[v]);
  }
  mpz_class gnum = 0, glden = 1;
  for (auto* x : nz) {
    Rational c = x->content();
    mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(glden.get_mpz_t(), glden.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale(gnum, glden);
  scale.canonicalize();
  if (trailing_coeff(*nz[0]) / scale < 0) scale = -scale;
  for (auto* x : nz) *x = x->scaled(1 / scale).mul_monomial(mmin.inverse());
}

// Same contract as normalize_triple, for triples where p[factored] is
// known (up to a unit) as the product of `factors`. Any common divisor
// of the triple divides p[factored], so the joint polynomial gcd can be
// peeled off with small-against-large gcds instead of one gcd between
// two large polynomials.
void normalize_triple_factored(std::array<LaurentPoly, 3>& p, int factored,
                               std::vector<LaurentPoly> factors) {
  std::vector<LaurentPoly*> others;
  for (int i = 0; i < 3; ++i)
    if (i != factored && !p[i].is_zero()) others.push_back(&p[i]);
  if (p[factored].is_zero() || others.empty()) {
    normalize_triple(p);
    return;
  }
  for (LaurentPoly& f : factors) {
    make_primitive(f);
    while (f != LaurentPoly::one()) {
      LaurentPoly h = f;
      for (auto* x : others) {
        h = poly_gcd(h, *x);
        if (h == LaurentPoly::one()) break;
      }
      if (h == LaurentPoly::one()) break;
      for (auto& x : p)
        if (!x.is_zero()) x = *divide_exact(x, h);
      f = *divide_exact(f, h);
    }
  }
  normalize_triple_units(p);
}

}  // namespace

void normalize_triple(std::array<LaurentPoly, 3>& p) {
  std::vector<LaurentPoly*> nz;
  for (auto& x : p)
    if (!x.is_zero()) nz.push_back(&x);
  if (nz.empty()) return;

  LaurentPoly g = *nz[0];
  make_primitive(g);
  for (std::size_t i = 1; i < nz.size() && g != LaurentPoly::one(); ++i) g = poly_gcd(g, *nz[i]);
  if (g != LaurentPoly::one())
    for (auto* x : nz) *x = *divide_exact(*x, g);

  // Joint monomial and rational content.
  Monomial mmin = nz[0]->min_exponents();
  for (std::size_t i = 1; i < nz.size(); ++i) {
    Monomial mi = nz[i]->min_exponents();
    for (int v = 0; v < kNumVars; ++v) mmin.e[v] = std::min(mmin.e[v], mi.e[v]);
  }
  mpz_class gnum = 0, glden = 1;
  for (auto* x : nz) {
    Rational c = x->content();
    mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(glden.get_mpz_t(), glden.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale(gnum, glden);
  scale.canonicalize();
  if (trailing_coeff(*nz[0]) / scale < 0) scale = -scale;
  for (auto* x : nz) *x = x->scaled(1 / scale).mul_monomial(mmin.inverse());
}

NormalFormZ1 RelationEngine::normal_form_to_Z1(const ShiftOp& X) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(X);
    if (it != memo_.end()) return it->second;
  }

  NormalFormZ1 nf;
  if (X.is_identity()) {
    nf = {LaurentPoly::one(), LaurentPoly::zero(), -LaurentPoly::one()};
  } else if (X == ShiftOp::Z()) {
    nf = {LaurentPoly::one(), -LaurentPoly::one(), LaurentPoly::zero()};
  } else if (X.degree() == 1) {
    // Read the relation off the matching generator.
    static const std::array<std::pair<ShiftOp, int>, 7> table = {{
        {ShiftOp::A(), 0},
        {ShiftOp::B(), 1},
        {ShiftOp::C(), 2},
        {ShiftOp::A(-1), 3},
        {ShiftOp::B(-1), 4},
        {ShiftOp::C(-1), 5},
        {ShiftOp::Z(-1), 6},
    }};
    const DiffOperator* gen = nullptr;
    for (const auto& [s, idx] : table)
      if (s == X) gen = &generators()[idx];
    if (!gen) throw std::logic_error("normal_form_to_Z1: missing degree-1 base case");
    nf = {gen->coeff(X).num(), gen->coeff(ShiftOp::Z()).num(),
          gen->coeff(ShiftOp::identity()).num()};
  } else {
    // Factor X = S Y with S the unit shift along the largest |k|.
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(X.k[i]) > std::abs(X.k[best])) best = i;
    ShiftOp S;
    S.k[best] = X.k[best] > 0 ? 1 : -1;
    ShiftOp Y = S.inverse() * X;

    NormalFormZ1 e0 = normal_form_to_Z1(Y);
    NormalFormZ1 e1 = S == ShiftOp::Z()
                          ? NormalFormZ1{LaurentPoly::one(), -LaurentPoly::one(),
                                         LaurentPoly::zero()}
                          : normal_form_to_Z1(S);
    NormalFormZ1 rz = normal_form_to_Z1(ShiftOp::Z(-1));

    const ShiftOp Zs = ShiftOp::Z();
    // The SZ, Z^2 and S terms cancel identically in this combination of
    // S*E0, Z*E1, Z*R_z and E1, leaving a relation on X, Z, 1.
    std::vector<LaurentPoly> px_factors = {Zs.apply(rz.p_z), e1.p_x, S.apply(e0.p_x),
                                           Zs.apply(e1.p_x)};
    LaurentPoly px = px_factors[0] * px_factors[1] * px_factors[2] * px_factors[3];
    LaurentPoly pz = e1.p_x * S.apply(e0.p_z) * Zs.apply(e1.p_z) * Zs.apply(rz.p_1) -
                     Zs.apply(rz.p_z) * e1.p_x * S.apply(e0.p_z) * Zs.apply(e1.p_1) -
                     Zs.apply(rz.p_z) * e1.p_z * S.apply(e0.p_1) * Zs.apply(e1.p_x);
    LaurentPoly p1 = e1.p_x * S.apply(e0.p_z) * Zs.apply(e1.p_z) * Zs.apply(rz.p_x) -
                     Zs.apply(rz.p_z) * e1.p_1 * S.apply(e0.p_1) * Zs.apply(e1.p_x);
    std::array<LaurentPoly, 3> t = {std::move(px), std::move(pz), std::move(p1)};
    normalize_triple_factored(t, 0, std::move(px_factors));
    nf = {t[0], t[1], t[2]};

    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(X, nf);
    return nf;
  }

  std::array<LaurentPoly, 3> t = {nf.p_x, nf.p_z, nf.p_1};
  normalize_triple(t);
  nf = {t[0], t[1], t[2]};

  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(X, nf);
  return nf;
}

std::array<LaurentPoly, 3> RelationEngine::three_term_core(const ShiftOp& X1, const ShiftOp& X2,
                                                           const ShiftOp& X3,
                                                           std::vector<LaurentPoly>* factors0) {
  NormalFormZ1 f1 = normal_form_to_Z1(X1 * X3.inverse());
  NormalFormZ1 f2 = normal_form_to_Z1(X2 * X3.inverse());
  // X3 (a2 F_1 - a1 F_2) with a_i = p_{z,i}/gcd(p_{z,1}, p_{z,2}): the Z
  // terms cancel, and cancelling the gcd up front keeps the cross
  // products (and the joint-gcd peeling afterwards) small.
  LaurentPoly a1 = f1.p_z, a2 = f2.p_z;
  if (!a1.is_zero() && !a2.is_zero()) {
    LaurentPoly gz = poly_gcd(a1, a2);
    if (gz != LaurentPoly::one()) {
      a1 = *divide_exact(a1, gz);
      a2 = *divide_exact(a2, gz);
    }
  }
  if (factors0) *factors0 = {X3.apply(a2), X3.apply(f1.p_x)};
  return {X3.apply(a2 * f1.p_x), -X3.apply(a1 * f2.p_x),
          X3.apply(a2 * f1.p_1 - a1 * f2.p_1)};
}

ThreeTermRelation RelationEngine::three_term(const ShiftOp& X1, const ShiftOp& X2,
                                             const ShiftOp& X3) {
  if (X1 == X2 || X1 == X3 || X2 == X3)
    throw std::invalid_argument("three_term: shifts must be pairwise distinct");
  ThreeTermRelation rel;
  rel.shifts = {X1, X2, X3};
  std::vector<LaurentPoly> factors0;
  rel.coeffs = three_term_core(X1, X2, X3, &factors0);
  normalize_triple_factored(rel.coeffs, 0, std::move(factors0));
  return rel;
}

ThreeTermRelation RelationEngine::three_term_alt(const ShiftOp& X1, const ShiftOp& X2,
                                                 const ShiftOp& X3) {
  if (X1 == X2 || X1 == X3 || X2 == X3)
    throw std::invalid_argument("three_term: shifts must be pairwise distinct");
  // Pivot on X1: derive the relation for (X2, X3, X1), then reorder.
  std::vector<LaurentPoly> factors0;
  std::array<LaurentPoly, 3> c = three_term_core(X2, X3, X1, &factors0);
  ThreeTermRelation rel;
  rel.shifts = {X1, X2, X3};
  rel.coeffs = {c[2], c[0], c[1]};
  normalize_triple_factored(rel.coeffs, 1, std::move(factors0));
  return rel;
}

bool RelationEngine::ideal_membership(const DiffOperator& D) {
  DiffOperator R = D;
  while (R.length() >= 3) {
    // Pivot: support shift of maximal degree, ties by the map order.
    std::vector<ShiftOp> sup;
    for (const auto& [s, c] : R.terms()) sup.push_back(s);
    auto piv = std::max_element(sup.begin(), sup.end(), [](const ShiftOp& a, const ShiftOp& b) {
      return a.degree() < b.degree();
    });
    std::iter_swap(sup.begin(), piv);
    ThreeTermRelation rel = three_term(sup[0], sup[1], sup[2]);
    RationalFunc r1 = R.coeff(sup[0]);
    R = R.scaled(RationalFunc::from_poly(rel.coeffs[0])) - rel.to_operator().scaled(r1);
  }
  return R.is_zero();
}

RelationEngine& relation_engine() {
  static RelationEngine engine;
  return engine;
}

DivisibilityReport divisibility_pattern(const ThreeTermRelation& rel) {
  DivisibilityReport report;
  bool any = false;
  for (Var v : {VarA, VarB}) {
    std::array<int, 3> idx = {0, 1, 2};
    auto kv = [&](int i) { return rel.shifts[i].k[v]; };
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return kv(i) > kv(j); });
    if (kv(idx[0]) == kv(idx[1]) || kv(idx[1]) == kv(idx[2])) continue;
    any = true;
    int k1 = kv(idx[0]), k2 = kv(idx[1]), k3 = kv(idx[2]);
    auto claim = [&](int which, int j, bool expect) {
      bool div = divides_at_qpower(rel.coeffs[idx[which]], v, j);
      report.claims.push_back({v, which, j, expect, div});
      report.all_ok = report.all_ok && expect == div;
    };
    for (int j = k2; j < k1; ++j) claim(0, j, true);
    for (int j = k3; j < k2; ++j) claim(0, j, false);
    for (int j = k3; j < k1; ++j) claim(1, j, false);
    for (int j = k2; j < k1; ++j) claim(2, j, false);
  }
  if (!any)
    throw std::invalid_argument(
        "divisibility_pattern: neither the k_a nor the k_b values are pairwise distinct");
  return report;
}

}  // namespace qheine
