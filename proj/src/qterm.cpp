#include "qheine/qterm.hpp"

namespace qheine {

RationalFunc qpochhammer_finite(const Monomial& x, int m) {
  RationalFunc r = RationalFunc::one();
  if (m >= 0) {
    for (int j = 0; j < m; ++j) {
      Monomial xj = x;
      xj.e[VarQ] += j;
      LaurentPoly f = LaurentPoly::one();
      f.add_term(xj, -1);
      r *= RationalFunc::from_poly(f);
    }
  } else {
    for (int j = 1; j <= -m; ++j) {
      Monomial xj = x;
      xj.e[VarQ] -= j;
      LaurentPoly f = LaurentPoly::one();
      f.add_term(xj, -1);
      r /= RationalFunc::from_poly(f);
    }
  }
  return r;
}

void QHypTerm::insert_factor(Monomial base, int mult) {
  if (mult == 0) return;
  int qexp = base.e[VarQ];
  if (qexp != 0) {
    // (x q^m; q)_inf = (x;q)_inf / (x;q)_m
    base.e[VarQ] = 0;
    bool degenerate = true;
    for (int i = 0; i < 4; ++i) {
      if (base.e[i] != 0) degenerate = false;
    }
    if (degenerate)
      throw std::domain_error("Pochhammer base degenerates to a pure q-power");
    rat_ *= qpochhammer_finite(base, qexp).pow(-mult);
  }
  auto [it, inserted] = poch_.emplace(base, mult);
  if (!inserted) {
    it->second += mult;
    if (it->second == 0) poch_.erase(it);
  }
}

QHypTerm::QHypTerm(RationalFunc rat, const std::map<Monomial, int, MonoGreater>& poch)
    : rat_(std::move(rat)) {
  check_nonzero();
  for (const auto& [base, mult] : poch) insert_factor(base, mult);
}

QHypTerm QHypTerm::pochhammer(const Monomial& base, int mult) {
  QHypTerm t;
  t.insert_factor(base, mult);
  return t;
}

QHypTerm QHypTerm::operator*(const QHypTerm& o) const {
  QHypTerm r(*this);
  r.rat_ *= o.rat_;
  for (const auto& [base, mult] : o.poch_) r.insert_factor(base, mult);
  return r;
}

QHypTerm QHypTerm::inverse() const {
  QHypTerm r(rat_.inverse());
  for (const auto& [base, mult] : poch_) r.insert_factor(base, -mult);
  return r;
}

RationalFunc shift_ratio(const QHypTerm& f, const ShiftOp& P) {
  RationalFunc ratio = P.apply(f.rat()) / f.rat();
  for (const auto& [base, mult] : f.poch()) {
    int m = 0;
    for (int i = 0; i < 4; ++i) m += P.k[i] * base.e[i];
    if (m != 0) ratio *= qpochhammer_finite(base, m).pow(-mult);
  }
  return ratio;
}

QHypTerm act_on_term(const ParamMatrix& L, const QHypTerm& f) {
  auto T = L.function_exponent_map();
  QHypTerm r(f.rat().transformed(T));
  for (const auto& [base, mult] : f.poch()) {
    Monomial nb;
    for (int i = 0; i < kNumVars; ++i) {
      long s = 0;
      for (int j = 0; j < kNumVars; ++j) s += T[i][j] * base.e[j];
      nb.e[i] = static_cast<int>(s);
    }
    r = r * QHypTerm::pochhammer(nb, mult);
  }
  return r;
}

Transformation Transformation::inverse() const {
  ParamMatrix minv = mat.inverse();
  return {act_on_term(minv, term.inverse()), minv};
}

Transformation trans_multiply(const Transformation& t1, const Transformation& t2) {
  return {t1.term * act_on_term(t1.mat, t2.term), t1.mat * t2.mat};
}

bool trans_equal(const Transformation& t1, const Transformation& t2) {
  return t1.mat == t2.mat && t1.term == t2.term;
}

const Transformation& heine_transformation() {
  static const Transformation t = [] {
    QHypTerm f = QHypTerm::pochhammer(Monomial::var(VarB)) *
                 QHypTerm::pochhammer(Monomial::var(VarA) * Monomial::var(VarZ)) *
                 QHypTerm::pochhammer(Monomial::var(VarC), -1) *
                 QHypTerm::pochhammer(Monomial::var(VarZ), -1);
    return Transformation{f, heine_matrix()};
  }();
  return t;
}

const Transformation& ab_swap_transformation() {
  static const Transformation t{QHypTerm::one(), ab_swap_matrix()};
  return t;
}

}  // namespace qheine
