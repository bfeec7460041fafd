#include "qheine/diff_op.hpp"

namespace qheine {

DiffOperator DiffOperator::term(const ShiftOp& s, RationalFunc coeff) {
  DiffOperator d;
  if (!coeff.is_zero()) d.terms_.emplace(s, std::move(coeff));
  return d;
}

RationalFunc DiffOperator::coeff(const ShiftOp& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? RationalFunc::zero() : it->second;
}

void DiffOperator::add_term(const ShiftOp& s, const RationalFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r(*this);
  for (auto& [s, c] : r.terms_) c = -c;
  return r;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator r;
  for (const auto& [p, rp] : a.terms()) {
    for (const auto& [q, sq] : b.terms()) {
      r.add_term(p * q, rp * p.apply(sq));
    }
  }
  return r;
}

DiffOperator DiffOperator::scaled(const RationalFunc& r) const {
  DiffOperator out;
  if (r.is_zero()) return out;
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, r * c);
  return out;
}

DiffOperator op_multiply(const DiffOperator& a, const DiffOperator& b) { return a * b; }

DiffOperator conjugate_op(const Transformation& t, const DiffOperator& D) {
  DiffOperator out;
  for (const auto& [P, r] : D.terms()) {
    ShiftOp Pc = conjugate_shift(t.mat, P);
    RationalFunc coeff = act_on_function(t.mat, r) / shift_ratio(t.term, Pc);
    out.add_term(Pc, coeff);
  }
  return out;
}

}  // namespace qheine
