#include "qheine/param_group.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace qheine {

namespace {

long det_rec(const std::vector<std::vector<long>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long det = 0, sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] != 0) {
      std::vector<std::vector<long>> minor;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<long> row;
        for (std::size_t jj = 0; jj < n; ++jj) {
          if (jj != j) row.push_back(m[i][jj]);
        }
        minor.push_back(std::move(row));
      }
      det += sign * m[0][j] * det_rec(minor);
    }
    sign = -sign;
  }
  return det;
}

}  // namespace

long det5(const ParamMatrix::Entries& m) {
  std::vector<std::vector<long>> v(5, std::vector<long>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) v[i][j] = m[i][j];
  return det_rec(v);
}

ParamMatrix::Entries ParamMatrix::identity_entries() {
  Entries e{};
  for (int i = 0; i < 5; ++i) e[i][i] = 1;
  return e;
}

ParamMatrix::ParamMatrix(const Entries& m) : m_(m) {
  static const std::array<long, 5> bottom = {0, 0, 0, 0, 1};
  if (m_[4] != bottom) throw std::invalid_argument("matrix bottom row must be (0,0,0,0,1)");
  long d = det5(m_);
  if (d != 1 && d != -1) throw std::invalid_argument("matrix must be unimodular");
}

ParamMatrix ParamMatrix::operator*(const ParamMatrix& o) const {
  Entries r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      long s = 0;
      for (int k = 0; k < 5; ++k) s += m_[i][k] * o.m_[k][j];
      r[i][j] = s;
    }
  return ParamMatrix(r);
}

ParamMatrix ParamMatrix::inverse() const {
  // Adjugate over the integers; valid since det = +-1.
  long d = det5(m_);
  Entries inv{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      std::vector<std::vector<long>> minor;
      for (int r = 0; r < 5; ++r) {
        if (r == j) continue;
        std::vector<long> row;
        for (int c = 0; c < 5; ++c) {
          if (c != i) row.push_back(m_[r][c]);
        }
        minor.push_back(std::move(row));
      }
      long cof = det_rec(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv[i][j] = cof * d;
    }
  }
  return ParamMatrix(inv);
}

ParamMatrix::Entries ParamMatrix::function_exponent_map() const {
  Entries inv = inverse().entries();
  Entries t{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) t[i][j] = inv[j][i];
  return t;
}

int ShiftOp::degree() const {
  return std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2]) + std::abs(k[3]);
}

ParamMatrix ShiftOp::to_matrix() const {
  ParamMatrix::Entries e{};
  for (int i = 0; i < 5; ++i) e[i][i] = 1;
  for (int i = 0; i < 4; ++i) e[i][4] = -k[i];
  return ParamMatrix(e);
}

bool is_shift_matrix(const ParamMatrix& M) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (M.at(i, j) != (i == j ? 1 : 0)) return false;
    }
  return true;
}

ShiftOp shift_from_matrix(const ParamMatrix& M) {
  if (!is_shift_matrix(M)) throw std::invalid_argument("matrix is not in the shift subgroup N");
  ShiftOp s;
  for (int i = 0; i < 4; ++i) s.k[i] = static_cast<int>(-M.at(i, 4));
  return s;
}

Monomial act_on_monomial(const ParamMatrix& M, const Monomial& x) {
  Monomial r;
  for (int j = 0; j < 5; ++j) {
    long s = 0;
    for (int i = 0; i < 5; ++i) s += M.at(i, j) * x.e[i];
    r.e[j] = static_cast<int>(s);
  }
  return r;
}

RationalFunc act_on_function(const ParamMatrix& M, const RationalFunc& f) {
  return f.transformed(M.function_exponent_map());
}

LaurentPoly act_on_poly(const ParamMatrix& M, const LaurentPoly& p) {
  return p.transformed(M.function_exponent_map());
}

ShiftOp conjugate_shift(const ParamMatrix& L, const ShiftOp& P) {
  return shift_from_matrix(L * P.to_matrix() * L.inverse());
}

const ParamMatrix& heine_matrix() {
  static const ParamMatrix m(ParamMatrix::Entries{{{0, -1, 1, 0, 0},
                                                   {0, 0, 0, 1, 0},
                                                   {1, 0, 0, 1, 0},
                                                   {0, 1, 0, 0, 0},
                                                   {0, 0, 0, 0, 1}}});
  return m;
}

const ParamMatrix& ab_swap_matrix() {
  static const ParamMatrix m(ParamMatrix::Entries{{{0, 1, 0, 0, 0},
                                                   {1, 0, 0, 0, 0},
                                                   {0, 0, 1, 0, 0},
                                                   {0, 0, 0, 1, 0},
                                                   {0, 0, 0, 0, 1}}});
  return m;
}

std::string shift_to_string(const ShiftOp& s) {
  if (s.is_identity()) return "1";
  static const char* names[4] = {"A", "B", "C", "Z"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (s.k[i] == 0) continue;
    if (!first) os << " ";
    first = false;
    os << names[i];
    if (s.k[i] != 1) os << "^" << s.k[i];
  }
  return os.str();
}

ShiftOp parse_shift(const std::string& text) {
  ShiftOp s;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '[') {
    ++i;
    for (int idx = 0; idx < 4; ++idx) {
      skip_ws();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw std::invalid_argument("bad shift vector: " + text);
      s.k[idx] = std::stoi(text.substr(start, i - start));
      skip_ws();
      if (idx < 3) {
        if (i >= text.size() || text[i] != ',') throw std::invalid_argument("bad shift vector: " + text);
        ++i;
      }
    }
    skip_ws();
    if (i >= text.size() || text[i] != ']') throw std::invalid_argument("bad shift vector: " + text);
    ++i;
    skip_ws();
    if (i != text.size()) throw std::invalid_argument("trailing characters in shift: " + text);
    return s;
  }
  if (text.substr(i) == "1") return s;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    int idx;
    switch (std::toupper(static_cast<unsigned char>(text[i]))) {
      case 'A': idx = 0; break;
      case 'B': idx = 1; break;
      case 'C': idx = 2; break;
      case 'Z': idx = 3; break;
      default: throw std::invalid_argument("bad shift factor in: " + text);
    }
    ++i;
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw std::invalid_argument("bad exponent in shift: " + text);
      exp = std::stoi(text.substr(start, i - start));
    }
    s.k[idx] += exp;
  }
  return s;
}

}  // namespace qheine
