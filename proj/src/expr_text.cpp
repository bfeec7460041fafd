#include "qheine/expr_text.hpp"

#include <cctype>
#include <sstream>

namespace qheine {

namespace {

void render_term(std::ostream& os, const Monomial& m, const Rational& c, bool first,
                 bool latex) {
  Rational ac = c < 0 ? Rational(-c) : c;
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  bool has_vars = !m.is_one();
  bool coeff_shown = !has_vars || ac != 1;
  if (coeff_shown) {
    if (latex && ac.get_den() != 1) {
      os << "\\frac{" << ac.get_num().get_str() << "}{" << ac.get_den().get_str() << "}";
    } else {
      os << ac.get_str();
    }
    if (has_vars && !latex) os << " * ";
    if (has_vars && latex) os << " ";
  }
  bool firstv = true;
  for (int i = 0; i < kNumVars; ++i) {
    if (m.e[i] == 0) continue;
    if (!firstv) os << (latex ? " " : " ");
    firstv = false;
    os << kVarNames[i];
    if (m.e[i] != 1) {
      if (latex) {
        os << "^{" << m.e[i] << "}";
      } else {
        os << "^" << m.e[i];
      }
    }
  }
}

std::string render(const LaurentPoly& p, bool latex) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    render_term(os, m, c, first, latex);
    first = false;
  }
  return os.str();
}

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw std::invalid_argument("expected '" + std::string(1, c) + "' in expression");
  }

  long parse_int() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw std::invalid_argument("expected integer in expression");
    return std::stol(s.substr(start, i - start));
  }

  Rational parse_rational() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string numpart = s.substr(start, i - start);
    std::size_t save = i;
    skip_ws();
    if (i < s.size() && s[i] == '/') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        i = j;
        std::size_t dstart = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        Rational r(numpart + "/" + s.substr(dstart, i - dstart));
        r.canonicalize();
        return r;
      }
    }
    i = save;
    return Rational(numpart);
  }

  int var_index(char c) {
    for (int v = 0; v < kNumVars; ++v) {
      if (kVarNames[v][0] == c) return v;
    }
    return -1;
  }

  // coeff? ('*'? var ('^' int)?)*
  LaurentPoly parse_term() {
    Rational coeff(1);
    Monomial mono;
    skip_ws();
    bool any = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = parse_rational();
      any = true;
    }
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      if (i >= s.size()) break;
      int v = var_index(s[i]);
      if (v < 0) break;
      ++i;
      int exp = 1;
      skip_ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        exp = static_cast<int>(parse_int());
      }
      mono.e[v] += exp;
      any = true;
    }
    if (!any) throw std::invalid_argument("empty term in expression");
    return LaurentPoly::term(mono, coeff);
  }

  LaurentPoly parse_sum() {
    LaurentPoly p;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    while (true) {
      LaurentPoly t = parse_term();
      p += neg ? -t : t;
      skip_ws();
      if (accept('+')) {
        neg = false;
      } else if (accept('-')) {
        neg = true;
      } else {
        break;
      }
    }
    return p;
  }
};

}  // namespace

std::string render_poly(const LaurentPoly& p) { return render(p, false); }

std::string render_rational_func(const RationalFunc& f) {
  if (f.is_polynomial()) return render_poly(f.num());
  return "(" + render_poly(f.num()) + ") / (" + render_poly(f.den()) + ")";
}

LaurentPoly parse_poly(const std::string& text) {
  Parser p(text);
  p.skip_ws();
  if (p.eof()) throw std::invalid_argument("empty expression");
  LaurentPoly out;
  if (p.accept('(')) {
    out = p.parse_sum();
    p.expect(')');
  } else {
    out = p.parse_sum();
  }
  if (!p.eof()) throw std::invalid_argument("trailing characters in expression");
  return out;
}

RationalFunc parse_rational_func(const std::string& text) {
  // Split on a top-level '/' between parenthesized groups, if present.
  int depth = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '/' && depth == 0) {
      // Distinguish a rational coefficient's slash by what follows:
      // a denominator group starts with '('.
      std::size_t j = k + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '(') {
        return RationalFunc(parse_poly(text.substr(0, k)), parse_poly(text.substr(k + 1)));
      }
    }
  }
  return RationalFunc::from_poly(parse_poly(text));
}

std::string latex_poly(const LaurentPoly& p) { return render(p, true); }

std::string latex_rational_func(const RationalFunc& f) {
  if (f.is_polynomial()) return latex_poly(f.num());
  return "\\frac{" + latex_poly(f.num()) + "}{" + latex_poly(f.den()) + "}";
}

}  // namespace qheine
