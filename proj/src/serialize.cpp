#include "qheine/serialize.hpp"

#include <stdexcept>

namespace qheine {

Json shift_to_json(const ShiftOp& s) {
  return Json{s.k[0], s.k[1], s.k[2], s.k[3]};
}

ShiftOp shift_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("shift JSON must be an array of 4 integers");
  ShiftOp s;
  for (int i = 0; i < 4; ++i) s.k[i] = j[i].get<int>();
  return s;
}

Json matrix_to_json(const ParamMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out.push_back(m.at(i, j));
  return out;
}

ParamMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 25)
    throw std::invalid_argument("matrix JSON must be a row-major array of 25 integers");
  ParamMatrix::Entries e;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) e[r][c] = j[r * 5 + c].get<long>();
  return ParamMatrix(e);
}

Json operator_to_json(const DiffOperator& d) {
  Json out = Json::array();
  for (const auto& [s, c] : d.terms())
    out.push_back({{"shift", shift_to_json(s)}, {"coeff", render_rational_func(c)}});
  return out;
}

DiffOperator operator_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("operator JSON must be a list of terms");
  DiffOperator d;
  for (const auto& t : j)
    d.add_term(shift_from_json(t.at("shift")), parse_rational_func(t.at("coeff").get<std::string>()));
  return d;
}

Json relation_to_json(const ThreeTermRelation& rel, int verified_to_order) {
  Json shifts = Json::array(), coeffs = Json::array();
  for (int i = 0; i < 3; ++i) {
    shifts.push_back(shift_to_json(rel.shifts[i]));
    coeffs.push_back(render_poly(rel.coeffs[i]));
  }
  return Json{{"shifts", shifts}, {"coeffs", coeffs}, {"verified_to_order", verified_to_order}};
}

ThreeTermRelation relation_from_json(const Json& j) {
  ThreeTermRelation rel;
  for (int i = 0; i < 3; ++i) {
    rel.shifts[i] = shift_from_json(j.at("shifts").at(i));
    rel.coeffs[i] = parse_poly(j.at("coeffs").at(i).get<std::string>());
  }
  return rel;
}

Json term_to_json(const QHypTerm& t) {
  Json poch = Json::array();
  for (const auto& [base, mult] : t.poch())
    poch.push_back({{"base", render_poly(LaurentPoly::term(base, 1))}, {"mult", mult}});
  return Json{{"rat", render_rational_func(t.rat())}, {"poch", poch}};
}

QHypTerm term_from_json(const Json& j) {
  QHypTerm t(parse_rational_func(j.at("rat").get<std::string>()));
  for (const auto& f : j.at("poch")) {
    LaurentPoly base = parse_poly(f.at("base").get<std::string>());
    if (!base.is_monomial() || base.leading_coeff() != 1)
      throw std::invalid_argument("Pochhammer base must be a monomial");
    t = t * QHypTerm::pochhammer(base.leading_monomial(), f.at("mult").get<int>());
  }
  return t;
}

Json transformation_to_json(const Transformation& t) {
  return Json{{"term", term_to_json(t.term)}, {"matrix", matrix_to_json(t.mat)}};
}

Transformation transformation_from_json(const Json& j) {
  return {term_from_json(j.at("term")), matrix_from_json(j.at("matrix"))};
}

Json classification_report_to_json(const ClassificationReport& r) {
  Json candidates = Json::array();
  for (const auto& cr : r.results) {
    candidates.push_back({{"shift", shift_to_json(cr.shift)},
                          {"canonical", cr.canonical},
                          {"pass", cr.pass},
                          {"witness", render_rational_func(cr.witness)}});
  }
  Json survivors = Json::array();
  for (const auto& s : r.survivors) survivors.push_back(shift_to_json(s));
  Json survivors_mod_inv = Json::array();
  for (const auto& s : r.survivors_mod_inversion) survivors_mod_inv.push_back(shift_to_json(s));
  Json dups = Json::array();
  for (const auto& row : r.duplicate_expected_rows)
    dups.push_back(shift_to_json(ShiftOp{row}));
  Json missing = Json::array();
  for (const auto& row : r.missing_expected_rows)
    missing.push_back(shift_to_json(ShiftOp{row}));
  return Json{{"candidates", candidates},
              {"candidate_count", r.candidate_count},
              {"survivors", survivors},
              {"survivors_mod_inversion", survivors_mod_inv},
              {"survivors_match_expected", r.survivors_match_expected},
              {"duplicate_expected_rows", dups},
              {"missing_expected_rows", missing},
              {"timings", {{"total_seconds", r.elapsed_seconds}}}};
}

std::string latex_shift(const ShiftOp& s) {
  static const char* names[4] = {"A", "B", "C", "Z"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (s.k[i] == 0) continue;
    out += names[i];
    if (s.k[i] != 1) out += "^{" + std::to_string(s.k[i]) + "}";
  }
  return out.empty() ? "1" : out;
}

std::string latex_relation(const ThreeTermRelation& rel) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i > 0) out += " + ";
    out += "\\left(" + latex_poly(rel.coeffs[i]) + "\\right) " + latex_shift(rel.shifts[i]);
  }
  return out;
}

std::string latex_operator(const DiffOperator& d) {
  if (d.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [s, c] : d.terms()) {
    if (!first) out += " + ";
    first = false;
    out += "\\left(" + latex_rational_func(c) + "\\right) " + latex_shift(s);
  }
  return out;
}

std::string latex_candidate_table(const std::vector<CandidateY>& candidates) {
  std::string out = "\\begin{tabular}{cccc}\n$k_a$ & $k_b$ & $k_c$ & $k_z$\\\\\n\\hline\n";
  for (const auto& c : candidates) {
    out += std::to_string(c.shift.k[0]) + " & " + std::to_string(c.shift.k[1]) + " & " +
           std::to_string(c.shift.k[2]) + " & " + std::to_string(c.shift.k[3]) + " \\\\\n";
  }
  out += "\\end{tabular}\n";
  return out;
}

}  // namespace qheine
