#pragma once

#include <json.hpp>

#include "qheine/classify.hpp"
#include "qheine/expr_text.hpp"

namespace qheine {

using Json = nlohmann::json;

// Shift: array of 4 ints. Matrix: row-major array of 25 ints.
Json shift_to_json(const ShiftOp& s);
ShiftOp shift_from_json(const Json& j);
Json matrix_to_json(const ParamMatrix& m);
ParamMatrix matrix_from_json(const Json& j);

// Operator: list of {"shift": [4 ints], "coeff": expr-string}.
Json operator_to_json(const DiffOperator& d);
DiffOperator operator_from_json(const Json& j);

// Relation: {"shifts": [[...] x3], "coeffs": [expr x3], "verified_to_order": K}.
Json relation_to_json(const ThreeTermRelation& rel, int verified_to_order);
ThreeTermRelation relation_from_json(const Json& j);

// Term: {"rat": expr, "poch": [{"base": expr, "mult": int}]}.
Json term_to_json(const QHypTerm& t);
QHypTerm term_from_json(const Json& j);

// Transformation: {"term": ..., "matrix": [...]}.
Json transformation_to_json(const Transformation& t);
Transformation transformation_from_json(const Json& j);

Json classification_report_to_json(const ClassificationReport& r);

std::string latex_shift(const ShiftOp& s);
std::string latex_relation(const ThreeTermRelation& rel);
std::string latex_operator(const DiffOperator& d);
std::string latex_candidate_table(const std::vector<CandidateY>& candidates);

}  // namespace qheine
