#pragma once

#include <string>

#include <json.hpp>

#include "stablepoly/multipoly.hpp"

namespace stablepoly {

// Text format. The canonical form emitted by formatText is
//
//   poly := term ('+' term)*
//   term := '(' re ('+'|'-') im 'i' ')' ('*' var)*   |   var ('*' var)*
//   var  := 'x' index ('^' exponent)?
//
// with 1-based variable indices and full-precision coefficients, so
// parseText(formatText(f)) == f exactly. The parser accepts a superset:
// bare real literals, '-' between terms, parenthesized subexpressions and
// powers of groups, e.g. "1 - x1*x2" or "x1*(x1+3)". Whitespace is
// insignificant. The variable count is inferred from the largest index seen
// (before cancellation) unless declaredNvars >= 0 pins it.
MultiPoly parseText(const std::string& text, int declaredNvars = -1);
std::string formatText(const MultiPoly& f);

// JSON form: {"nvars": d, "terms": [{"exp": [e1,...,ed], "re": r, "im": s}]}.
nlohmann::json toJson(const MultiPoly& f);
MultiPoly multiPolyFromJson(const nlohmann::json& j);

// Accepts either the text grammar or the JSON object form (first non-space
// character '{'), or a path understood by the CLI layer.
MultiPoly parseAny(const std::string& text);

std::string formatComplex(Complex c);

}  // namespace stablepoly
