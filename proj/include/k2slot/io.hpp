#pragma once

#include <string>

#include "k2slot/funcfield.hpp"

namespace k2slot {

std::string render_int(i64 n);

// Canonical text forms: fully distributed monomials in ascending degree,
// explicit '*', coefficients reduced into [0, p). These strings reparse to
// the same objects under the session grammar.
std::string render_fqelem(const FieldSpec& F, const FqElem& a);
std::string render_poly(const FieldSpec& F, const Poly& f, const std::string& var = "t");
std::string render_ratfun(const FieldSpec& F, const RatFun& f);

// Finite places print as their monic polynomial, the degree valuation as
// "inf".
std::string render_place(const FieldSpec& F, const Place& v);

}  // namespace k2slot
