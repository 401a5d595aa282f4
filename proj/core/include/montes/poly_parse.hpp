#pragma once

#include <map>
#include <string>

#include "montes/zpoly.hpp"

namespace montes {

// Parses either an expression in x over the integers (+ - * ^ and
// parentheses, juxtaposition is not multiplication) or an ascending
// coefficient list "[c0, c1, ..., cn]". Identifiers other than x are
// looked up in `bindings`. Throws ParseError with the offending offset.
IntPoly parse_poly(const std::string& text, const std::map<std::string, IntPoly>& bindings = {});

// Decimal integer, optionally signed.
mpz_class parse_integer(const std::string& text);

}  // namespace montes
