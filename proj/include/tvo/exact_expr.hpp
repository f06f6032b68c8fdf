#pragma once

#include <string>

#include "tvo/numeric.hpp"

namespace tvo {

// Evaluates a closed-form complex constant written as an expression over
// integers, `i`, and `pi` with + - * / ^ (integer powers), parentheses,
// unary minus, and the functions sqrt(), exp(), conj().  Used for the
// expected-value column of comparison tables, so that files carry the exact
// form (e.g. "(13-sqrt(13))/26" or "exp(7*i*pi/12)") rather than rounded
// decimals.  Throws Error(SchemaError) on malformed input.
cd evaluate_closed_form(const std::string& text);

}  // namespace tvo
