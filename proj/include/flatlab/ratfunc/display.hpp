#pragma once

#include <string>

#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/exactnum/rational.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

/// N/D scaled so both have integer coefficients with overall content 1 and D
/// has positive leading coefficient, e.g. "(x^4 - 2*x^2 + 1)/(4*x^3 + 4*x)".
std::string to_integral_string(const RatFunc<Rationals>& r, char var = 't');

/// Factored into monic irreducibles over the coefficient field, e.g. "1/(t^2 + 3)^3".
std::string to_factored_string(const RatFunc<GaloisField>& r, char var = 't');

}  // namespace flatlab
