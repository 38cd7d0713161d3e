#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/exactnum/rational.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

/// sigma = P/Q with Q a primitive integer polynomial; P may keep rational coefficients.
struct IntegralForm {
    Poly<Rationals> num;
    Poly<Rationals> den;
};

IntegralForm integral_form(const RatFunc<Rationals>& sigma);

/// Outcome of reducing a map over Q modulo a prime.
struct Reduction {
    std::optional<RatFunc<GaloisField>> map;
    /// Every failed goodness condition; empty iff the prime is good.
    std::vector<std::string> reasons;

    bool good() const { return map.has_value(); }
    std::string reason() const;
};

/// Reduces sigma modulo p. A prime is bad when p is 2 or 3, p <= deg sigma, a
/// coefficient of P has denominator divisible by p, the degree drops, or the
/// reductions of P and Q acquire a common factor. Throws NotPrime.
Reduction rf_reduce_mod_p(const RatFunc<Rationals>& sigma, std::uint64_t p);

/// Coefficientwise image in F_q; throws DivisionByZero if a denominator vanishes.
RatFunc<GaloisField> reduce_coefficients(const RatFunc<Rationals>& f, const GaloisField& field);
Poly<GaloisField> reduce_coefficients(const Poly<Rationals>& f, const GaloisField& field);

}  // namespace flatlab
