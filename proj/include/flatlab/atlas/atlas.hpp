#pragma once

#include <cstdint>
#include <string>

#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/exactnum/rational.hpp"
#include "flatlab/forms/tuple_form.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

enum class Family { power, chebyshev, lattes };

std::string to_string(Family f);

/// A flat map over F_p with a form satisfying sigma^* form = lambda form.
struct FlatCertificate {
    Family family;
    RatFunc<GaloisField> sigma;
    TupleForm<GaloisField> form;
    FqRaw lambda;
};

/// t^d, or 1/t^|d| for negative d; |d| >= 2.
RatFunc<Rationals> power_map(long long d);
/// sigma = t^d mod p with omega = (dt/t)^{p-1}. BadPrime if p in {2,3} or p | d.
FlatCertificate power_certificate(long long d, std::uint64_t p);

/// Cheb_d from Cheb_0 = 2, Cheb_1 = t, Cheb_{k+1} = t Cheb_k - Cheb_{k-1}, checked
/// against Cheb_d(t + 1/t) = t^d + t^{-d}; negated when `negative`.
Poly<Rationals> chebyshev_poly(unsigned d, bool negative = false);
/// +-Cheb_d mod p with omega = (dt)^{p-1} / (t^2 - 4)^{(p-1)/2}. BadPrime unless
/// p is odd, p does not divide d and p > d.
FlatCertificate chebyshev_certificate(unsigned d, bool negative, std::uint64_t p);

/// y^2 = x^3 + a x + b over K.
template <class K>
struct EllipticCurve {
    K field;
    typename K::value_type a;
    typename K::value_type b;

    /// Throws SingularCurve when 4a^3 + 27b^2 = 0.
    void check() const {
        const auto a3 = field.mul(field.mul(a, a), a);
        const auto disc = field.add(field.mul(field.from_int(4), a3), field.mul(field.from_int(27), field.mul(b, b)));
        if (field.is_zero(disc)) throw SingularCurve("4a^3 + 27b^2 vanishes");
    }

    /// x^3 + a x + b
    Poly<K> cubic() const { return Poly<K>(field, {b, a, field.zero(), field.one()}); }
};

/// xi_m with xi_m(x(P)) = x(mP), of degree m^2, from division polynomials.
/// Over F_p requires p > 2 m^2 (BadCharacteristic otherwise).
template <class K>
RatFunc<K> ec_mul_x(const EllipticCurve<K>& e, unsigned m);

extern template RatFunc<Rationals> ec_mul_x(const EllipticCurve<Rationals>&, unsigned);
extern template RatFunc<GaloisField> ec_mul_x(const EllipticCurve<GaloisField>&, unsigned);

RatFunc<Rationals> lattes_map(const BigRational& a, const BigRational& b, unsigned m);
/// xi_m mod p with omega = (dx)^2 / (x^3 + a x + b) and lambda = m^2.
FlatCertificate lattes_certificate(const BigRational& a, const BigRational& b, unsigned m, std::uint64_t p);

}  // namespace flatlab
