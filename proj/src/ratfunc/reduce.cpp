#include "flatlab/ratfunc/reduce.hpp"

namespace flatlab {

namespace {

/// Scales a nonzero polynomial to a primitive integer polynomial with positive leading coefficient.
Poly<Rationals> primitive_part(const Poly<Rationals>& f) {
    BigInt den_lcm = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    BigInt content = 0;
    for (const auto& c : f.coeffs()) {
        const BigInt v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    BigRational scale(den_lcm, content);
    scale.canonicalize();
    if (f.leading() < 0) scale = -scale;
    return f.scaled(scale);
}

}  // namespace

std::string Reduction::reason() const {
    std::string out;
    for (const auto& r : reasons) {
        if (!out.empty()) out += "; ";
        out += r;
    }
    return out;
}

IntegralForm integral_form(const RatFunc<Rationals>& sigma) {
    Poly<Rationals> den = primitive_part(sigma.den());
    const BigRational scale = den.leading() / sigma.den().leading();
    return {sigma.num().scaled(scale), std::move(den)};
}

Reduction rf_reduce_mod_p(const RatFunc<Rationals>& sigma, std::uint64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    Reduction out;
    const int d = sigma.degree();
    if (p == 2 || p == 3) out.reasons.push_back("p in {2, 3} is excluded");
    if (p <= static_cast<std::uint64_t>(d)) out.reasons.push_back("p <= degree " + std::to_string(d));

    const IntegralForm integral = integral_form(sigma);
    const BigInt pz(static_cast<unsigned long>(p));
    bool integral_at_p = true;
    for (const auto& c : integral.num.coeffs()) {
        if (mpz_divisible_p(c.get_den_mpz_t(), pz.get_mpz_t())) integral_at_p = false;
    }
    if (!integral_at_p) {
        out.reasons.push_back("coefficient denominator divisible by p");
        return out;
    }

    const GaloisField field = field_create(p, 1);
    const Poly<GaloisField> num = reduce_coefficients(integral.num, field);
    const Poly<GaloisField> den = reduce_coefficients(integral.den, field);
    if (std::max(num.degree(), den.degree()) != d) out.reasons.push_back("degree drops modulo p");
    if (!num.is_zero() && gcd(num, den).degree() > 0) {
        out.reasons.push_back("numerator and denominator share a factor modulo p");
    }
    if (num.is_zero() && d > 0) out.reasons.push_back("numerator vanishes modulo p");
    if (out.reasons.empty()) out.map = RatFunc<GaloisField>(num, den);
    return out;
}

Poly<GaloisField> reduce_coefficients(const Poly<Rationals>& f, const GaloisField& field) {
    return map_coeffs(f, field, [&](const BigRational& c) { return field.from_rational(c); });
}

RatFunc<GaloisField> reduce_coefficients(const RatFunc<Rationals>& f, const GaloisField& field) {
    return RatFunc<GaloisField>(reduce_coefficients(f.num(), field), reduce_coefficients(f.den(), field));
}

}  // namespace flatlab
