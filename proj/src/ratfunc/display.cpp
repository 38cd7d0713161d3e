#include "flatlab/ratfunc/display.hpp"

#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

namespace {

std::size_t term_count(const Poly<Rationals>& p) {
    std::size_t n = 0;
    for (const auto& c : p.coeffs()) n += c == 0 ? 0 : 1;
    return n;
}

std::string wrap(const std::string& s, bool needed) { return needed ? "(" + s + ")" : s; }

/// Product of factor powers over F_q, without the unit. `atomic` is set when the
/// result needs no parentheses as an operand of '*' or '/'.
std::string factor_product(const Factorization& fac, char var, bool bare_allowed, bool& atomic) {
    std::string out;
    atomic = fac.factors.size() == 1;
    for (const auto& fp : fac.factors) {
        if (!out.empty()) out += "*";
        const bool monomial = fp.factor.degree() == 1 && fp.factor.field().is_zero(fp.factor.coeff(0));
        std::string s = to_string(fp.factor, var);
        if (!monomial) {
            const bool bare = bare_allowed && fac.factors.size() == 1 && fp.multiplicity == 1;
            if (!bare) s = "(" + s + ")";
            if (bare) atomic = false;
        }
        out += s;
        if (fp.multiplicity > 1) out += "^" + std::to_string(fp.multiplicity);
    }
    return out;
}

}  // namespace

std::string to_integral_string(const RatFunc<Rationals>& r, char var) {
    BigInt scale = 1;
    for (const auto* p : {&r.num(), &r.den()}) {
        for (const auto& c : p->coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    }
    BigInt content = 0;
    for (const auto* p : {&r.num(), &r.den()}) {
        for (const auto& c : p->coeffs()) {
            const BigInt v = c.get_num() * (scale / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        }
    }
    const BigRational factor(scale, content);
    const Poly<Rationals> num = r.num().scaled(factor);
    const Poly<Rationals> den = r.den().scaled(factor);
    if (den.is_one()) return to_string(num, var);
    return wrap(to_string(num, var), term_count(num) > 1) + "/" + wrap(to_string(den, var), term_count(den) > 1 || (den.degree() > 0 && den.leading() != 1));
}

std::string to_factored_string(const RatFunc<GaloisField>& r, char var) {
    const GaloisField& f = r.field();
    if (r.is_zero()) return "0";
    const Factorization nf = r.num().degree() > 0 ? poly_factor(r.num()) : Factorization{r.num().leading(), {}};
    const std::string unit = f.in_prime_field(nf.unit) ? f.to_string(nf.unit) : "(" + f.to_string(nf.unit) + ")";
    bool atomic = false;
    const std::string nprod = factor_product(nf, var, f.is_one(nf.unit) && r.den().degree() == 0, atomic);
    std::string num;
    if (nprod.empty()) {
        num = unit;
    } else {
        num = f.is_one(nf.unit) ? nprod : unit + "*" + nprod;
    }
    if (r.den().degree() == 0) return num;
    const std::string dprod = factor_product(poly_factor(r.den()), var, false, atomic);
    return num + "/" + (atomic ? dprod : "(" + dprod + ")");
}

}  // namespace flatlab
