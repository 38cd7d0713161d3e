#include "flatlab/orbifold/orbifold.hpp"

#include <numeric>

#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

namespace detail {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw InternalError("mu value overflow");
    return r;
}

}  // namespace detail

MuValue MuValue::lcm(const MuValue& o) const {
    if (is_infinity() || o.is_infinity()) return infinity();
    const std::uint64_t g = std::gcd(*n_, *o.n_);
    return finite(detail::checked_mul(*n_ / g, *o.n_));
}

BigRational euler_char(const std::vector<MuValue>& mus) {
    BigRational chi = 2;
    for (const auto& m : mus) {
        chi -= 1;
        if (!m.is_infinity()) chi += BigRational(1, m.value());
    }
    chi.canonicalize();
    return chi;
}

std::string to_string(FlatHint h) {
    switch (h) {
        case FlatHint::power_like:
            return "power-like";
        case FlatHint::chebyshev_like:
            return "chebyshev-like";
        case FlatHint::lattes_like:
            return "lattes-like";
    }
    return "";
}

std::string Signature::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += values[i].to_string();
    }
    return out + ")";
}

Signature parabolic_signature(const std::vector<MuValue>& mus) {
    Signature s;
    s.values = mus;
    std::sort(s.values.begin(), s.values.end());
    s.parabolic = euler_char(mus) == 0;
    if (!s.parabolic) return s;
    const std::string key = s.to_string();
    if (key == "(inf,inf)") {
        s.hint = FlatHint::power_like;
    } else if (key == "(2,2,inf)") {
        s.hint = FlatHint::chebyshev_like;
    } else if (key == "(2,2,2,2)" || key == "(3,3,3)" || key == "(2,4,4)" || key == "(2,3,6)") {
        s.hint = FlatHint::lattes_like;
    } else {
        throw InternalError("unexpected parabolic signature " + key);
    }
    return s;
}

KummerGenus kummer_genus(const TupleForm<GaloisField>& w) {
    if (w.weight <= 0) throw BadWeight("Kummer cover needs a positive weight");
    if (w.f.is_zero()) throw ZeroPolynomial("Kummer cover of the zero form");
    const auto nu = static_cast<std::uint64_t>(w.weight);
    const std::uint64_t p = w.field().characteristic();
    if (nu % p == 0) throw WeightDivisibleByP("weight divisible by the characteristic");

    // (order, number of geometric points with that order)
    std::vector<std::pair<long long, std::uint64_t>> divisor;
    auto add_factors = [&](const Poly<GaloisField>& poly, long long sign) {
        if (poly.degree() <= 0) return;
        for (const auto& fp : poly_factor(poly).factors) {
            divisor.emplace_back(sign * static_cast<long long>(fp.multiplicity),
                                 static_cast<std::uint64_t>(fp.factor.degree()));
        }
    };
    add_factors(w.f.num(), 1);
    add_factors(w.f.den(), -1);
    const long long ord_inf = static_cast<long long>(w.f.den().degree()) - w.f.num().degree();
    if (ord_inf != 0) divisor.emplace_back(ord_inf, 1);

    std::uint64_t g0 = nu;
    for (const auto& [ord, count] : divisor) g0 = std::gcd(g0, static_cast<std::uint64_t>(std::llabs(ord)));
    const std::uint64_t n = nu / g0;

    BigRational genus = 1 - BigRational(n);
    for (const auto& [ord, count] : divisor) {
        const std::uint64_t scaled = static_cast<std::uint64_t>(std::llabs(ord)) / g0;
        const std::uint64_t e = n / std::gcd(n, scaled);
        genus += BigRational(n, 2) * BigRational(count) * (1 - BigRational(1, e));
    }
    genus.canonicalize();
    if (genus.get_den() != 1 || genus < 0) throw InternalError("non-integral Kummer genus");
    return {n, genus.get_num().get_ui()};
}

}  // namespace flatlab
