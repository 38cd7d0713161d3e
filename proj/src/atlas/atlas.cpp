#include "flatlab/atlas/atlas.hpp"

#include <vector>

namespace flatlab {

std::string to_string(Family f) {
    switch (f) {
        case Family::power:
            return "power";
        case Family::chebyshev:
            return "chebyshev";
        case Family::lattes:
            return "lattes";
    }
    return "";
}

namespace {

GaloisField prime_field_for(std::uint64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    return field_create(p, 1);
}

FlatCertificate certify(Family family, RatFunc<GaloisField> sigma, TupleForm<GaloisField> form, FqRaw lambda) {
    const auto inv = invariance_check(sigma, form);
    if (!inv.lambda || !sigma.field().equal(*inv.lambda, lambda)) {
        throw IdentityCheckFailed(to_string(family) + " certificate failed verification");
    }
    return {family, std::move(sigma), std::move(form), lambda};
}

}  // namespace

RatFunc<Rationals> power_map(long long d) {
    if (d > -2 && d < 2) throw DegreeTooSmall("power map needs |d| >= 2");
    const Rationals q;
    const RatFunc<Rationals> m(Poly<Rationals>::monomial(q, q.one(), static_cast<std::size_t>(d < 0 ? -d : d)));
    return d < 0 ? m.inverse() : m;
}

FlatCertificate power_certificate(long long d, std::uint64_t p) {
    if (d > -2 && d < 2) throw DegreeTooSmall("power map needs |d| >= 2");
    const GaloisField f = prime_field_for(p);
    if (p == 2 || p == 3) throw BadPrime("p must not be 2 or 3");
    if (static_cast<std::uint64_t>(d < 0 ? -d : d) % p == 0) throw BadPrime("p divides d");
    const std::size_t ad = static_cast<std::size_t>(d < 0 ? -d : d);
    RatFunc<GaloisField> sigma(Poly<GaloisField>::monomial(f, f.one(), ad));
    if (d < 0) sigma = sigma.inverse();
    const auto nu = static_cast<long long>(p - 1);
    TupleForm<GaloisField> form{RatFunc<GaloisField>::identity(f).pow(-nu), nu};
    return certify(Family::power, std::move(sigma), std::move(form), f.one());
}

Poly<Rationals> chebyshev_poly(unsigned d, bool negative) {
    const Rationals q;
    Poly<Rationals> prev = Poly<Rationals>::constant(q, q.from_int(2));
    Poly<Rationals> cur = Poly<Rationals>::variable(q);
    if (d == 0) {
        cur = prev;
    } else {
        for (unsigned k = 1; k < d; ++k) {
            Poly<Rationals> next = Poly<Rationals>::variable(q) * cur - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    const RatFunc<Rationals> t = RatFunc<Rationals>::identity(q);
    const RatFunc<Rationals> lhs = RatFunc<Rationals>(cur).compose(t + t.inverse());
    const RatFunc<Rationals> rhs = t.pow(d) + t.pow(-static_cast<long long>(d));
    if (!(lhs == rhs)) throw IdentityCheckFailed("Chebyshev defining identity failed");
    return negative ? -cur : cur;
}

FlatCertificate chebyshev_certificate(unsigned d, bool negative, std::uint64_t p) {
    if (d < 2) throw DegreeTooSmall("Chebyshev map needs d >= 2");
    const GaloisField f = prime_field_for(p);
    if (p == 2) throw BadPrime("p must be odd");
    if (d % p == 0) throw BadPrime("p divides d");
    if (p <= d) throw BadPrime("p must exceed d");
    const Poly<Rationals> cheb = chebyshev_poly(d, negative);
    RatFunc<GaloisField> sigma(map_coeffs(cheb, f, [&](const BigRational& c) { return f.from_rational(c); }));
    const auto nu = static_cast<long long>(p - 1);
    const RatFunc<GaloisField> base(Poly<GaloisField>::from_ints(f, {-4, 0, 1}));
    TupleForm<GaloisField> form{base.pow(-nu / 2), nu};
    return certify(Family::chebyshev, std::move(sigma), std::move(form), f.one());
}

namespace {

/// psi = poly * y^ypow with y^2 replaced by the cubic.
template <class K>
struct DivPoly {
    Poly<K> poly;
    unsigned ypow;
};

template <class K>
struct DivPolys {
    const EllipticCurve<K>& curve;
    Poly<K> cubic;
    std::vector<DivPoly<K>> psi;

    DivPoly<K> mul(const DivPoly<K>& u, const DivPoly<K>& v) const {
        Poly<K> prod = u.poly * v.poly;
        unsigned y = u.ypow + v.ypow;
        if (y >= 2) {
            prod = prod * cubic;
            y -= 2;
        }
        return {std::move(prod), y};
    }

    DivPoly<K> sub(const DivPoly<K>& u, const DivPoly<K>& v) const {
        if (u.ypow != v.ypow) throw InternalError("division polynomial parity mismatch");
        return {u.poly - v.poly, u.ypow};
    }

    DivPoly<K> div_2y(const DivPoly<K>& u) const {
        const K& f = curve.field;
        const Poly<K> half = u.poly.scaled(f.inv(f.from_int(2)));
        if (u.ypow == 1) return {half, 0};
        return {exact_div(half, cubic), 1};
    }

    explicit DivPolys(const EllipticCurve<K>& e, unsigned upto) : curve(e), cubic(e.cubic()) {
        const K& f = e.field;
        const auto a = e.a, b = e.b;
        auto c = [&](long long v) { return f.from_int(v); };
        const auto a2 = f.mul(a, a);
        psi.push_back({Poly<K>(f), 0});
        psi.push_back({Poly<K>::constant(f, f.one()), 0});
        psi.push_back({Poly<K>::constant(f, c(2)), 1});
        psi.push_back({Poly<K>(f, {f.neg(a2), f.mul(c(12), b), f.mul(c(6), a), f.zero(), c(3)}), 0});
        psi.push_back({Poly<K>(f, {f.sub(f.neg(f.mul(c(8), f.mul(b, b))), f.mul(a2, a)), f.neg(f.mul(c(4), f.mul(a, b))),
                                   f.neg(f.mul(c(5), a2)), f.mul(c(20), b), f.mul(c(5), a), f.zero(), f.one()})
                           .scaled(c(4)),
                       1});
        for (unsigned n = static_cast<unsigned>(psi.size()); n <= upto; ++n) {
            const unsigned k = n / 2;
            if (n % 2 == 1) {
                const DivPoly<K> lhs = mul(psi[k + 2], mul(psi[k], mul(psi[k], psi[k])));
                const DivPoly<K> rhs = mul(psi[k - 1], mul(psi[k + 1], mul(psi[k + 1], psi[k + 1])));
                psi.push_back(sub(lhs, rhs));
            } else {
                const DivPoly<K> lhs = mul(psi[k + 2], mul(psi[k - 1], psi[k - 1]));
                const DivPoly<K> rhs = mul(psi[k - 2], mul(psi[k + 1], psi[k + 1]));
                psi.push_back(div_2y(mul(psi[k], sub(lhs, rhs))));
            }
        }
    }
};

}  // namespace

template <class K>
RatFunc<K> ec_mul_x(const EllipticCurve<K>& e, unsigned m) {
    e.check();
    if (m < 2) throw DegreeTooSmall("multiplication map needs m >= 2");
    const std::uint64_t p = e.field.characteristic();
    if (p != 0 && p <= 2ULL * m * m) throw BadCharacteristic("characteristic must exceed 2 m^2");
    const DivPolys<K> dp(e, m + 1);
    const DivPoly<K> top = dp.mul(dp.psi[m - 1], dp.psi[m + 1]);
    const DivPoly<K> bottom = dp.mul(dp.psi[m], dp.psi[m]);
    if (top.ypow != 0 || bottom.ypow != 0) throw InternalError("division polynomial parity mismatch");
    const RatFunc<K> x = RatFunc<K>::identity(e.field);
    RatFunc<K> xi = x - RatFunc<K>(top.poly, bottom.poly);
    if (xi.degree() != static_cast<int>(m * m)) throw InternalError("multiplication map has the wrong degree");
    return xi;
}

template RatFunc<Rationals> ec_mul_x(const EllipticCurve<Rationals>&, unsigned);
template RatFunc<GaloisField> ec_mul_x(const EllipticCurve<GaloisField>&, unsigned);

RatFunc<Rationals> lattes_map(const BigRational& a, const BigRational& b, unsigned m) {
    return ec_mul_x(EllipticCurve<Rationals>{Rationals{}, a, b}, m);
}

FlatCertificate lattes_certificate(const BigRational& a, const BigRational& b, unsigned m, std::uint64_t p) {
    const GaloisField f = prime_field_for(p);
    if (p <= 2ULL * m * m) throw BadPrime("p must exceed 2 m^2");
    if (a.get_den() % p == 0 || b.get_den() % p == 0) throw BadPrime("curve coefficient not p-integral");
    EllipticCurve<GaloisField> e{f, f.from_rational(a), f.from_rational(b)};
    try {
        e.check();
    } catch (const SingularCurve&) {
        throw BadPrime("curve has singular reduction");
    }
    RatFunc<GaloisField> sigma = ec_mul_x(e, m);
    TupleForm<GaloisField> form{RatFunc<GaloisField>(e.cubic()).inverse(), 2};
    const FqRaw lambda = f.from_int(static_cast<long long>(m) * m);
    return certify(Family::lattes, std::move(sigma), std::move(form), lambda);
}

}  // namespace flatlab
