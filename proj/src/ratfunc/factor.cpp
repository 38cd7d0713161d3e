#include "flatlab/ratfunc/factor.hpp"

#include <algorithm>
#include <random>

namespace flatlab {

namespace {

bool factor_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
}

FqPoly random_poly(const GaloisField& field, int max_degree, std::mt19937_64& rng) {
    std::vector<FqRaw> c;
    c.reserve(static_cast<std::size_t>(max_degree) + 1);
    for (int i = 0; i <= max_degree; ++i) c.push_back(field.random(rng));
    return FqPoly(field, std::move(c));
}

void squarefree_rec(const FqPoly& f, unsigned mult, std::vector<FactorPower>& out) {
    if (f.degree() <= 0) return;
    FqPoly c = gcd(f, f.derivative());
    FqPoly w = exact_div(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly fac = exact_div(w, y);
        if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
        w = std::move(y);
        c = exact_div(c, w);
        ++i;
    }
    if (c.degree() > 0) {
        const auto p = static_cast<unsigned>(f.field().characteristic());
        squarefree_rec(poly_pth_root(c).monic(), mult * p, out);
    }
}

void edf_rec(const FqPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    if (f.degree() <= static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const GaloisField& field = f.field();
    const BigInt qd = [&] {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), field.order().get_mpz_t(), d);
        return r;
    }();
    const FqPoly one = FqPoly::constant(field, field.one());
    const bool char2 = field.characteristic() == 2;
    while (true) {
        FqPoly a = random_poly(field, f.degree() - 1, rng);
        if (a.degree() <= 0) continue;
        FqPoly b(field);
        if (char2) {
            // trace map a + a^2 + ... + a^{2^{kd-1}}
            const unsigned steps = field.degree() * d;
            FqPoly term = a % f;
            b = term;
            for (unsigned i = 1; i < steps; ++i) {
                term = (term * term) % f;
                b += term;
            }
        } else {
            b = powmod(a, (qd - 1) / 2, f) - one;
        }
        FqPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf_rec(g, d, rng, out);
            edf_rec(exact_div(f, g).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

FqPoly powmod(const FqPoly& base, const BigInt& e, const FqPoly& m) {
    if (e < 0) throw Error("negative exponent in powmod");
    FqPoly result = FqPoly::constant(m.field(), m.field().one()) % m;
    const FqPoly b = base % m;
    const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
    }
    return result;
}

FqPoly poly_pth_root(const FqPoly& f) {
    const GaloisField& field = f.field();
    const std::uint64_t p = field.characteristic();
    const auto& c = f.coeffs();
    std::vector<FqRaw> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i % p == 0) {
            out.push_back(field.pth_root(c[i]));
        } else if (!field.is_zero(c[i])) {
            throw InternalError("p-th root requested for a polynomial with nonzero derivative");
        }
    }
    return FqPoly(field, std::move(out));
}

std::vector<FactorPower> squarefree_decomposition(const FqPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("squarefree decomposition of zero");
    std::vector<FactorPower> out;
    if (f.degree() == 0) return out;
    squarefree_rec(f.monic(), 1, out);
    std::sort(out.begin(), out.end(),
              [](const FactorPower& a, const FactorPower& b) { return a.multiplicity < b.multiplicity; });
    return out;
}

std::vector<FactorPower> distinct_degree_factorization(const FqPoly& f) {
    const GaloisField& field = f.field();
    std::vector<FactorPower> out;
    FqPoly g = f.monic();
    const FqPoly t = FqPoly::variable(field);
    FqPoly h = t % g;
    unsigned i = 1;
    while (g.degree() >= 2 * static_cast<int>(i)) {
        h = powmod(h, field.order(), g);
        FqPoly d = gcd(g, h - t);
        if (d.degree() > 0) {
            out.push_back({d, i});
            g = exact_div(g, d).monic();
            h = h % g;
        }
        ++i;
    }
    if (g.degree() > 0) out.push_back({g, static_cast<unsigned>(g.degree())});
    return out;
}

std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, unsigned d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FqPoly> out;
    edf_rec(f.monic(), d, rng, out);
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

Factorization poly_factor(const FqPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw ZeroPolynomial("cannot factor the zero polynomial");
    Factorization result{f.leading(), {}};
    std::mt19937_64 rng(seed);
    for (const auto& [sqf, mult] : squarefree_decomposition(f)) {
        for (const auto& [part, deg] : distinct_degree_factorization(sqf)) {
            std::vector<FqPoly> pieces;
            edf_rec(part, deg, rng, pieces);
            for (auto& piece : pieces) result.factors.push_back({std::move(piece), mult});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(), [](const FactorPower& a, const FactorPower& b) {
        if (!(a.factor == b.factor)) return factor_less(a.factor, b.factor);
        return a.multiplicity < b.multiplicity;
    });
    return result;
}

bool is_irreducible(const FqPoly& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const GaloisField& field = f.field();
    const FqPoly g = f.monic();
    const FqPoly t = FqPoly::variable(field);
    // frob[i] = t^{q^i} mod g
    std::vector<FqPoly> frob;
    frob.reserve(static_cast<std::size_t>(n) + 1);
    frob.push_back(t % g);
    for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), field.order(), g));
    if (!(frob[static_cast<std::size_t>(n)] == t % g)) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime(static_cast<std::uint64_t>(l))) continue;
        if (gcd(g, frob[static_cast<std::size_t>(n / l)] - t).degree() != 0) return false;
    }
    return true;
}

std::vector<FqRaw> poly_roots(const FqPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
    std::vector<FqRaw> roots;
    if (f.degree() <= 0) return roots;
    const GaloisField& field = f.field();
    const FqPoly g = f.monic();
    const FqPoly t = FqPoly::variable(field);
    FqPoly split = gcd(g, powmod(t, field.order(), g) - t);
    if (split.degree() <= 0) return roots;
    for (const auto& lin : equal_degree_factorization(split, 1, seed)) {
        roots.push_back(field.neg(lin.coeff(0)));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

FqPoly expand(const Factorization& fac, const GaloisField& field) {
    FqPoly r = FqPoly::constant(field, fac.unit);
    for (const auto& [g, m] : fac.factors) r = r * g.pow(m);
    return r;
}

}  // namespace flatlab
