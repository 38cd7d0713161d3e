#include "flatlab/dynamics/critical.hpp"

#include <algorithm>
#include <numeric>

#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

namespace {

void check_tame_separable(const FqRatFunc& sigma) {
    const int d = sigma.degree();
    if (d < 2) throw DegreeTooSmall("critical locus needs degree >= 2");
    if (sigma.field().characteristic() <= static_cast<std::uint64_t>(d)) {
        throw BadCharacteristic("characteristic must exceed the degree");
    }
    if (sigma.derivative().is_zero()) throw Inseparable("map has zero derivative");
}

}  // namespace

CriticalLocus critical_locus(const FqRatFunc& sigma) {
    check_tame_separable(sigma);
    const GaloisField& base = sigma.field();
    const int d = sigma.degree();
    const Poly<GaloisField> w = wronskian(sigma);

    unsigned k = 1;
    if (w.degree() > 0) {
        for (const auto& fp : poly_factor(w).factors) {
            k = std::lcm(k, static_cast<unsigned>(fp.factor.degree()));
        }
    }
    const GaloisField field = k == 1 ? base : field_create(base.characteristic(), base.degree() * k);
    Embedding emb(base, field);
    FqRatFunc lifted(emb.lift(sigma.num()), emb.lift(sigma.den()));
    const Poly<GaloisField> w_lifted = emb.lift(w);

    std::vector<CriticalDatum<FqRaw>> points;
    int budget = 0;
    if (w_lifted.degree() > 0) {
        for (const auto& r : poly_roots(w_lifted)) {
            const FqPoint b = FqPoint::finite(r);
            const unsigned e = detail::ram_index_unchecked(lifted, b);
            if (e != w_lifted.root_multiplicity(r) + 1) {
                throw InternalError("Wronskian multiplicity disagrees with ramification index");
            }
            points.push_back({b, e});
            budget += static_cast<int>(e) - 1;
        }
    }
    const unsigned e_inf = detail::ram_index_unchecked(lifted, FqPoint::infinity());
    if (e_inf > 1) {
        points.push_back({FqPoint::infinity(), e_inf});
        budget += static_cast<int>(e_inf) - 1;
    }
    if (budget != 2 * d - 2) throw InternalError("Riemann-Hurwitz budget violated");
    return {field, std::move(emb), std::move(lifted), std::move(points)};
}

DynamicalData analyze_dynamics(const FqRatFunc& sigma) {
    CriticalLocus locus = critical_locus(sigma);
    const std::uint64_t limit = locus.field.small_order() + 1;
    OrbitGraph<GaloisField> graph =
        build_orbit_graph(locus.map, locus.points, static_cast<std::size_t>(limit), [](const FqRaw&) { return true; });
    return {std::move(locus), std::move(graph)};
}

OrbitGraph<GaloisField> postcritical_graph(const FqRatFunc& sigma) { return analyze_dynamics(sigma).graph; }

namespace {

constexpr unsigned long kMaxDivisorBase = 1'000'000'000'000UL;

std::vector<BigInt> divisors(const BigInt& n_in) {
    BigInt n = abs(n_in);
    std::vector<std::pair<BigInt, unsigned>> primes;
    for (BigInt d = 2; d * d <= n; ++d) {
        unsigned m = 0;
        while (n % d == 0) {
            n /= d;
            ++m;
        }
        if (m > 0) primes.emplace_back(d, m);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<BigInt> out{1};
    for (const auto& [pr, m] : primes) {
        const std::size_t count = out.size();
        BigInt power = 1;
        for (unsigned i = 0; i < m; ++i) {
            power *= pr;
            for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * power);
        }
    }
    return out;
}

}  // namespace

std::optional<std::vector<std::pair<BigRational, unsigned>>> rational_roots(const Poly<Rationals>& f) {
    if (f.is_zero()) throw ZeroPolynomial("rational roots of zero");
    std::vector<std::pair<BigRational, unsigned>> roots;
    // strip the root at 0
    std::size_t low = 0;
    while (f.coeffs()[low] == 0) ++low;
    if (low > 0) roots.emplace_back(BigRational(0), static_cast<unsigned>(low));
    std::vector<BigRational> rest(f.coeffs().begin() + static_cast<std::ptrdiff_t>(low), f.coeffs().end());
    if (rest.size() <= 1) return roots;
    BigInt den_lcm = 1;
    for (const auto& c : rest) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    const BigInt lead = rest.back().get_num() * (den_lcm / rest.back().get_den());
    const BigInt constant = rest.front().get_num() * (den_lcm / rest.front().get_den());
    if (abs(lead) > kMaxDivisorBase || abs(constant) > kMaxDivisorBase) return std::nullopt;
    const Poly<Rationals> g(Rationals{}, std::move(rest));
    std::vector<BigRational> candidates;
    for (const auto& a : divisors(constant)) {
        for (const auto& b : divisors(lead)) {
            BigRational q(a, b);
            q.canonicalize();
            candidates.push_back(q);
            candidates.push_back(-q);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& q : candidates) {
        if (g(q) == 0) roots.emplace_back(q, g.root_multiplicity(q));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::optional<std::vector<CriticalDatum<BigRational>>> rational_critical_points(const RatFunc<Rationals>& sigma) {
    if (sigma.degree() < 2) throw DegreeTooSmall("critical points need degree >= 2");
    const Poly<Rationals> w = wronskian(sigma);
    std::vector<CriticalDatum<BigRational>> out;
    int budget = 0;
    if (w.degree() > 0) {
        auto roots = rational_roots(w);
        if (!roots) return std::nullopt;
        unsigned total = 0;
        for (const auto& [r, m] : *roots) total += m;
        if (total != static_cast<unsigned>(w.degree())) return std::nullopt;
        for (const auto& [r, m] : *roots) {
            out.push_back({P1Point<BigRational>::finite(r), m + 1});
            budget += static_cast<int>(m);
        }
    }
    const unsigned e_inf = ram_index(sigma, P1Point<BigRational>::infinity());
    if (e_inf > 1) {
        out.push_back({P1Point<BigRational>::infinity(), e_inf});
        budget += static_cast<int>(e_inf) - 1;
    }
    if (budget != 2 * sigma.degree() - 2) throw InternalError("Riemann-Hurwitz budget violated over Q");
    return out;
}

}  // namespace flatlab
