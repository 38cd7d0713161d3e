#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "flatlab/atlas/atlas.hpp"
#include "flatlab/dynamics/critical.hpp"
#include "flatlab/orbifold/orbifold.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/factor.hpp"
#include "flatlab/ratfunc/reduce.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace flatlab;

namespace {

FqRatFunc map_over(const char* s, std::uint64_t p) { return rf_parse(s, field_create(p, 1)); }

FqPoint pt(const GaloisField& f, long long v) { return FqPoint::finite(f.from_int(v)); }

std::vector<MuValue> sorted_mus(const OrbifoldData<GaloisField>& d) {
    auto v = d.mu_values();
    std::sort(v.begin(), v.end());
    return v;
}

/// Maps used for the oracle and descent checks; every critical field has at most 49 elements.
std::vector<std::pair<std::string, std::uint64_t>> battery() {
    return {{"t^2", 7},          {"t^2", 5},           {"t^3", 7},         {"1/t^2", 5},       {"t^2-2", 7},
            {"t^2-2", 5},        {"t^3-3*t", 7},       {"t^2+1", 5},       {"t^2+1", 7},       {"t^2+t", 5},
            {"t^2+t", 7},        {"(t^2+1)/t", 5},     {"(t^2+1)/t", 7},   {"t^3+t+1", 5},     {"t^3+t+1", 7},
            {"t^2-1", 7},        {"(t^2-1)/(t^2+1)", 7}, {"t^4", 5},       {"t^2+3*t+1", 11},  {"(2*t^2+1)/t", 13}};
}

MuValue mu_at(const std::map<FqPoint, MuValue>& mu, const FqPoint& a) {
    auto it = mu.find(a);
    return it == mu.end() ? MuValue::finite(1) : it->second;
}

bool divides(const MuValue& small, const MuValue& big) {
    if (big.is_infinity()) return true;
    if (small.is_infinity()) return false;
    return big.value() % small.value() == 0;
}

MuValue times(const MuValue& m, unsigned e) {
    if (m.is_infinity()) return m;
    return MuValue::finite(m.value() * e);
}

/// Preimages of A inside the critical field.
std::vector<FqPoint> preimages(const FqRatFunc& s, const FqPoint& a) {
    std::vector<FqPoint> out;
    if (p1_eval(s, FqPoint::infinity()) == a) out.push_back(FqPoint::infinity());
    const FqPoly fiber = a.is_infinity() ? s.den() : s.num() - s.den().scaled(*a.value);
    if (fiber.degree() < 1) return out;
    for (const auto& r : poly_roots(fiber)) {
        const FqPoint b = FqPoint::finite(r);
        if (p1_eval(s, b) == a) out.push_back(b);
    }
    return out;
}

bool satisfies_minimality(const FqRatFunc& s, const std::vector<FqPoint>& support,
                          const std::map<FqPoint, MuValue>& nu) {
    for (const auto& a : support) {
        for (const auto& b : preimages(s, a)) {
            if (!divides(times(mu_at(nu, b), detail::ram_index_unchecked(s, b)), mu_at(nu, a))) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("mu_compute examples") {
    {
        const GaloisField f7 = field_create(7, 1);
        const auto mu = mu_compute(postcritical_graph(map_over("t^2", 7)));
        CHECK(mu.at(pt(f7, 0)).is_infinity());
        CHECK(mu.at(FqPoint::infinity()).is_infinity());
    }
    {
        const GaloisField f7 = field_create(7, 1);
        const auto mu = mu_compute(postcritical_graph(map_over("t^2-2", 7)));
        CHECK(mu.size() == 3);
        CHECK(mu.at(FqPoint::infinity()).is_infinity());
        CHECK(mu.at(pt(f7, 5)) == MuValue::finite(2));
        CHECK(mu.at(pt(f7, 2)) == MuValue::finite(2));
    }
    {
        const GaloisField f5 = field_create(5, 1);
        const auto mu = mu_compute(postcritical_graph(map_over("t^2+1", 5)));
        CHECK(mu.size() == 4);
        for (long long a : {0, 1, 2}) CHECK(mu.at(pt(f5, a)).is_infinity());
        CHECK(mu.at(FqPoint::infinity()).is_infinity());
    }
}

TEST_CASE("MuValue arithmetic and ordering") {
    CHECK(MuValue::finite(4).lcm(MuValue::finite(6)) == MuValue::finite(12));
    CHECK(MuValue::finite(4).lcm(MuValue::infinity()).is_infinity());
    CHECK(MuValue::finite(2) < MuValue::infinity());
    CHECK_FALSE(MuValue::infinity() < MuValue::finite(2));
    CHECK(MuValue::infinity().to_string() == "inf");
    CHECK_THROWS_AS(MuValue::finite(0), InternalError);
}

TEST_CASE("euler_char examples") {
    CHECK(orbifold_data(postcritical_graph(map_over("t^2", 7))).chi == 0);
    CHECK(orbifold_data(postcritical_graph(map_over("t^2-2", 7))).chi == 0);
    CHECK(orbifold_data(postcritical_graph(map_over("t^2+1", 5))).chi == -2);
    CHECK(euler_char({}) == 2);
    CHECK(euler_char({MuValue::finite(2), MuValue::finite(3), MuValue::finite(7)}) == BigRational(-1, 42));
}

TEST_CASE("parabolic_signature examples") {
    const auto s1 = parabolic_signature(orbifold_data(postcritical_graph(map_over("t^3", 7))));
    CHECK(s1.parabolic);
    CHECK(s1.to_string() == "(inf,inf)");
    CHECK(s1.hint == FlatHint::power_like);

    const auto s2 = parabolic_signature(orbifold_data(postcritical_graph(map_over("t^2-2", 7))));
    CHECK(s2.parabolic);
    CHECK(s2.to_string() == "(2,2,inf)");
    CHECK(s2.hint == FlatHint::chebyshev_like);

    const auto s3 = parabolic_signature(orbifold_data(postcritical_graph(map_over("t^2+1", 5))));
    CHECK_FALSE(s3.parabolic);
    CHECK(s3.to_string() == "(inf,inf,inf,inf)");
    CHECK_FALSE(s3.hint);

    using M = MuValue;
    for (const auto& sig : std::vector<std::vector<M>>{{M::finite(3), M::finite(3), M::finite(3)},
                                                        {M::finite(4), M::finite(2), M::finite(4)},
                                                        {M::finite(6), M::finite(3), M::finite(2)},
                                                        {M::finite(2), M::finite(2), M::finite(2), M::finite(2)}}) {
        const auto s = parabolic_signature(sig);
        CHECK(s.parabolic);
        CHECK(s.hint == FlatHint::lattes_like);
        CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    }
    CHECK(parabolic_signature({M::finite(2), M::finite(4), M::finite(4)}).to_string() == "(2,4,4)");
}

TEST_CASE("mu agrees with the brute-force oracle") {
    for (const auto& [expr, p] : battery()) {
        const auto dyn = analyze_dynamics(map_over(expr.c_str(), p));
        if (dyn.locus.field.small_order() > 49) continue;
        CAPTURE(expr);
        CAPTURE(p);
        const auto mu = mu_compute(dyn.graph);
        const auto brute = oracle::brute_force_mu(dyn.locus.map);
        for (const auto& [a, m] : brute) CHECK(mu_at(mu, a) == m);
        for (const auto& [a, m] : mu) CHECK(m != MuValue::finite(1));
    }
    std::mt19937_64 rng(53);
    for (auto p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        const GaloisField f = field_create(p, 1);
        int tested = 0;
        while (tested < 6) {
            const auto sigma = oracle::random_map(f, 2 + static_cast<int>(rng() % 2), rng);
            const auto dyn = analyze_dynamics(sigma);
            if (dyn.locus.field.small_order() > 49) continue;
            ++tested;
            const auto mu = mu_compute(dyn.graph);
            CAPTURE(to_string(sigma));
            for (const auto& [a, m] : oracle::brute_force_mu(dyn.locus.map)) {
                CAPTURE(to_string(dyn.locus.field, a));
                CAPTURE(m.to_string());
                CHECK(mu_at(mu, a) == m);
            }
        }
    }
}

TEST_CASE("mu agrees with the oracle on maps over Q at every small good prime") {
    std::vector<RatFunc<Rationals>> maps;
    for (const char* e : {"t^2", "t^3", "1/t^2", "t^2-2", "t^3-3*t", "(x^2-1)^2/(4*x*(x^2+1))", "t^2+1", "t^2+t",
                          "(t^2+1)/t", "t^3+t+1", "(t^2-2)/(t+1)"}) {
        maps.push_back(rf_parse(e, Rationals{}));
    }
    const auto t = props::mu_oracle(maps, 5, 50);
    CAPTURE(t.first_failure);
    CHECK(t.instances > 30);
    CHECK(t.violations == 0);
}

TEST_CASE("mu is the minimal function with the multiplicity property") {
    for (const auto& [expr, p] : battery()) {
        const auto dyn = analyze_dynamics(map_over(expr.c_str(), p));
        const auto& s = dyn.locus.map;
        const auto mu = mu_compute(dyn.graph);
        std::vector<FqPoint> support;
        for (const auto& [a, m] : mu) support.push_back(a);
        CAPTURE(expr);
        CAPTURE(p);
        CHECK(satisfies_minimality(s, support, mu));
        if (support.size() > 4) continue;

        // every pointwise-smaller candidate violates the property
        std::vector<std::vector<MuValue>> choices;
        for (const auto& a : support) {
            std::vector<MuValue> c;
            const MuValue m = mu.at(a);
            if (m.is_infinity()) {
                for (std::uint64_t n = 1; n <= 16; ++n) c.push_back(MuValue::finite(n));
            } else {
                for (std::uint64_t n = 1; n < m.value(); ++n) {
                    if (m.value() % n == 0) c.push_back(MuValue::finite(n));
                }
            }
            c.push_back(m);
            choices.push_back(c);
        }
        std::map<FqPoint, MuValue> nu;
        int smaller_valid = 0;
        std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool lowered) {
            if (i == support.size()) {
                if (lowered && satisfies_minimality(s, support, nu)) ++smaller_valid;
                return;
            }
            for (const auto& v : choices[i]) {
                nu.insert_or_assign(support[i], v);
                rec(i + 1, lowered || !(v == mu.at(support[i])));
            }
        };
        rec(0, false);
        CHECK(smaller_valid == 0);
    }
}

TEST_CASE("postcritical set and chi are unchanged under iteration") {
    for (const auto& [expr, p0] : battery()) {
        const RatFunc<Rationals> sq = rf_parse(expr, Rationals{});
        const int d = sq.degree();
        // sigma^2 needs p > d^2 to stay tame
        std::uint64_t p = 0;
        for (std::uint64_t q : {5, 7, 11, 13, 17, 19, 23}) {
            if (q >= p0 && q > static_cast<std::uint64_t>(d * d)) {
                p = q;
                break;
            }
        }
        if (!rf_reduce_mod_p(sq, p).good()) continue;
        const auto s = map_over(expr.c_str(), p);
        const auto s2 = s.compose(s);
        CAPTURE(expr);
        CAPTURE(p);
        const auto dyn1 = analyze_dynamics(s);
        const auto dyn2 = analyze_dynamics(s2);
        const auto orb1 = orbifold_data(dyn1.graph);
        const auto orb2 = orbifold_data(dyn2.graph);
        CHECK(orb1.chi == orb2.chi);
        const Embedding emb(dyn1.locus.field, dyn2.locus.field);
        std::set<FqPoint> p1, p2;
        for (const auto& [a, m] : orb1.postcritical) {
            p1.insert(a.is_infinity() ? a : FqPoint::finite(emb.apply(*a.value)));
        }
        for (const auto& [a, m] : orb2.postcritical) p2.insert(a);
        CHECK(p1 == p2);
    }
}

TEST_CASE("Moebius conjugation permutes the postcritical set") {
    std::mt19937_64 rng(59);
    for (const auto& [expr, p] : battery()) {
        const auto s = map_over(expr.c_str(), p);
        const GaloisField& f = s.field();
        for (int trial = 0; trial < 3; ++trial) {
            FqRaw a, b, c, d;
            do {
                a = f.random(rng);
                b = f.random(rng);
                c = f.random(rng);
                d = f.random(rng);
            } while (f.is_zero(f.sub(f.mul(a, d), f.mul(b, c))));
            const FqRatFunc phi(FqPoly(f, {b, a}), FqPoly(f, {d, c}));
            const auto conj = rf_conjugate(s, phi);
            CAPTURE(expr);
            CAPTURE(to_string(phi));
            const auto dyn1 = analyze_dynamics(s);
            const auto dyn2 = analyze_dynamics(conj);
            REQUIRE(dyn1.locus.field.degree() == dyn2.locus.field.degree());
            const auto orb1 = orbifold_data(dyn1.graph);
            const auto orb2 = orbifold_data(dyn2.graph);
            CHECK(orb1.chi == orb2.chi);
            CHECK(sorted_mus(orb1) == sorted_mus(orb2));
            const FqRatFunc big_phi = map_coeffs(phi, dyn2.locus.field,
                                                 [&](const FqRaw& x) { return dyn2.locus.embedding.apply(x); });
            std::map<FqPoint, MuValue> moved;
            for (const auto& [pt1, m] : orb1.postcritical) moved.emplace(p1_eval(big_phi, pt1), m);
            std::map<FqPoint, MuValue> target(orb2.postcritical.begin(), orb2.postcritical.end());
            CHECK(moved == target);
        }
    }
}

TEST_CASE("kummer_genus examples") {
    const GaloisField f5 = field_create(5, 1);
    const auto g1 = kummer_genus({rf_parse("1/t^4", f5), 4});
    CHECK(g1.cover_degree == 1);
    CHECK(g1.genus == 0);

    const GaloisField f7 = field_create(7, 1);
    const auto g2 = kummer_genus({rf_parse("1/(t^2-4)^3", f7), 6});
    CHECK(g2.cover_degree == 2);
    CHECK(g2.genus == 0);

    const auto g3 = kummer_genus({rf_parse("1/(x^3+x)", f7), 2});
    CHECK(g3.cover_degree == 2);
    CHECK(g3.genus == 1);

    // y^2 = quintic has genus 2, y^3 = t(t - 1) is a smooth plane cubic, y^3 = t is rational
    CHECK(kummer_genus({rf_parse("t^5 - 1", f7), 2}).genus == 2);
    CHECK(kummer_genus({rf_parse("t^2 - t", f7), 3}).genus == 1);
    CHECK(kummer_genus({rf_parse("t", f7), 3}).genus == 0);
    CHECK_THROWS_AS(kummer_genus({rf_parse("t", f7), 7}), WeightDivisibleByP);
    CHECK_THROWS_AS(kummer_genus({rf_parse("t", f7), 0}), BadWeight);
}

TEST_CASE("atlas signatures at good primes") {
    const std::vector<std::uint64_t> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (auto p : primes) {
        for (long long d : {2, 3, 4, -2}) {
            if (p % static_cast<std::uint64_t>(std::llabs(d)) == 0) continue;
            const auto c = power_certificate(d, p);
            const auto sig = parabolic_signature(orbifold_data(postcritical_graph(c.sigma)));
            CHECK(sig.to_string() == "(inf,inf)");
            CHECK(kummer_genus(c.form).genus == 0);
        }
        for (unsigned d : {2U, 3U, 4U}) {
            if (p <= d || p % d == 0) continue;
            const auto c = chebyshev_certificate(d, false, p);
            const auto sig = parabolic_signature(orbifold_data(postcritical_graph(c.sigma)));
            CHECK(sig.to_string() == "(2,2,inf)");
            CHECK(kummer_genus(c.form).genus == 0);
        }
        if (p > 8) {  // xi_2 needs p > 2 m^2
            for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}}) {
                const auto c = lattes_certificate(a, b, 2, p);
                const auto orb = orbifold_data(postcritical_graph(c.sigma));
                CHECK(orb.chi == 0);
                CHECK(parabolic_signature(orb).to_string() == "(2,2,2,2)");
                CHECK(kummer_genus(c.form).genus == 1);
            }
        }
    }
}
