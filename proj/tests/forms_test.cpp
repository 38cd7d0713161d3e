#include <doctest.h>

#include <numeric>
#include <random>

#include "flatlab/atlas/atlas.hpp"
#include "flatlab/forms/search.hpp"
#include "flatlab/orbifold/orbifold.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/factor.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace flatlab;

namespace {

FqRatFunc map_over(const char* s, const GaloisField& f) { return rf_parse(s, f); }

FqForm form(const char* f, long long weight, const GaloisField& field) { return {rf_parse(f, field), weight}; }

/// Sum of form_ord over every zero and pole in a splitting field, plus infinity.
long long divisor_degree(const FqForm& w) {
    const GaloisField& base = w.field();
    unsigned k = 1;
    for (const auto* poly : {&w.f.num(), &w.f.den()}) {
        if (poly->degree() < 1) continue;
        for (const auto& fp : poly_factor(*poly).factors) k = std::lcm(k, static_cast<unsigned>(fp.factor.degree()));
    }
    const GaloisField big = field_create(base.characteristic(), base.degree() * k);
    const Embedding emb(base, big);
    const FqForm lifted = lift(emb, w);
    long long total = form_ord(lifted, FqPoint::infinity());
    for (const auto* poly : {&lifted.f.num(), &lifted.f.den()}) {
        if (poly->degree() < 1) continue;
        for (const auto& r : poly_roots(*poly)) total += form_ord(lifted, FqPoint::finite(r));
    }
    return total;
}

}  // namespace

TEST_CASE("form_pullback examples") {
    const Rationals q;
    const TupleForm<Rationals> dt{rf_parse("1", q), 1};
    CHECK(form_pullback(rf_parse("t^2", q), dt) == TupleForm<Rationals>{rf_parse("2*t", q), 1});

    const GaloisField f5 = field_create(5, 1);
    const auto w = form("1/t^4", 4, f5);
    CHECK(form_pullback(map_over("t^2", f5), w) == w);

    const GaloisField f7 = field_create(7, 1);
    const auto s = map_over("t^2", f7);
    const auto one = form("1", 1, f7);
    CHECK(form_pullback(s.compose(s), one) == form_pullback(s, form_pullback(s, one)));

    CHECK_THROWS_AS(form_pullback(map_over("t^5", f5), w), Inseparable);
    CHECK(to_string(w) == "(1/t^4)*(dt)^4");
}

TEST_CASE("form_ord examples") {
    const GaloisField f5 = field_create(5, 1);
    const auto w = form("1/t^4", 4, f5);
    CHECK(form_ord(w, FqPoint::finite(f5.zero())) == -4);
    CHECK(form_ord(w, FqPoint::infinity()) == -4);
    CHECK(form_ord(w, FqPoint::finite(f5.one())) == 0);
    CHECK(form_ord(form("1", 1, f5), FqPoint::infinity()) == -2);
    CHECK(form_ord(form("(t-1)^3/(t+1)", 2, f5), FqPoint::finite(f5.one())) == 3);
    CHECK_THROWS_AS(form_ord(form("0", 1, f5), FqPoint::infinity()), ZeroPolynomial);
}

TEST_CASE("invariance_check examples") {
    const GaloisField f7 = field_create(7, 1);
    const auto a = invariance_check(map_over("t^3", f7), form("1/t^6", 6, f7));
    CHECK(a.invariant);
    CHECK(f7.is_one(*a.lambda));

    CHECK(invariance_check(map_over("t^2-2", f7), form("1/(t^2-4)^3", 6, f7)).invariant);

    const GaloisField f5 = field_create(5, 1);
    const auto c = invariance_check(map_over("t^2+1", f5), form("1/t^4", 4, f5));
    CHECK_FALSE(c.invariant);
    CHECK_FALSE(c.semi_invariant());

    // dt/t under t^2 scales by 2
    const auto d = invariance_check(map_over("t^2", f5), form("1/t", 1, f5));
    CHECK_FALSE(d.invariant);
    REQUIRE(d.semi_invariant());
    CHECK(*d.lambda == f5.from_int(2));
}

TEST_CASE("weight_reduce examples") {
    const GaloisField f5 = field_create(5, 1);
    const auto sq = map_over("t^2", f5);
    {
        const auto r = weight_reduce(sq, form("1/t^4", 4, f5), f5.one());
        CHECK(r.form == form("1/t^4", 4, f5));
    }
    for (long long nu : {20, 100}) {
        const FqForm w{rf_parse("1/t", f5).pow(nu), nu};
        const auto r = weight_reduce(sq, w, f5.one());
        CHECK(r.form.weight > 0);
        CHECK(r.form.weight % 5 != 0);
        CHECK(r.form == form("1/t^4", 4, f5));
        const auto chk = invariance_check(sq, r.form);
        REQUIRE(chk.lambda);
        CHECK(*chk.lambda == r.lambda);
    }
    {
        // negative weight is inverted
        const auto r = weight_reduce(sq, form("t^4", -4, f5), f5.one());
        CHECK(r.form == form("1/t^4", 4, f5));
    }
    {
        // semi-invariant input: (dt/t)^5 with lambda 2^5 = 2
        const auto r = weight_reduce(sq, form("1/t^5", 5, f5), f5.from_int(2));
        CHECK(r.form == form("1/t", 1, f5));
        CHECK(r.lambda == f5.from_int(2));
    }
    {
        // Artin-Schreier: (t^5 - t)(dt)^5 is invariant under t + 1 and has df != 0
        const auto shift = map_over("t+1", f5);
        const auto r = weight_reduce(shift, form("t^5 - t", 5, f5), f5.one());
        CHECK(r.form.weight == 1);
        CHECK(r.form.f == rf_parse("-1/(t^5 - t)", f5));
        CHECK(invariance_check(shift, r.form).invariant);
    }
    CHECK_THROWS_AS(weight_reduce(sq, form("1/t^4", 4, f5), f5.from_int(2)), NotSemiInvariant);
    CHECK_THROWS_AS(weight_reduce(map_over("t^2+1", f5), form("1/t^4", 4, f5), f5.one()), NotSemiInvariant);
}

TEST_CASE("invariant_search examples") {
    const GaloisField f5 = field_create(5, 1);
    {
        const auto r = invariant_search(map_over("t^2", f5), 4);
        REQUIRE(r.basis.size() == 1);
        CHECK(r.basis[0] == form("1/t^4", 4, f5));
        CHECK_FALSE(r.bounds_too_small);
    }
    const GaloisField f7 = field_create(7, 1);
    {
        const auto r = invariant_search(map_over("t^2-2", f7), 6);
        REQUIRE(r.basis.size() == 1);
        CHECK(r.basis[0] == form("1/(t^2-4)^3", 6, f7));
    }
    for (std::uint64_t p : {5, 7, 11}) {
        const GaloisField f = field_create(p, 1);
        const auto r = invariant_search(map_over("t^2+1", f), static_cast<long long>(p - 1));
        CHECK(r.basis.empty());
        CHECK_FALSE(r.bounds_too_small);
    }
    {
        // pole order 1 is too small for (dt/t)^4
        SearchBounds tight;
        tight.max_pole_order = 1;
        const auto r = invariant_search(map_over("t^2", f5), 4, tight);
        CHECK(r.basis.empty());
        CHECK(r.bounds_too_small);
    }
    CHECK_THROWS_AS(invariant_search(map_over("t^2", f5), 5), BadWeight);
    CHECK_THROWS_AS(invariant_search(map_over("t^2", f5), 0), BadWeight);
}

TEST_CASE("search outputs are invariant, have divisor degree -2 nu and genus <= 1") {
    const std::vector<std::pair<const char*, std::uint64_t>> cases{
        {"t^2", 5}, {"t^2", 7}, {"t^3", 7}, {"1/t^2", 11}, {"t^2-2", 7}, {"t^2-2", 11}, {"t^3-3*t", 7}, {"-t^2+2", 13}};
    for (const auto& [expr, p] : cases) {
        const GaloisField f = field_create(p, 1);
        const auto s = map_over(expr, f);
        for (long long nu : {static_cast<long long>(p - 1), 2LL}) {
            const auto r = invariant_search(s, nu);
            CAPTURE(expr);
            CAPTURE(p);
            CAPTURE(nu);
            if (nu == static_cast<long long>(p - 1)) CHECK(r.basis.size() >= 1);
            for (const auto& w : r.basis) {
                CHECK(invariance_check(s, w).invariant);
                CHECK(divisor_degree(w) == -2 * nu);
                CHECK(kummer_genus(w).genus <= 1);
                CHECK(f.is_one(w.f.num().leading()));
            }
        }
    }
    const auto c = lattes_certificate(1, 0, 2, 13);
    const auto r = invariant_search(c.sigma, 12);
    REQUIRE(r.basis.size() >= 1);
    for (const auto& w : r.basis) CHECK(kummer_genus(w).genus <= 1);
}

TEST_CASE("local degree identity for pullbacks") {
    const auto t = props::local_degree_identity(61, 50);
    CAPTURE(t.first_failure);
    CHECK(t.instances == 200);
    CHECK(t.checks > 2000);
    CHECK(t.violations == 0);
}

TEST_CASE("pullback is functorial and multiplicative") {
    std::mt19937_64 rng(67);
    for (auto p : {7ULL, 11ULL}) {
        const GaloisField f = field_create(p, 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = oracle::random_map(f, 1 + static_cast<int>(rng() % 3), rng);
            const auto t = oracle::random_map(f, 1 + static_cast<int>(rng() % 3), rng);
            const FqForm w1{oracle::random_map(f, 2, rng), static_cast<long long>(rng() % 5) - 2};
            const FqForm w2{oracle::random_map(f, 1, rng), static_cast<long long>(rng() % 5) - 2};
            CHECK(form_pullback(s.compose(t), w1) == form_pullback(t, form_pullback(s, w1)));
            CHECK(form_pullback(s, w1.product(w2)) == form_pullback(s, w1).product(form_pullback(s, w2)));
            CHECK(divisor_degree(w1) == -2 * w1.weight);
            CHECK(divisor_degree(form_pullback(s, w1)) == -2 * w1.weight);
        }
    }
}

TEST_CASE("powers of semi-invariant forms become invariant") {
    for (std::uint64_t p : {11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}}) {
            const auto c = lattes_certificate(a, b, 2, p);
            const GaloisField& f = c.sigma.field();
            const auto semi = invariance_check(c.sigma, c.form);
            REQUIRE(semi.lambda);
            CHECK(*semi.lambda == f.from_int(4));
            CHECK_FALSE(semi.invariant);
            CHECK(invariance_check(c.sigma, c.form.power(static_cast<long long>(p - 1))).invariant);
        }
    }
}
