#include <doctest.h>

#include <algorithm>
#include <random>

#include "flatlab/ratfunc/display.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/factor.hpp"
#include "flatlab/ratfunc/reduce.hpp"
#include "oracles.hpp"

using namespace flatlab;

namespace {

const Rationals Q;

RatFunc<Rationals> q(const char* s) { return rf_parse(s, Q); }

template <class K>
bool is_canonical(const RatFunc<K>& r) {
    if (r.den().is_zero() || !r.field().is_one(r.den().leading())) return false;
    if (r.is_zero()) return r.den().degree() == 0;
    return gcd(r.num(), r.den()).degree() == 0;
}

}  // namespace

TEST_CASE("rf_parse examples") {
    const auto r = q("(t^2+1)/(2*t)");
    CHECK(r.num() == Poly<Rationals>(Q, {BigRational(1, 2), 0, BigRational(1, 2)}));
    CHECK(r.den() == Poly<Rationals>::variable(Q));

    const GaloisField f7 = field_create(7, 1);
    const auto s = rf_parse("t^3 - 3*t", f7);
    CHECK(s.num() == Poly<GaloisField>::from_ints(f7, {0, 4, 0, 1}));
    CHECK(s.is_polynomial());

    CHECK_THROWS_AS(q("t^^2"), SyntaxError);
    try {
        q("t^^2");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(q("1/(t-t)"), DivisionByZero);
    CHECK_THROWS_AS(q("t + x"), SyntaxError);
    CHECK_THROWS_AS(q("(t"), SyntaxError);
    CHECK_THROWS_AS(q(""), SyntaxError);
    CHECK(q("-t + -1") == q("-(t+1)"));
    CHECK(q(" 3/4 * t ") == RatFunc<Rationals>(Poly<Rationals>(Q, {0, BigRational(3, 4)})));
    CHECK(q("x^2") == q("t^2"));
}

TEST_CASE("parse, print, parse is a fixed point") {
    const GaloisField f = field_create(11, 1);
    for (const char* s : {"(t^2+1)/(2*t)", "t^3 - 3*t", "1/t^2", "-t^4 + 1/3*t - 7/2", "(t-1)^3/(t^2+t+1)", "5",
                          "(2*t+1)/(3*t-4)"}) {
        const auto r = q(s);
        CHECK(q(to_string(r).c_str()) == r);
        CHECK(rf_parse(to_integral_string(r), Q) == r);
        const auto rf = rf_parse(s, f);
        CHECK(rf_parse(to_string(rf), f) == rf);
        if (!rf.is_zero()) CHECK(rf_parse(to_factored_string(rf), f) == rf);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        const auto r = oracle::random_map(f, 1 + static_cast<int>(rng() % 4), rng);
        CHECK(rf_parse(to_string(r), f) == r);
        CHECK(rf_parse(to_factored_string(r), f) == r);
    }
    CHECK(to_integral_string(q("(x^4-2*x^2+1)/(4*x^3+4*x)"), 'x') == "(x^4 - 2*x^2 + 1)/(4*x^3 + 4*x)");
    CHECK(to_integral_string(q("-t^2/3")) == "-t^2/3");
}

TEST_CASE("rf_compose examples") {
    CHECK(rf_compose(q("t^2"), q("t^2")) == q("t^4"));
    CHECK(rf_compose(q("t^2-2"), q("t + 1/t")) == q("(t^4+1)/t^2"));
    const GaloisField f5 = field_create(5, 1);
    const auto inv = rf_parse("(t+1)/(t-1)", f5);
    const auto r = rf_compose(inv, inv);
    CHECK(r == RatFunc<GaloisField>::identity(f5));
    for (long long a : {0, 2, 3}) CHECK(inv(inv(f5.from_int(a))) == f5.from_int(a));
    CHECK_THROWS_AS(rf_compose(inv, rf_parse("t", field_create(7, 1))), FieldMismatch);
    CHECK(rf_compose(q("t^2"), q("3")) == q("9"));
}

TEST_CASE("rf_derivative examples") {
    CHECK(rf_derivative(q("t^3")) == q("3*t^2"));
    const GaloisField f5 = field_create(5, 1);
    CHECK(rf_derivative(rf_parse("t^5", f5)).is_zero());
    const GaloisField f7 = field_create(7, 1);
    const auto d = rf_derivative(rf_parse("t^2-2", f7));
    CHECK(d == rf_parse("2*t", f7));
    CHECK(d(f7.from_int(5)) == f7.from_int(3));
    CHECK(rf_derivative(q("7")).is_zero());
    CHECK(rf_derivative(q("1/t")) == q("-1/t^2"));
}

TEST_CASE("rf_reduce_mod_p examples") {
    const auto r = rf_reduce_mod_p(q("t^2+1"), 7);
    REQUIRE(r.good());
    CHECK(*r.map == rf_parse("t^2+1", field_create(7, 1)));
    CHECK_FALSE(rf_reduce_mod_p(q("1/2*t^2"), 2).good());
    const auto bad = rf_reduce_mod_p(q("t^3-3*t"), 3);
    CHECK_FALSE(bad.good());
    CHECK(bad.reasons.size() >= 2);
    CHECK_THROWS_AS(rf_reduce_mod_p(q("t^2"), 9), NotPrime);
    // degree drop and common factor
    CHECK_FALSE(rf_reduce_mod_p(q("(7*t^3+1)/(t^2+1)"), 7).good());
    CHECK_FALSE(rf_reduce_mod_p(q("(t^2 + 1)/(t - 5)"), 13).good());  // 5^2 + 1 = 26
    CHECK(rf_reduce_mod_p(q("(t^2 + 1)/(t - 5)"), 11).good());
    CHECK_FALSE(rf_reduce_mod_p(q("t^2/5 + 1"), 5).good());
    CHECK(rf_reduce_mod_p(q("t^2/5 + 1"), 7).good());
}

TEST_CASE("poly_factor examples") {
    const GaloisField f5 = field_create(5, 1);
    const auto fac = poly_factor(FqPoly::from_ints(f5, {-1, 0, 1}));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].factor == FqPoly::from_ints(f5, {1, 1}));
    CHECK(fac.factors[1].factor == FqPoly::from_ints(f5, {4, 1}));

    const GaloisField f7 = field_create(7, 1);
    const FqPoly t2p1 = FqPoly::from_ints(f7, {1, 0, 1});
    for (long long a = 0; a < 7; ++a) CHECK_FALSE(f7.is_zero(t2p1(f7.from_int(a))));
    CHECK(poly_factor(t2p1).factors.size() == 1);
    CHECK(is_irreducible(t2p1));

    const auto cubic = poly_factor(FqPoly::from_ints(f5, {0, -1, 0, 1}));
    CHECK(cubic.factors.size() == 3);
    CHECK_THROWS_AS(poly_factor(FqPoly(f5)), ZeroPolynomial);
}

TEST_CASE("factorization property: multiply back, irreducible factors") {
    std::mt19937_64 rng(17);
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {7, 1}, {3, 1}, {2, 1}, {3, 2}, {13, 1},
                                                                       {2, 3}, {11, 2}}) {
        const GaloisField f = field_create(p, k);
        for (int trial = 0; trial < 15; ++trial) {
            // products of random powers exercise the inseparable branches
            FqPoly g = FqPoly::constant(f, f.one());
            const int parts = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < parts; ++i) {
                std::vector<FqRaw> c(2 + rng() % 4);
                for (auto& x : c) x = f.random(rng);
                FqPoly piece(f, c);
                if (piece.is_zero()) continue;
                g = g * piece.pow(1 + rng() % (p + 1));
            }
            const auto fac = poly_factor(g);
            CHECK(expand(fac, f) == g);
            for (const auto& fp : fac.factors) {
                CHECK(is_irreducible(fp.factor));
                CHECK(f.is_one(fp.factor.leading()));
            }
            for (std::size_t i = 1; i < fac.factors.size(); ++i) {
                CHECK_FALSE(fac.factors[i].factor == fac.factors[i - 1].factor);
            }
        }
    }
}

TEST_CASE("rf_conjugate examples") {
    CHECK(rf_conjugate(q("t^2"), q("t+1")) == q("t^2 - 2*t + 2"));
    CHECK(rf_conjugate(q("t^2"), q("1/t")) == q("t^2"));
    CHECK(rf_conjugate(q("t^2+1"), q("1/t")) == q("t^2/(t^2+1)"));
    const GaloisField f7 = field_create(7, 1);
    const auto c = rf_conjugate(rf_parse("t^2-2", f7), rf_parse("2*t", f7));
    CHECK(c == rf_parse("4*t^2 + 3", f7));
    for (long long a : {1, 2, 6}) {
        const auto x = f7.from_int(a);
        CHECK(c(x) == f7.mul(f7.from_int(2), rf_parse("t^2-2", f7)(f7.div(x, f7.from_int(2)))));
    }
    CHECK_THROWS_AS(rf_conjugate(q("t^2"), q("t^2")), NotMobius);
    const auto phi = q("(2*t+1)/(t+3)");
    CHECK(rf_conjugate(rf_conjugate(q("t^3-3*t"), phi), mobius_inverse(phi)) == q("t^3-3*t"));
    CHECK(rf_conjugate(q("t^3-3*t"), phi).degree() == 3);
}

TEST_CASE("canonical form, associativity and chain rule on random maps") {
    std::mt19937_64 rng(23);
    for (auto p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        const GaloisField f = field_create(p, 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = oracle::random_map(f, 1 + static_cast<int>(rng() % 3), rng);
            const auto b = oracle::random_map(f, 1 + static_cast<int>(rng() % 3), rng);
            const auto c = oracle::random_map(f, 1 + static_cast<int>(rng() % 2), rng);
            const auto ab = rf_compose(a, b);
            CHECK(is_canonical(ab));
            CHECK(is_canonical(a * b));
            CHECK(is_canonical(a + b));
            CHECK(is_canonical(a / b));
            CHECK(is_canonical(a.derivative()));
            CHECK(rf_compose(ab, c) == rf_compose(a, rf_compose(b, c)));
            CHECK(ab.degree() == a.degree() * b.degree());
            CHECK(rf_derivative(ab) == rf_compose(rf_derivative(a), b) * rf_derivative(b));
        }
    }
}

TEST_CASE("reduction commutes with composition at good primes") {
    const std::vector<const char*> maps{"t^2+1", "(t^2-2)/(t+3)", "t^3/2 - t", "(t+1)/(2*t-1)", "t^2 + t/3"};
    for (const char* sa : maps) {
        for (const char* sb : maps) {
            const auto a = q(sa), b = q(sb);
            const auto ab = rf_compose(a, b);
            for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23}) {
                const auto ra = rf_reduce_mod_p(a, p), rb = rf_reduce_mod_p(b, p), rab = rf_reduce_mod_p(ab, p);
                if (!ra.good() || !rb.good() || !rab.good()) continue;
                CHECK(*rab.map == rf_compose(*ra.map, *rb.map));
            }
        }
    }
}

TEST_CASE("poly_roots finds all roots in the field") {
    const GaloisField f = field_create(5, 2);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FqRaw> c(4);
        for (auto& x : c) x = f.random(rng);
        const FqPoly g(f, c);
        if (g.degree() < 1) continue;
        std::vector<FqRaw> brute;
        for (const auto& a : f.elements()) {
            if (f.is_zero(g(a))) brute.push_back(a);
        }
        std::sort(brute.begin(), brute.end());
        CHECK(poly_roots(g) == brute);
    }
}
