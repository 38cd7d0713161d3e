#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "flatlab/errors.hpp"
#include "flatlab/ratfunc/poly.hpp"

namespace flatlab {

/// Rational function num/den in canonical form: gcd(num, den) = 1, den monic.
/// The zero function is 0/1.
template <class K>
class RatFunc {
public:
    using field_type = K;
    using value_type = typename K::value_type;
    using poly_type = Poly<K>;

    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }
    explicit RatFunc(Poly<K> num) : num_(std::move(num)), den_(Poly<K>::constant(num_.field(), num_.field().one())) {}

    static RatFunc constant(const K& f, const value_type& v) { return RatFunc(Poly<K>::constant(f, v)); }
    static RatFunc identity(const K& f) { return RatFunc(Poly<K>::variable(f)); }

    const K& field() const { return num_.field(); }
    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    /// Degree as a self-map of P^1.
    int degree() const { return std::max(std::max(num_.degree(), 0), den_.degree()); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    value_type constant_value() const {
        if (!is_constant()) throw Error("rational function is not constant");
        return num_.coeff(0);
    }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc scaled(const value_type& c) const { return RatFunc(num_.scaled(c), den_); }

    RatFunc inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        const auto u = static_cast<std::uint64_t>(e);
        return RatFunc(num_.pow(u), den_.pow(u), Canonical{});
    }

    /// this(inner(t)): for outer N/D of degree M and inner P/Q, evaluates the
    /// homogenized N(P, Q) / D(P, Q) and cancels.
    RatFunc compose(const RatFunc& inner) const {
        num_.check(inner.num_);
        if (is_constant()) return *this;
        const int m = degree();
        std::vector<Poly<K>> qpow;
        qpow.reserve(static_cast<std::size_t>(m) + 1);
        qpow.push_back(Poly<K>::constant(field(), field().one()));
        for (int i = 1; i <= m; ++i) qpow.push_back(qpow.back() * inner.den_);
        auto homogeneous = [&](const Poly<K>& f) {
            Poly<K> acc = Poly<K>::constant(field(), f.coeff(static_cast<std::size_t>(m)));
            for (int i = m - 1; i >= 0; --i) {
                acc = acc * inner.num_;
                const auto c = f.coeff(static_cast<std::size_t>(i));
                if (!field().is_zero(c)) acc += qpow[static_cast<std::size_t>(m - i)].scaled(c);
            }
            return acc;
        };
        return RatFunc(homogeneous(num_), homogeneous(den_));
    }

    RatFunc derivative() const {
        if (is_polynomial()) return RatFunc(num_.derivative().scaled(field().inv(den_.leading())));
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Value at a finite point that is not a pole.
    value_type operator()(const value_type& x) const {
        const auto d = den_(x);
        if (field().is_zero(d)) throw DivisionByZero("evaluation at a pole");
        return field().div(num_(x), d);
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    struct Canonical {};
    // Trusted constructor for inputs that are already coprime with monic den.
    RatFunc(Poly<K> num, Poly<K> den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

    void canonicalize() {
        num_.check(den_);
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>::constant(field(), field().one());
            return;
        }
        if (den_.degree() > 0 && num_.degree() >= 0) {
            Poly<K> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        const auto lc = den_.leading();
        if (!field().is_one(lc)) {
            const auto inv = field().inv(lc);
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Poly<K> num_;
    Poly<K> den_;
};

template <class K>
RatFunc<K> rf_compose(const RatFunc<K>& outer, const RatFunc<K>& inner) {
    return outer.compose(inner);
}

template <class K>
RatFunc<K> rf_derivative(const RatFunc<K>& f) {
    return f.derivative();
}

/// n-fold iterate of sigma (n >= 1).
template <class K>
RatFunc<K> rf_iterate(const RatFunc<K>& sigma, unsigned n) {
    if (n == 0) return RatFunc<K>::identity(sigma.field());
    RatFunc<K> r = sigma;
    for (unsigned i = 1; i < n; ++i) r = sigma.compose(r);
    return r;
}

/// phi o sigma o phi^{-1} for a Moebius map phi.
template <class K>
RatFunc<K> rf_conjugate(const RatFunc<K>& sigma, const RatFunc<K>& phi);

/// Inverse of a degree-1 map (a t + b)/(c t + d) as (d t - b)/(-c t + a).
template <class K>
RatFunc<K> mobius_inverse(const RatFunc<K>& phi) {
    if (phi.degree() != 1) throw NotMobius("conjugating map must have degree 1");
    const K& f = phi.field();
    const auto a = phi.num().coeff(1), b = phi.num().coeff(0);
    const auto c = phi.den().coeff(1), d = phi.den().coeff(0);
    Poly<K> num(f, {f.neg(b), d});
    Poly<K> den(f, {a, f.neg(c)});
    return RatFunc<K>(num, den);
}

template <class K>
RatFunc<K> rf_conjugate(const RatFunc<K>& sigma, const RatFunc<K>& phi) {
    const RatFunc<K> inv = mobius_inverse(phi);
    return phi.compose(sigma.compose(inv));
}

/// Applies a coefficient map (e.g. a field embedding) to numerator and denominator.
template <class K2, class K, class Fn>
RatFunc<K2> map_coeffs(const RatFunc<K>& r, const K2& target, Fn&& fn) {
    return RatFunc<K2>(map_coeffs(r.num(), target, fn), map_coeffs(r.den(), target, fn));
}

}  // namespace flatlab
