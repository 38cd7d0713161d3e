#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "flatlab/errors.hpp"

namespace flatlab {

/// Dense univariate polynomial over a field K, constant term first.
///
/// K is a field policy (Rationals or GaloisField) providing value_type and the
/// arithmetic on it. The leading stored coefficient is never zero.
template <class K>
class Poly {
public:
    using field_type = K;
    using value_type = typename K::value_type;

    explicit Poly(K field) : field_(std::move(field)) {}
    Poly(K field, std::vector<value_type> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }

    static Poly constant(const K& f, const value_type& v) { return Poly(f, {v}); }
    static Poly monomial(const K& f, const value_type& coeff, std::size_t deg) {
        std::vector<value_type> c(deg + 1, f.zero());
        c[deg] = coeff;
        return Poly(f, std::move(c));
    }
    static Poly variable(const K& f) { return monomial(f, f.one(), 1); }
    /// (t - a)
    static Poly linear(const K& f, const value_type& a) { return Poly(f, {f.neg(a), f.one()}); }
    static Poly from_ints(const K& f, std::initializer_list<long long> coeffs) {
        std::vector<value_type> c;
        c.reserve(coeffs.size());
        for (long long v : coeffs) c.push_back(f.from_int(v));
        return Poly(f, std::move(c));
    }

    const K& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && field_.is_one(c_[0]); }
    const std::vector<value_type>& coeffs() const { return c_; }
    value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    value_type leading() const { return c_.empty() ? field_.zero() : c_.back(); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& v : r.c_) v = field_.neg(v);
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<value_type> out;
        if constexpr (requires { a.field_.poly_mul_prime(a.c_, b.c_, out); }) {
            if (a.field_.poly_mul_prime(a.c_, b.c_, out)) return Poly(a.field_, std::move(out));
        }
        const K& f = a.field_;
        out.assign(a.c_.size() + b.c_.size() - 1, f.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (f.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                out[i + j] = f.add(out[i + j], f.mul(a.c_[i], b.c_[j]));
            }
        }
        return Poly(f, std::move(out));
    }

    Poly scaled(const value_type& s) const {
        if (field_.is_zero(s)) return Poly(field_);
        Poly r(*this);
        for (auto& v : r.c_) v = field_.mul(v, s);
        return r;
    }

    Poly monic() const {
        if (is_zero()) throw ZeroPolynomial("cannot make the zero polynomial monic");
        if (field_.is_one(c_.back())) return *this;
        return scaled(field_.inv(c_.back()));
    }

    /// Multiplication by t^k.
    Poly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<value_type> c(k, field_.zero());
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(field_, std::move(c));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<value_type> c(c_.size() - 1, field_.zero());
        for (std::size_t i = 1; i < c_.size(); ++i) {
            c[i - 1] = field_.mul(field_.from_int(static_cast<long long>(i)), c_[i]);
        }
        return Poly(field_, std::move(c));
    }

    value_type operator()(const value_type& x) const {
        value_type acc = field_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
        return acc;
    }

    /// this(inner(t)) by Horner's scheme.
    Poly compose(const Poly& inner) const {
        check(inner);
        Poly acc(field_);
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * inner;
            acc += constant(field_, c_[i]);
        }
        return acc;
    }

    Poly pow(std::uint64_t e) const {
        Poly result = constant(field_, field_.one());
        Poly base = *this;
        while (e > 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Largest m with (t - a)^m dividing this; the zero polynomial throws.
    unsigned root_multiplicity(const value_type& a) const {
        if (is_zero()) throw ZeroPolynomial("root multiplicity of the zero polynomial");
        unsigned m = 0;
        std::vector<value_type> cur = c_;
        while (cur.size() > 1) {
            // synthetic division by (t - a)
            std::vector<value_type> q(cur.size() - 1, field_.zero());
            value_type carry = field_.zero();
            for (std::size_t i = cur.size(); i-- > 1;) {
                carry = field_.add(cur[i], field_.mul(carry, a));
                q[i - 1] = carry;
            }
            value_type rem = field_.add(cur[0], field_.mul(carry, a));
            if (!field_.is_zero(rem)) break;
            cur = std::move(q);
            ++m;
        }
        return m;
    }

    bool operator==(const Poly& o) const {
        if (!(field_ == o.field_) || c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!field_.equal(c_[i], o.c_[i])) return false;
        }
        return true;
    }

    void check(const Poly& o) const {
        if (!(field_ == o.field_)) throw FieldMismatch();
    }

private:
    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    K field_;
    std::vector<value_type> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    a.check(b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const K& f = a.field();
    if (a.degree() < b.degree()) return {Poly<K>(f), a};
    std::vector<typename K::value_type> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<typename K::value_type> quo(rem.size() - db, f.zero());
    const auto lead_inv = f.inv(bc.back());
    for (std::size_t i = rem.size(); i-- > db;) {
        if (f.is_zero(rem[i])) continue;
        auto factor = f.mul(rem[i], lead_inv);
        quo[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j) {
            rem[i - db + j] = f.sub(rem[i - db + j], f.mul(factor, bc[j]));
        }
    }
    rem.resize(db);
    return {Poly<K>(f, std::move(quo)), Poly<K>(f, std::move(rem))};
}

template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).second;
}

/// Quotient of an exact division; a nonzero remainder is a logic error.
template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalError("exact polynomial division left a remainder");
    return q;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    a.check(b);
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Applies a coefficient map into another field.
template <class K2, class K, class Fn>
Poly<K2> map_coeffs(const Poly<K>& p, const K2& target, Fn&& fn) {
    std::vector<typename K2::value_type> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(fn(v));
    return Poly<K2>(target, std::move(c));
}

}  // namespace flatlab
