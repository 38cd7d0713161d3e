#pragma once

#include <optional>
#include <string>

#include "flatlab/dynamics/p1.hpp"
#include "flatlab/exactnum/embedding.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

/// omega = f(t) (dt)^weight.
template <class K>
struct TupleForm {
    RatFunc<K> f;
    long long weight;

    const K& field() const { return f.field(); }

    /// Adds weights and multiplies coefficient functions.
    TupleForm product(const TupleForm& o) const { return {f * o.f, weight + o.weight}; }
    TupleForm power(long long n) const { return {f.pow(n), weight * n}; }

    bool operator==(const TupleForm& o) const { return weight == o.weight && f == o.f; }
};

template <class K>
std::string to_string(const TupleForm<K>& w, char var = 't') {
    std::string f = to_string(w.f, var);
    if (w.weight == 0) return f;
    const std::string d = std::string("d") + var;
    return "(" + f + ")*(" + d + ")^" + std::to_string(w.weight);
}

inline TupleForm<GaloisField> lift(const Embedding& emb, const TupleForm<GaloisField>& w) {
    return {RatFunc<GaloisField>(emb.lift(w.f.num()), emb.lift(w.f.den())), w.weight};
}

/// sigma^* omega = f(sigma) (sigma')^weight (dt)^weight.
template <class K>
TupleForm<K> form_pullback(const RatFunc<K>& sigma, const TupleForm<K>& w) {
    if (sigma.is_constant()) throw DegreeTooSmall("pullback by a constant map");
    const RatFunc<K> ds = sigma.derivative();
    if (ds.is_zero() && w.weight != 0) throw Inseparable("pullback by a map with zero derivative");
    return {w.f.compose(sigma) * ds.pow(w.weight), w.weight};
}

/// Order of omega at A; at infinity this is deg den - deg num - 2 weight.
template <class K>
long long form_ord(const TupleForm<K>& w, const PointOf<K>& a) {
    if (w.f.is_zero()) throw ZeroPolynomial("order of the zero form");
    if (a.is_infinity()) {
        return static_cast<long long>(w.f.den().degree()) - w.f.num().degree() - 2 * w.weight;
    }
    return static_cast<long long>(w.f.num().root_multiplicity(*a.value)) -
           static_cast<long long>(w.f.den().root_multiplicity(*a.value));
}

template <class K>
struct Invariance {
    bool invariant = false;
    /// lambda with sigma^* omega = lambda omega, when it exists.
    std::optional<typename K::value_type> lambda;

    bool semi_invariant() const { return lambda.has_value(); }
};

template <class K>
Invariance<K> invariance_check(const RatFunc<K>& sigma, const TupleForm<K>& w) {
    if (w.f.is_zero()) throw ZeroPolynomial("invariance of the zero form");
    const TupleForm<K> pulled = form_pullback(sigma, w);
    const RatFunc<K> q = pulled.f / w.f;
    Invariance<K> out;
    if (q.is_constant()) {
        out.lambda = q.constant_value();
        out.invariant = w.field().is_one(*out.lambda);
    }
    return out;
}

}  // namespace flatlab
