#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/errors.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

/// A point of P^1: a field value, or infinity (empty). Finite points order
/// before infinity.
template <class V>
struct P1Point {
    std::optional<V> value;

    static P1Point infinity() { return {}; }
    static P1Point finite(V v) { return {std::move(v)}; }
    bool is_infinity() const { return !value.has_value(); }

    friend bool operator==(const P1Point& a, const P1Point& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
        return *a.value == *b.value;
    }
    friend bool operator<(const P1Point& a, const P1Point& b) {
        if (a.is_infinity()) return false;
        if (b.is_infinity()) return true;
        return *a.value < *b.value;
    }
};

template <class K>
using PointOf = P1Point<typename K::value_type>;

template <class K>
std::string to_string(const K& field, const PointOf<K>& pt) {
    return pt.is_infinity() ? "inf" : field.to_string(*pt.value);
}

/// sigma(A) with projective conventions at poles and at infinity.
template <class K>
PointOf<K> p1_eval(const RatFunc<K>& sigma, const PointOf<K>& a) {
    const K& f = sigma.field();
    if (a.is_infinity()) {
        const int dn = sigma.num().degree();
        const int dd = sigma.den().degree();
        if (dn > dd) return PointOf<K>::infinity();
        if (dn == dd) return PointOf<K>::finite(f.div(sigma.num().leading(), sigma.den().leading()));
        return PointOf<K>::finite(f.zero());
    }
    const auto d = sigma.den()(*a.value);
    if (f.is_zero(d)) return PointOf<K>::infinity();
    return PointOf<K>::finite(f.div(sigma.num()(*a.value), d));
}

namespace detail {

/// e_sigma(B) without the separability check. B and sigma(B) are moved to
/// finite positions by t -> 1/t on the source and inversion on the target.
template <class K>
unsigned ram_index_unchecked(const RatFunc<K>& sigma, const PointOf<K>& b) {
    const K& f = sigma.field();
    const PointOf<K> a = p1_eval(sigma, b);
    RatFunc<K> s = sigma;
    typename K::value_type at = f.zero();
    if (b.is_infinity()) {
        s = s.compose(RatFunc<K>::identity(f).inverse());
    } else {
        at = *b.value;
    }
    if (a.is_infinity()) {
        s = s.inverse();
    } else {
        s = s - RatFunc<K>::constant(f, *a.value);
    }
    const unsigned e = s.num().root_multiplicity(at);
    const std::uint64_t p = f.characteristic();
    if (p != 0 && e % p == 0) throw WildRamification("ramification index divisible by the characteristic");
    return e;
}

}  // namespace detail

/// Ramification index e_sigma(B) >= 1.
template <class K>
unsigned ram_index(const RatFunc<K>& sigma, const PointOf<K>& b) {
    if (sigma.is_constant()) throw DegreeTooSmall("ramification of a constant map");
    if (sigma.derivative().is_zero()) throw Inseparable("map has zero derivative");
    return detail::ram_index_unchecked(sigma, b);
}

template <class V>
struct CriticalDatum {
    P1Point<V> point;
    unsigned e;
};

/// Weighted functional graph on the forward orbits of the critical points.
template <class K>
struct OrbitGraph {
    using Point = PointOf<K>;

    K field;
    RatFunc<K> map;
    std::vector<Point> vertices;
    std::vector<std::size_t> next;
    std::vector<unsigned> weight;
    std::vector<bool> critical;
    std::vector<bool> postcritical;
    std::map<Point, std::size_t> index;

    std::optional<std::size_t> find(const Point& pt) const {
        auto it = index.find(pt);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    std::vector<Point> postcritical_points() const {
        std::vector<Point> out;
        for (const auto& [pt, i] : index) {
            if (postcritical[i]) out.push_back(pt);
        }
        return out;
    }
};

/// Forward-iterates each critical point with a stored visited map. Throws
/// OrbitLimitExceeded when more than max_vertices vertices would be created or
/// a finite value fails `admissible` (used to bound heights over Q).
template <class K, class Admissible>
OrbitGraph<K> build_orbit_graph(const RatFunc<K>& map, const std::vector<CriticalDatum<typename K::value_type>>& crit,
                                std::size_t max_vertices, Admissible&& admissible) {
    using Point = PointOf<K>;
    OrbitGraph<K> g{map.field(), map, {}, {}, {}, {}, {}, {}};
    std::map<Point, unsigned> crit_e;
    for (const auto& c : crit) crit_e[c.point] = c.e;

    auto add_vertex = [&](const Point& pt) {
        if (g.vertices.size() >= max_vertices) throw OrbitLimitExceeded("orbit graph exceeds vertex limit");
        if (!pt.is_infinity() && !admissible(*pt.value)) throw OrbitLimitExceeded("orbit point exceeds height limit");
        const std::size_t id = g.vertices.size();
        g.vertices.push_back(pt);
        g.next.push_back(0);
        auto it = crit_e.find(pt);
        g.weight.push_back(it == crit_e.end() ? 1U : it->second);
        g.critical.push_back(it != crit_e.end());
        g.postcritical.push_back(false);
        g.index.emplace(pt, id);
        return id;
    };

    for (const auto& c : crit) {
        if (g.index.count(c.point)) continue;
        std::size_t cur = add_vertex(c.point);
        while (true) {
            const Point image = p1_eval(map, g.vertices[cur]);
            auto it = g.index.find(image);
            const bool seen = it != g.index.end();
            const std::size_t nxt = seen ? it->second : add_vertex(image);
            g.next[cur] = nxt;
            if (seen) break;
            cur = nxt;
        }
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i) g.postcritical[g.next[i]] = true;
    return g;
}

}  // namespace flatlab
