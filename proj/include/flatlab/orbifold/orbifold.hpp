#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/dynamics/p1.hpp"
#include "flatlab/errors.hpp"
#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/exactnum/rational.hpp"
#include "flatlab/forms/tuple_form.hpp"

namespace flatlab {

/// A positive integer or infinity.
class MuValue {
public:
    static MuValue finite(std::uint64_t n) {
        if (n == 0) throw InternalError("mu value must be positive");
        return MuValue(n);
    }
    static MuValue infinity() { return MuValue(std::nullopt); }

    bool is_infinity() const { return !n_.has_value(); }
    std::uint64_t value() const {
        if (!n_) throw InternalError("mu value is infinite");
        return *n_;
    }

    /// lcm in Z_{>0} with infinity absorbing.
    MuValue lcm(const MuValue& o) const;

    std::string to_string() const { return n_ ? std::to_string(*n_) : "inf"; }

    friend bool operator==(const MuValue&, const MuValue&) = default;
    /// Finite values ascending, infinity last.
    friend bool operator<(const MuValue& a, const MuValue& b) {
        if (a.is_infinity()) return false;
        if (b.is_infinity()) return true;
        return *a.n_ < *b.n_;
    }

private:
    explicit MuValue(std::optional<std::uint64_t> n) : n_(n) {}
    std::optional<std::uint64_t> n_;
};

namespace detail {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace detail

/// mu on the postcritical set. Each critical vertex C is walked forward; the
/// path product of weights strictly before a vertex is an e_{sigma^m} value,
/// and a closed walk through a weight > 1 vertex makes its cycle infinite.
template <class K>
std::map<PointOf<K>, MuValue> mu_compute(const OrbitGraph<K>& g) {
    const std::size_t n = g.vertices.size();
    std::vector<MuValue> mu(n, MuValue::finite(1));
    std::vector<bool> inf(n, false);
    for (std::size_t c = 0; c < n; ++c) {
        if (!g.critical[c]) continue;
        std::vector<std::size_t> walk{c};
        std::vector<long> position(n, -1);
        position[c] = 0;
        std::uint64_t product = g.weight[c];
        std::size_t cur = c;
        while (true) {
            const std::size_t nxt = g.next[cur];
            if (position[nxt] >= 0) {
                bool ramified = false;
                for (std::size_t i = static_cast<std::size_t>(position[nxt]); i < walk.size(); ++i) {
                    ramified = ramified || g.weight[walk[i]] > 1;
                }
                if (ramified) {
                    for (std::size_t i = static_cast<std::size_t>(position[nxt]); i < walk.size(); ++i) {
                        inf[walk[i]] = true;
                    }
                }
                mu[nxt] = mu[nxt].lcm(MuValue::finite(product));
                break;
            }
            mu[nxt] = mu[nxt].lcm(MuValue::finite(product));
            position[nxt] = static_cast<long>(walk.size());
            walk.push_back(nxt);
            product = detail::checked_mul(product, g.weight[nxt]);
            cur = nxt;
        }
    }
    std::map<PointOf<K>, MuValue> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.postcritical[i]) continue;
        out.emplace(g.vertices[i], inf[i] ? MuValue::infinity() : mu[i]);
    }
    return out;
}

/// 2 - sum (1 - 1/mu), with 1/inf = 0.
BigRational euler_char(const std::vector<MuValue>& mus);

template <class K>
struct OrbifoldData {
    std::vector<std::pair<PointOf<K>, MuValue>> postcritical;
    BigRational chi;

    std::vector<MuValue> mu_values() const {
        std::vector<MuValue> out;
        for (const auto& [pt, m] : postcritical) out.push_back(m);
        return out;
    }
};

template <class K>
OrbifoldData<K> orbifold_data(const OrbitGraph<K>& g) {
    OrbifoldData<K> d;
    for (auto& [pt, m] : mu_compute(g)) d.postcritical.emplace_back(pt, m);
    d.chi = euler_char(d.mu_values());
    return d;
}

enum class FlatHint { power_like, chebyshev_like, lattes_like };

std::string to_string(FlatHint h);

struct Signature {
    std::vector<MuValue> values;  ///< sorted, infinity last
    bool parabolic = false;
    std::optional<FlatHint> hint;

    /// e.g. "(2,2,inf)"
    std::string to_string() const;
};

Signature parabolic_signature(const std::vector<MuValue>& mus);

template <class K>
Signature parabolic_signature(const OrbifoldData<K>& d) {
    return parabolic_signature(d.mu_values());
}

struct KummerGenus {
    std::uint64_t cover_degree;
    std::uint64_t genus;
};

/// Genus of the cyclic cover y^weight = f of P^1 over an algebraic closure.
/// Throws WeightDivisibleByP when p divides the weight, BadWeight when it is not positive.
KummerGenus kummer_genus(const TupleForm<GaloisField>& w);

}  // namespace flatlab
