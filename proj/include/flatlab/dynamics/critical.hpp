#pragma once

#include <optional>
#include <vector>

#include "flatlab/dynamics/p1.hpp"
#include "flatlab/exactnum/embedding.hpp"
#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/exactnum/rational.hpp"

namespace flatlab {

using FqPoint = P1Point<FqRaw>;
using FqRatFunc = RatFunc<GaloisField>;

/// Critical data of a tame separable map over F_q, realized in one extension
/// F_{q^k} that contains every critical point.
struct CriticalLocus {
    GaloisField field;
    Embedding embedding;  ///< map's base field -> field
    FqRatFunc map;        ///< sigma with coefficients lifted to field
    std::vector<CriticalDatum<FqRaw>> points;  ///< sorted, infinity last
};

/// Wronskian P'Q - PQ' of sigma = P/Q.
template <class K>
Poly<K> wronskian(const RatFunc<K>& sigma) {
    return sigma.num().derivative() * sigma.den() - sigma.num() * sigma.den().derivative();
}

/// Requires deg sigma >= 2, p > deg sigma and sigma' != 0. k is the lcm of the
/// degrees of the irreducible factors of the Wronskian over F_q.
CriticalLocus critical_locus(const FqRatFunc& sigma);

struct DynamicalData {
    CriticalLocus locus;
    OrbitGraph<GaloisField> graph;
};

/// Critical locus plus the postcritical orbit graph inside F_{q^k} and infinity.
DynamicalData analyze_dynamics(const FqRatFunc& sigma);

OrbitGraph<GaloisField> postcritical_graph(const FqRatFunc& sigma);

/// Rational roots with multiplicity, or nullopt when the coefficients are too
/// large to enumerate divisor candidates.
std::optional<std::vector<std::pair<BigRational, unsigned>>> rational_roots(const Poly<Rationals>& f);

/// Critical points of a map over Q when all of them are rational (nullopt otherwise).
std::optional<std::vector<CriticalDatum<BigRational>>> rational_critical_points(const RatFunc<Rationals>& sigma);

}  // namespace flatlab
