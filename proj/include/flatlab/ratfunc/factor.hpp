#pragma once

#include <cstdint>
#include <vector>

#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/ratfunc/poly.hpp"

namespace flatlab {

using FqPoly = Poly<GaloisField>;

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed'f1a7'0001ULL;

struct FactorPower {
    FqPoly factor;  ///< monic irreducible
    unsigned multiplicity;
};

/// f = unit * prod factor^multiplicity, factors sorted by (degree, coefficients).
struct Factorization {
    FqRaw unit;
    std::vector<FactorPower> factors;
};

/// base^e mod m.
FqPoly powmod(const FqPoly& base, const BigInt& e, const FqPoly& m);

/// Coefficientwise p-th root of a polynomial with zero derivative: sum a_{pi} t^{pi} -> sum a_{pi}^{1/p} t^i.
FqPoly poly_pth_root(const FqPoly& f);

/// Pairs (g_i, i) with f/lc(f) = prod g_i^i, g_i squarefree, pairwise coprime.
std::vector<FactorPower> squarefree_decomposition(const FqPoly& f);

/// Splits a monic squarefree polynomial into (product of all degree-i irreducibles, i).
std::vector<FactorPower> distinct_degree_factorization(const FqPoly& f);

/// Splits a monic squarefree product of irreducibles of equal degree d (odd q).
std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, unsigned d, std::uint64_t seed);

/// Complete factorization into monic irreducibles; throws ZeroPolynomial on f = 0.
Factorization poly_factor(const FqPoly& f, std::uint64_t seed = kDefaultFactorSeed);

/// Rabin's test: t^{q^k} = t mod f and gcd(t^{q^{k/l}} - t, f) = 1 for primes l | k.
bool is_irreducible(const FqPoly& f);

/// Distinct roots of f in its own coefficient field, sorted by raw value.
std::vector<FqRaw> poly_roots(const FqPoly& f, std::uint64_t seed = kDefaultFactorSeed);

/// Product of a factorization, for multiply-back checks.
FqPoly expand(const Factorization& fac, const GaloisField& field);

}  // namespace flatlab
