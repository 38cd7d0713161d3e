#pragma once

#include <optional>
#include <vector>

#include "flatlab/dynamics/critical.hpp"
#include "flatlab/forms/tuple_form.hpp"

namespace flatlab {

using FqForm = TupleForm<GaloisField>;

struct ReducedForm {
    FqForm form;
    FqRaw lambda;
};

/// Turns a semi-invariant form (sigma^* omega = lambda omega) into one of
/// positive weight prime to p: inverts a negative weight, then while p | weight
/// takes a p-th root when df = 0 and otherwise returns (f'/f) dt with lambda 1.
/// Throws NotSemiInvariant when the input or the result fails verification.
ReducedForm weight_reduce(const FqRatFunc& sigma, const FqForm& w, const FqRaw& lambda);

struct SearchBounds {
    std::optional<unsigned> max_pole_order;   ///< default: the weight
    std::optional<unsigned> max_num_degree;   ///< default: degree of the maximal denominator
};

struct SearchResult {
    std::vector<FqForm> basis;  ///< numerators monic; each verified invariant
    unsigned max_pole_order = 0;
    unsigned max_num_degree = 0;
    unsigned denominator_degree = 0;
    /// Empty result while the bounds exclude pole orders an invariant form on
    /// this orbifold would need.
    bool bounds_too_small = false;
};

/// Maximal searched denominator: product over Frobenius orbits of finite
/// postcritical points of their minimal polynomials over F_q, each to `order`.
Poly<GaloisField> postcritical_denominator(const DynamicalData& dyn, const GaloisField& base, unsigned order);

/// Invariant forms g/h (dt)^weight with h dividing the maximal denominator and
/// deg g <= max_num_degree. Throws BadWeight when weight <= 0 or p | weight.
SearchResult invariant_search(const FqRatFunc& sigma, long long weight, const SearchBounds& bounds = {});
SearchResult invariant_search(const FqRatFunc& sigma, const DynamicalData& dyn, long long weight,
                              const SearchBounds& bounds = {});

}  // namespace flatlab
