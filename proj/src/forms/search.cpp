#include "flatlab/forms/search.hpp"

#include <algorithm>
#include <set>

#include "flatlab/exactnum/matrix.hpp"
#include "flatlab/orbifold/orbifold.hpp"
#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

ReducedForm weight_reduce(const FqRatFunc& sigma, const FqForm& w, const FqRaw& lambda) {
    const GaloisField& field = sigma.field();
    if (w.weight == 0) throw BadWeight("weight must be nonzero");
    const auto check = invariance_check(sigma, w);
    if (!check.lambda || !field.equal(*check.lambda, lambda)) {
        throw NotSemiInvariant("input form is not semi-invariant with the given lambda");
    }
    FqForm cur = w;
    FqRaw lam = lambda;
    if (cur.weight < 0) {
        cur = {cur.f.inverse(), -cur.weight};
        lam = field.inv(lam);
    }
    const auto p = static_cast<long long>(field.characteristic());
    while (cur.weight % p == 0) {
        if (cur.f.derivative().is_zero()) {
            cur = {FqRatFunc(poly_pth_root(cur.f.num()), poly_pth_root(cur.f.den())), cur.weight / p};
            lam = field.pth_root(lam);
        } else {
            cur = {cur.f.derivative() / cur.f, 1};
            lam = field.one();
        }
    }
    const auto after = invariance_check(sigma, cur);
    if (!after.lambda || !field.equal(*after.lambda, lam)) {
        throw NotSemiInvariant("reduced form failed re-verification");
    }
    return {cur, lam};
}

Poly<GaloisField> postcritical_denominator(const DynamicalData& dyn, const GaloisField& base, unsigned order) {
    const GaloisField& big = dyn.locus.field;
    const Embedding& emb = dyn.locus.embedding;
    Poly<GaloisField> h = Poly<GaloisField>::constant(base, base.one());
    std::set<FqRaw> seen;
    for (const auto& pt : dyn.graph.postcritical_points()) {
        if (pt.is_infinity() || seen.count(*pt.value)) continue;
        Poly<GaloisField> minpoly = Poly<GaloisField>::constant(big, big.one());
        FqRaw c = *pt.value;
        while (seen.insert(c).second) {
            minpoly = minpoly * Poly<GaloisField>::linear(big, c);
            c = big.pow(c, base.order());
        }
        h = h * emb.descend(minpoly).pow(order);
    }
    return h;
}

namespace {

/// Sum_i h_i P^i Q^{D-i}.
Poly<GaloisField> homogenize(const Poly<GaloisField>& h, const Poly<GaloisField>& p, const Poly<GaloisField>& q) {
    const int d = h.degree();
    const GaloisField& f = h.field();
    std::vector<Poly<GaloisField>> qpow{Poly<GaloisField>::constant(f, f.one())};
    for (int i = 1; i <= d; ++i) qpow.push_back(qpow.back() * q);
    Poly<GaloisField> acc = Poly<GaloisField>::constant(f, h.leading());
    for (int i = d - 1; i >= 0; --i) {
        acc = acc * p + qpow[static_cast<std::size_t>(d - i)].scaled(h.coeff(static_cast<std::size_t>(i)));
    }
    return acc;
}

bool bounds_exclude_flat_form(const DynamicalData& dyn, long long weight, unsigned max_pole, unsigned max_num,
                              unsigned h_degree) {
    const auto orb = orbifold_data(dyn.graph);
    if (orb.chi != 0) return false;
    long long finite_poles = 0;
    for (const auto& [pt, mu] : orb.postcritical) {
        const long long need = mu.is_infinity() ? weight : (weight * static_cast<long long>(mu.value() - 1) +
                                                             static_cast<long long>(mu.value()) - 1) /
                                                                static_cast<long long>(mu.value());
        if (pt.is_infinity()) continue;
        if (need > static_cast<long long>(max_pole)) return true;
        finite_poles += need;
    }
    return static_cast<long long>(h_degree) - finite_poles > static_cast<long long>(max_num);
}

}  // namespace

SearchResult invariant_search(const FqRatFunc& sigma, long long weight, const SearchBounds& bounds) {
    return invariant_search(sigma, analyze_dynamics(sigma), weight, bounds);
}

SearchResult invariant_search(const FqRatFunc& sigma, const DynamicalData& dyn, long long weight,
                              const SearchBounds& bounds) {
    const GaloisField& field = sigma.field();
    if (weight <= 0) throw BadWeight("search weight must be positive");
    if (static_cast<std::uint64_t>(weight) % field.characteristic() == 0) {
        throw BadWeight("search weight divisible by the characteristic");
    }
    const auto nu = static_cast<std::uint64_t>(weight);
    SearchResult result;
    result.max_pole_order = bounds.max_pole_order.value_or(static_cast<unsigned>(weight));
    const Poly<GaloisField> h = postcritical_denominator(dyn, field, result.max_pole_order);
    const auto d = static_cast<unsigned>(h.degree());
    result.denominator_degree = d;
    result.max_num_degree = bounds.max_num_degree.value_or(d);
    const unsigned n = result.max_num_degree;

    const Poly<GaloisField>& p = sigma.num();
    const Poly<GaloisField>& q = sigma.den();
    const Poly<GaloisField> w = wronskian(sigma);
    const unsigned a = d > n ? d - n : 0;
    const unsigned b = n > d ? n - d : 0;

    // g(sigma) h W^nu Q^a = g H(P, Q) Q^{2 nu + b}, columns C_j - t^j R with C_j = P^j Q^{n-j} T.
    const Poly<GaloisField> t_part = q.pow(a) * w.pow(nu) * h;
    const Poly<GaloisField> r = homogenize(h, p, q) * q.pow(2 * nu + b);
    std::vector<Poly<GaloisField>> columns;
    columns.reserve(n + 1);
    Poly<GaloisField> c = q.pow(n) * t_part;
    for (unsigned j = 0; j <= n; ++j) {
        columns.push_back(c - r.shifted(j));
        if (j < n) c = exact_div(c, q) * p;
    }
    std::size_t rows = 1;
    for (const auto& col : columns) rows = std::max(rows, static_cast<std::size_t>(col.degree() + 1));
    Matrix<GaloisField> m(field, rows, n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        const auto& cs = columns[j].coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i) m.at(i, j) = cs[i];
    }

    for (const auto& v : mat_kernel(m)) {
        const FqRatFunc f(Poly<GaloisField>(field, v), h);
        const FqForm form{f.scaled(field.inv(f.num().leading())), weight};
        if (!invariance_check(sigma, form).invariant) throw InternalError("search produced a non-invariant form");
        if (std::find(result.basis.begin(), result.basis.end(), form) == result.basis.end()) {
            result.basis.push_back(form);
        }
    }
    if (result.basis.empty()) {
        result.bounds_too_small = bounds_exclude_flat_form(dyn, weight, result.max_pole_order, n, d);
    }
    return result;
}

}  // namespace flatlab
