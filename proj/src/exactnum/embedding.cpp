#include "flatlab/exactnum/embedding.hpp"

#include "flatlab/exactnum/matrix.hpp"
#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

Embedding::Embedding(GaloisField source, GaloisField target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.characteristic() != target_.characteristic() || target_.degree() % source_.degree() != 0) {
        throw FieldMismatch("no embedding between fields of incompatible order");
    }
    const unsigned a = source_.degree();
    if (source_ == target_) {
        for (unsigned i = 0; i < a; ++i) {
            FqRaw e;
            e.c[i] = 1;
            basis_images_.push_back(e);
        }
        return;
    }
    FqRaw gen = target_.one();
    if (a > 1) {
        std::vector<FqRaw> mod;
        for (auto c : source_.desc().modulus) mod.push_back(target_.from_int(c));
        const auto roots = poly_roots(Poly<GaloisField>(target_, std::move(mod)));
        if (roots.empty()) throw InternalError("source modulus has no root in target field");
        gen = roots.front();
    }
    FqRaw power = target_.one();
    for (unsigned i = 0; i < a; ++i) {
        basis_images_.push_back(power);
        power = target_.mul(power, gen);
    }
}

FqRaw Embedding::apply(const FqRaw& x) const {
    FqRaw y = target_.zero();
    for (unsigned i = 0; i < source_.degree(); ++i) {
        if (x.c[i] == 0) continue;
        y = target_.add(y, target_.mul(target_.from_int(x.c[i]), basis_images_[i]));
    }
    return y;
}

std::optional<FqRaw> Embedding::pullback(const FqRaw& y) const {
    const unsigned a = source_.degree();
    const unsigned b = target_.degree();
    if (a == 1) {
        if (!target_.in_prime_field(y)) return std::nullopt;
        FqRaw x;
        x.c[0] = y.c[0];
        return x;
    }
    // solve sum_i x_i * image_i = y over F_p via the kernel of [images | -y]
    const GaloisField prime = field_create(source_.characteristic(), 1);
    Matrix<GaloisField> m(prime, b, a + 1);
    for (unsigned r = 0; r < b; ++r) {
        for (unsigned i = 0; i < a; ++i) m.at(r, i) = prime.from_int(basis_images_[i].c[r]);
        m.at(r, a) = prime.neg(prime.from_int(y.c[r]));
    }
    for (const auto& v : mat_kernel(m)) {
        if (prime.is_zero(v[a])) continue;
        const FqRaw scale = prime.inv(v[a]);
        FqRaw x;
        for (unsigned i = 0; i < a; ++i) x.c[i] = prime.mul(v[i], scale).c[0];
        return x;
    }
    return std::nullopt;
}

Poly<GaloisField> Embedding::lift(const Poly<GaloisField>& f) const {
    if (!(f.field() == source_)) throw FieldMismatch("polynomial is not over the embedding source");
    return map_coeffs(f, target_, [this](const FqRaw& c) { return apply(c); });
}

Poly<GaloisField> Embedding::descend(const Poly<GaloisField>& f) const {
    if (!(f.field() == target_)) throw FieldMismatch("polynomial is not over the embedding target");
    return map_coeffs(f, source_, [this](const FqRaw& c) {
        auto x = pullback(c);
        if (!x) throw InternalError("coefficient does not descend to the subfield");
        return *x;
    });
}

}  // namespace flatlab
